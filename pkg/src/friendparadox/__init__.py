"""Friendship-paradox family, perception bias and majority illusion on graphs."""

__version__ = "0.1.0"

from .graph import (AttributeMap, DiGraph, Graph, InputError, cycle_graph,  # noqa: E402
                    degree_sequence, karate_club, load_attributes, load_edge_list,
                    path_graph, star_graph)
from .nullmodels import (configuration_model, place_attributes,  # noqa: E402
                         powerlaw_degree_sequence, rewire_to_assortativity,
                         shuffle_attributes)
from .paradox import (directed_paradoxes, fp_flags, fp_gap, fp_indicator,  # noqa: E402
                      gfp_gap, gsfp_flags, gsfp_indicator, paradox_summary,
                      sfp_by_degree, sfp_flags, sfp_fraction, sfp_indicator)
from .perception import (global_perception_bias, illusion_search,  # noqa: E402
                         local_perception_bias, majority_illusion,
                         threshold_cascade)
from .polling import friend_poll, node_poll  # noqa: E402
from .predictor import (predict_correlated, predict_independent,  # noqa: E402
                        prediction_report)
from .structure import (DegreeModel, build_degree_model,  # noqa: E402
                        degree_assortativity, degree_attribute_correlation,
                        transsortativity)
