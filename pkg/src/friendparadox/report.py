"""Assembling and serialising the JSON paradox report."""
from __future__ import annotations

import json
import math
from datetime import datetime, timezone
from importlib import resources

from . import __version__
from .graph import AttributeMap, DiGraph, Graph
from .paradox import directed_paradoxes, gfp_gap, paradox_summary
from .perception import majority_illusion
from .predictor import prediction_report
from .structure import (degree_assortativity, degree_attribute_correlation,
                        transsortativity)

__all__ = ["build_report", "dumps", "load_schema", "undirected_projection"]


def _clean(obj):
    """Replace non-finite floats by None and numpy scalars by Python ones."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def dumps(obj, indent: int | None = 2) -> str:
    """JSON with shortest round-trip float rendering and nulls for NaN/inf."""
    return json.dumps(_clean(obj), indent=indent, allow_nan=False) + "\n"


def load_schema() -> dict:
    text = resources.files("friendparadox").joinpath("schemas/paradox_report.schema.json").read_text()
    return json.loads(text)


def undirected_projection(g: DiGraph) -> Graph:
    """Forget arc directions; reciprocal arcs become one edge."""
    return Graph(g.n, g.arcs, g.labels)


def build_report(g: Graph | DiGraph, attrs: AttributeMap | None = None, *,
                 name: str = "graph", threshold: float = 0.5, count_all: bool = False,
                 predict: bool = False, samples: int = 100_000, seed: int | None = None,
                 timestamp: bool = True) -> dict:
    """Every applicable statistic for ``g`` as a JSON-ready dict.

    Directed inputs get the four directed paradoxes; the undirected
    statistics are then computed on the direction-free projection.
    """
    directed = None
    if isinstance(g, DiGraph):
        directed = directed_paradoxes(g).to_dict()
        ug = undirected_projection(g)
    else:
        ug = g
    structure = {
        "assortativity": degree_assortativity(ug),
        "transsortativity": transsortativity(ug),
        "degree_attribute_correlation": None,
    }
    illusion = generalized = None
    if attrs is not None:
        structure["degree_attribute_correlation"] = degree_attribute_correlation(ug, attrs)
        gap = gfp_gap(ug, attrs)
        generalized = {"lhs": gap.lhs, "rhs": gap.rhs, "correlation_form": gap.correlation_form}
        if attrs.kind == "binary":
            illusion = majority_illusion(ug, attrs, threshold, count_all).to_dict()
    prediction = None
    if predict:
        prediction = prediction_report(ug, "weak", samples, 0 if seed is None else seed, name).to_dict()
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds") if timestamp else None
    return _clean({
        "graph": {"name": name, "n": g.n, "m": g.m, "directed": isinstance(g, DiGraph),
                  "labels": list(g.labels)},
        "paradox": paradox_summary(ug).to_dict(),
        "directed_paradox": directed,
        "structure": structure,
        "generalized_gap": generalized,
        "illusion": illusion,
        "prediction": prediction,
        "tool_version": __version__,
        "seed": seed,
        "timestamp": stamp,
    })
