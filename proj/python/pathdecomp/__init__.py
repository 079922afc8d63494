"""Approximate path decompositions of regular graphs."""

import json

from ._core import (
    Error,
    Graph,
    ParseError,
    PreconditionError,
    default_config,
    exact_min_path_cover,
    gen_clique_union,
    gen_complete,
    gen_cycle,
    gen_random_regular,
    kotzig_check,
    ks_rotation_paths,
    load_graph,
    make_instance,
    save_graph,
    verify_paths,
)
from . import _core

__all__ = [
    "Error",
    "Graph",
    "ParseError",
    "PreconditionError",
    "approx_decompose",
    "bench",
    "cover",
    "default_config",
    "exact_min_path_cover",
    "gen_clique_union",
    "gen_complete",
    "gen_cycle",
    "gen_random_regular",
    "kotzig_check",
    "ks_rotation_paths",
    "load_graph",
    "make_instance",
    "save_graph",
    "verify_paths",
]


def approx_decompose(graph, d, **config):
    """Run the decomposition pipeline; returns the report as a dict."""
    return json.loads(_core._decompose(graph, d, config))


def cover(graph, d, **config):
    """Vertex-disjoint path cover report as a dict."""
    return json.loads(_core._cover(graph, d, config))


def bench(suite, grid=None, seeds=(1,), mode="decompose", workers=1):
    """Rows (without timings) for every (graph spec, config, seed)."""
    grid = [{}] if grid is None else list(grid)
    return json.loads(_core._bench(list(suite), grid, list(seeds), mode, workers))
