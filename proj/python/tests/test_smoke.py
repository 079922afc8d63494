import math

import pytest

import pathdecomp as pd


def test_graph_basics():
    g = pd.Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g.num_vertices == 4
    assert g.num_edges == 4
    assert g.is_regular(2)
    assert g.has_edge(0, 3)
    assert sorted(g.edges()) == [(0, 1), (0, 3), (1, 2), (2, 3)]
    with pytest.raises(ValueError):
        pd.Graph(2, [(0, 0)])


def test_decompose_clique_union():
    g = pd.gen_clique_union(4, 33)
    report = pd.approx_decompose(g, 32, eps=0.3, seed=3)
    assert report["valid"]
    length = math.ceil(0.7 * 32)
    assert report["l_target"] == length
    assert all(len(p) == length + 1 for p in report["paths"])
    assert pd.verify_paths(g, report["paths"])["valid"]
    assert report["covered_edges"] + len(report["leftover"]) == g.num_edges
    assert report["config"]["seed"] == 3


def test_decompose_is_deterministic():
    g = pd.gen_random_regular(300, 16, seed=2)
    a = pd.approx_decompose(g, 16, seed=5)
    b = pd.approx_decompose(g, 16, seed=5)
    assert a["paths"] == b["paths"]


def test_bad_config_and_input():
    g = pd.gen_complete(10)
    with pytest.raises(ValueError):
        pd.approx_decompose(g, 9, no_such_key=1)
    with pytest.raises(ValueError):
        pd.approx_decompose(g, 9, eps=2.0)
    with pytest.raises(ValueError):
        pd.approx_decompose(pd.gen_cycle(5), 3)


def test_cover_matches_oracle():
    g = pd.gen_clique_union(2, 4)
    report = pd.cover(g, 3)
    assert len(report["paths"]) == pd.exact_min_path_cover(g) == 2


def test_rotation_and_kotzig():
    paths = pd.ks_rotation_paths(8)
    assert len(paths) == 4
    assert all(len(p) == 8 for p in paths)
    petersen_like, _ = pd.make_instance("complete:4")
    assert pd.kotzig_check(petersen_like) == (True, True)


def test_bench_rows():
    rows = pd.bench(["cliques:2:8"], [{}, {"eps": 0.4}], seeds=[1, 2])
    assert len(rows) == 4
    assert all(r["status"] == "ok" for r in rows)
    with pytest.raises(ValueError):
        pd.bench(["cliques:2:8"], [])
