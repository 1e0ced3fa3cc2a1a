import pytest

import pyaec


def cycle(n):
    return pyaec.Graph(n, [(i, (i + 1) % n) for i in range(n)])


def test_graph_basics():
    g = cycle(5)
    assert g.vertex_count == 5
    assert g.edge_count == 5
    assert g.girth() == 5
    assert pyaec.Graph(3, [(0, 1), (1, 2)]).girth() is None


def test_invalid_graph_raises():
    with pytest.raises(ValueError):
        pyaec.Graph(3, [(0, 0)])


def test_verifier_flags_alternating_c4():
    g = cycle(4)
    assert not pyaec.is_acyclic(g, [0, 1, 0, 1])
    cycles = pyaec.bicoloured_cycles(g, [0, 1, 0, 1])
    assert len(cycles) == 1 and cycles[0][:2] == (0, 1)
    assert pyaec.is_acyclic(g, [0, 1, 0, 2])


def test_acyclic_index_of_cycles():
    for n in range(3, 8):
        assert pyaec.acyclic_index(cycle(n), 4) == 3


def test_multiplicity():
    assert pyaec.cycle_multiplicity("cdcd") == 1
    assert pyaec.cycle_multiplicity("ccdd") == 2
    assert pyaec.cycle_multiplicity("cdcn") is None


def test_schedule_large_delta():
    s = pyaec.schedule(0.5, 10**19, 64)
    assert s["R"][s["i_star"]] < s["r_threshold"] <= s["R"][s["i_star"] - 1]


def test_schedule_error_at_small_delta():
    with pytest.raises(RuntimeError):
        pyaec.schedule(0.5, 100, 64)


def test_relaxed_pipeline_on_cayley_graph():
    g = pyaec.bipartite_cayley(200, 6, 3)
    out = pyaec.colour(g, 0.5, 1)
    assert out["success"]
    assert pyaec.is_acyclic(g, out["colours"])
    assert -1 not in out["colours"]
    assert max(out["colours"]) < pyaec.palette_size(0.5, 6)


def test_repair_colour_cubic():
    g = pyaec.random_regular(40, 3, 2)
    ok, colours, _ = pyaec.repair_colour(g, 8, 5)
    assert ok and pyaec.is_acyclic(g, colours)


def test_embed_star():
    star = pyaec.Graph(4, [(0, 1), (0, 2), (0, 3)])
    h, copy0 = pyaec.embed_regular(star, 5, 1)
    assert h.min_degree == h.max_degree == 3
    assert h.girth() >= 5
    assert copy0 == [0, 1, 2, 3]
