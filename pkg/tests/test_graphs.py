import random

import pytest

from wirecat import graphs
from wirecat.errors import InvalidGraph, TooManyVertices, UnknownVertex
from wirecat.graphs import (
    DirectedGraph,
    canonical_form,
    corolla,
    free_edge,
    free_loop,
    is_isomorphic_loose,
    is_isomorphic_strict,
    loose_canonical_form,
    reorder,
    substitute,
    substitute_all,
)
from wirecat.sampling import random_graph, random_graph_with_boundary


def rename_flags(g: DirectedGraph, f):
    """Rebuild g with every flag renamed by the injection f."""
    return DirectedGraph(
        [[f(x) for x in v] for v in g.vertices],
        [f(x) for x in g.exceptional],
        {f(a): f(b) for a, b in g.iota.items()},
        {f(a): f(b) for a, b in g.pi.items()},
        {f(a): d for a, d in g.delta.items()},
        {f(a): l for a, l in g.lam.items()},
        {f(a): l for a, l in g.beta.items()},
        g.loop_count,
    )


def chain_graph():
    """v1 --(edge)--> v2 with one in-leg on v1 and one out-leg on v2."""
    return DirectedGraph(
        vertices=[[0, 1], [2, 3]],
        exceptional=(),
        iota={1: 2, 2: 1},
        pi={},
        delta={0: 1, 1: -1, 2: 1, 3: -1},
        lam={0: "a", 1: "m", 2: "m", 3: "b"},
        beta={0: "p", 3: "q"},
        loop_count=0,
    )


def test_validate_accepts_samples():
    rng = random.Random(20)
    for _ in range(60):
        random_graph(rng)  # constructor validates


def test_validate_rejects_involution_violation():
    with pytest.raises(InvalidGraph):
        DirectedGraph([[0, 1]], (), {0: 1}, {}, {0: 1, 1: -1},
                      {0: "a", 1: "b"}, {}, 0)


def test_validate_rejects_orientation_violation():
    # iota must pair flags of opposite orientation
    with pytest.raises(InvalidGraph):
        DirectedGraph([[0, 1]], (), {0: 1, 1: 0}, {}, {0: 1, 1: 1},
                      {0: "a", 1: "b"}, {}, 0)


def test_validate_rejects_label_clash():
    # two in-flags of one vertex may not share a label
    with pytest.raises(InvalidGraph):
        DirectedGraph([[0, 1]], (), {}, {}, {0: 1, 1: 1},
                      {0: "a", 1: "a"}, {0: "p", 1: "q"}, 0)


def test_validate_rejects_duplicate_boundary_label():
    with pytest.raises(InvalidGraph):
        DirectedGraph([[0], [1]], (), {}, {}, {0: 1, 1: 1},
                      {0: "a", 1: "a"}, {0: "p", 1: "p"}, 0)


def test_boundary_of_chain():
    g = chain_graph()
    assert g.boundary() == (frozenset({"p"}), frozenset({"q"}))


def test_canonical_form_invariant_under_flag_renaming():
    rng = random.Random(21)
    for _ in range(40):
        g = random_graph(rng)
        flags = sorted(g.delta, key=repr)
        names = ["f%d" % k for k in range(len(flags))]
        rng.shuffle(names)
        table = dict(zip(flags, names))
        h = rename_flags(g, lambda x: table[x])
        assert canonical_form(g) == canonical_form(h)
        assert is_isomorphic_strict(g, h)


def test_strict_iso_detects_reordering():
    g = chain_graph()
    h = reorder(g, [2, 1])
    assert not is_isomorphic_strict(g, h) or g.r < 2
    assert is_isomorphic_loose(g, h) == (2, 1)


def test_loose_canonical_form_invariant_under_reordering():
    rng = random.Random(22)
    for _ in range(40):
        g = random_graph(rng)
        order = list(range(1, g.r + 1))
        rng.shuffle(order)
        h = reorder(g, order)
        assert loose_canonical_form(g) == loose_canonical_form(h)


def test_loose_canonical_form_respects_decorations():
    g = chain_graph()
    h = reorder(g, [2, 1])
    assert loose_canonical_form(g, ["A", "B"]) == loose_canonical_form(h, ["B", "A"])
    assert loose_canonical_form(g, ["A", "B"]) != loose_canonical_form(h, ["A", "B"])


def test_loose_iso_negative():
    g = chain_graph()
    h = free_loop(1)
    assert is_isomorphic_loose(g, h) is None


def test_brute_force_bound_env(monkeypatch):
    assert graphs.brute_force_bound() == 8
    monkeypatch.setenv("WIRECAT_BRUTE_FORCE_BOUND", "1")
    assert graphs.brute_force_bound() == 1
    g = DirectedGraph([[0], [1]], (), {}, {}, {0: 1, 1: 1},
                      {0: "a", 1: "a"}, {0: "p", 1: "q"}, 0)
    with pytest.raises(TooManyVertices):
        is_isomorphic_loose(g, g)
    assert is_isomorphic_loose(g, g, bound=2) is not None


def test_reorder_rejects_non_permutation():
    with pytest.raises(UnknownVertex):
        reorder(chain_graph(), [1, 1])


def test_substitute_corolla_unit_left():
    # Substituting the matching corolla into any vertex changes nothing.
    rng = random.Random(23)
    for _ in range(30):
        g = random_graph(rng)
        if not g.r:
            continue
        v = rng.randint(1, g.r)
        ins, outs = g.neighbourhood(v)
        assert is_isomorphic_strict(substitute(g, v, corolla(ins, outs)), g)


def test_substitute_corolla_unit_right():
    # Substituting any graph into a corolla gives that graph back.
    rng = random.Random(24)
    for _ in range(30):
        h = random_graph_with_boundary(rng, ["p0", "p1"], ["q0"])
        ins, outs = h.boundary()
        g = corolla(ins, outs)
        assert is_isomorphic_strict(substitute(g, 1, h), h)


def test_substitute_free_edge_makes_loop():
    # A vertex with one in- and one out-leg wired to itself swallows a free
    # edge into a closed loop.
    g = DirectedGraph([[0, 1]], (), {0: 1, 1: 0}, {},
                      {0: 1, 1: -1}, {0: "x", 1: "y"}, {}, 0)
    h = free_edge("x", "y")
    out = substitute(g, 1, h)
    assert out.r == 0
    assert out.loop_count == 1


def test_substitute_all_matches_iterated():
    rng = random.Random(25)
    for _ in range(20):
        g = random_graph_with_boundary(rng, ["p0"], ["q0"], max_vertices=3)
        if g.r < 2:
            continue
        inner = {}
        for v in range(1, g.r + 1):
            ins, outs = g.neighbourhood(v)
            inner[v] = random_graph_with_boundary(rng, sorted(ins), sorted(outs),
                                                  max_vertices=2)
        combined = substitute_all(g, inner)
        step = g
        for v in sorted(inner, reverse=True):
            step = substitute(step, v, inner[v])
        assert is_isomorphic_strict(combined, step)


def test_substitution_associativity():
    # Substituting h into g and then k into a vertex coming from h equals
    # substituting k into h first.
    rng = random.Random(26)
    done = 0
    while done < 20:
        g = random_graph_with_boundary(rng, ["p0"], ["q0"], max_vertices=2)
        if not g.r:
            continue
        v = rng.randint(1, g.r)
        ins, outs = g.neighbourhood(v)
        h = random_graph_with_boundary(rng, sorted(ins), sorted(outs),
                                       max_vertices=2)
        if not h.r:
            continue
        w = rng.randint(1, h.r)
        wins, wouts = h.neighbourhood(w)
        k = random_graph_with_boundary(rng, sorted(wins), sorted(wouts),
                                       max_vertices=2)
        # In substitute(g, v, h) the vertices of h occupy slots v..v+h.r-1.
        lhs = substitute(substitute(g, v, h), v + w - 1, k)
        rhs = substitute(g, v, substitute(h, w, k))
        assert is_isomorphic_strict(lhs, rhs)
        done += 1


def test_json_roundtrip():
    rng = random.Random(27)
    for _ in range(30):
        g = random_graph(rng)
        h = graphs.from_json(graphs.to_json(g))
        assert canonical_form(g) == canonical_form(h)
        assert graphs.to_json(g) == graphs.to_json(h)


def test_loop_flags_import():
    g = graphs.from_obj({"vertices": [], "loop_flags": 4})
    assert g.loop_count == 2
    with pytest.raises(InvalidGraph):
        graphs.from_obj({"vertices": [], "loop_flags": 3})


def test_to_dot_mentions_all_vertices():
    g = chain_graph()
    dot = graphs.to_dot(g)
    assert dot.startswith("digraph")
    assert "v1" in dot and "v2" in dot
