from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from twistlab.groups import (
    CoincidenceGraph,
    FiniteGroup,
    FoldedGraph,
    GroupError,
    Presentation,
    coincidence_graph,
    cyclic_group,
    free_group,
    free_reduce,
    hamidi_tehrani_certificate,
    intersection_matrix,
    irredundancy_check,
    raag_presentation,
    wreath_presentation,
)

from conftest import plumbed


def test_intersection_matrices():
    assert intersection_matrix(plumbed("a2")[2]) == [[0, 1], [1, 0]]
    assert intersection_matrix(plumbed("multi6-triangle")[2]) == [[0, 6, 6], [6, 0, 6], [6, 6, 0]]


def test_star4_coincidence():
    g = coincidence_graph(plumbed("star4")[2])
    assert g.vertices == ("A", "B", "C", "D", "E")
    assert len(g.edges) == 6
    assert not any("C" in e for e in g.edges)


def test_certificates():
    ok = hamidi_tehrani_certificate(plumbed("multi6-triangle")[2], ["a", "b", "c"])
    assert ok.holds and ok.witness is None
    bad = hamidi_tehrani_certificate(plumbed("a3")[2], ["v1", "v2", "v3"])
    assert not bad.holds and bad.witness == (1, 3, 2)
    assert "no freeness claim" in bad.claim


def test_certificate_needs_two_curves():
    with pytest.raises(GroupError):
        hamidi_tehrani_certificate(plumbed("a3")[2], ["v1"])


def test_irredundancy():
    _, _, cs = plumbed("a3")
    assert irredundancy_check(cs) == (True, None)
    twin = cs.with_curve("w", cs["v2"].reversed())
    assert irredundancy_check(twin) == (False, (2, 4))


def test_raag_text():
    g = CoincidenceGraph.from_pairs(["x", "y", "z"], [("x", "y")])
    p = raag_presentation(g, 3)
    assert p.gens == ("z_x", "z_y", "z_z")
    assert p.to_text().splitlines()[-1] == "[z_x,z_y]"


def test_presentation_roundtrip():
    p = raag_presentation(CoincidenceGraph.from_pairs(["a", "b"], [("a", "b")]))
    q = Presentation.parse(p.to_text())
    assert q.gens == p.gens and q.rels == p.rels


def test_free_reduce():
    assert free_reduce([("x", 1), ("y", 1), ("y", -1), ("x", -1)]) == ()


def test_finite_group_validation():
    with pytest.raises(GroupError):
        FiniteGroup(("0", "1"), {"0": {"0": "0", "1": "1"}, "1": {"0": "1", "1": "1"}})
    z3 = cyclic_group(3)
    assert FiniteGroup.from_json(z3.to_json()).mul("2", "2") == "1"


@pytest.mark.parametrize("n,gens", [(2, 5), (3, 8)])
def test_wreath_generator_count(n, gens):
    p = wreath_presentation(free_group(2), cyclic_group(n))
    assert len(p.gens) == gens
    assert len(p.gens) == n * 2 + n - 1


def test_wreath_relations_shift_copies():
    p = wreath_presentation(free_group(1), cyclic_group(2))
    assert "t_1 x1 t_1^-1 x1_1^-1" in p.to_text().splitlines()


def test_folding_basics():
    fg = FoldedGraph([[1, 2], [2]])
    assert fg.accepts([1]) and fg.accepts([2, 1, 2])
    assert fg.is_whole_group([1, 2]) and fg.rank == 2
    assert not FoldedGraph([[1, 1]]).accepts([1])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=5), min_size=1, max_size=3),
       st.lists(st.integers(0, 2), max_size=4))
def test_folding_accepts_products_of_generators(ws, picks):
    fg = FoldedGraph(ws)
    w = [x for i in picks for x in ws[i % len(ws)]]
    assert fg.accepts(w)
    assert fg.accepts([-x for x in reversed(ws[0])])
