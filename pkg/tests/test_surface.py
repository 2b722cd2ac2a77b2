from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from twistlab.curves import imin, is_simple
from twistlab.surface import (
    PlumbingGraph,
    attach_handle,
    build_plumbing,
    chain,
    cut_report,
    cycle,
    detector_arc,
    filling_arc_system,
    pushoffs,
)
from twistlab.cells import SurfaceError

from conftest import plumbed

EXPECTED_CHI = {
    "a2": -1, "a3": -2, "a6": -5, "c3": -3, "c4": -4, "e6": -5,
    "multi6-pair": -6, "multi6-triangle": -18, "star4": -4,
}


@pytest.mark.parametrize("name", sorted(EXPECTED_CHI))
def test_fixture_euler_characteristic(name):
    g, s, _ = plumbed(name)
    assert s.euler_characteristic() == EXPECTED_CHI[name] == -len(g.edges)


@pytest.mark.parametrize("name", sorted(EXPECTED_CHI))
def test_cores_simple_and_meet_once_per_edge(name):
    g, s, cs = plumbed(name)
    for v in g.vertices:
        assert is_simple(s, cs[v])
    for u in g.vertices:
        for v in g.vertices:
            if u < v:
                assert imin(s, cs[u], cs[v]) == g.multiplicity(u, v)


def test_a2_is_punctured_torus():
    _, s, _ = plumbed("a2")
    assert len(s.boundary_components()) == 1


def test_isolated_vertex_gives_annulus():
    s, cs = build_plumbing(PlumbingGraph(("x",), (), {}))
    assert s.euler_characteristic() == 0
    assert len(s.boundary_components()) == 2
    assert is_simple(s, cs["x"])


def test_bad_orientation_rejected():
    with pytest.raises(SurfaceError):
        PlumbingGraph(("a", "b"), (("a", "b", 2),), {})


def test_flip_vertex_keeps_surface_type():
    g = cycle(3, (1, 1, -1))
    s, _ = build_plumbing(g)
    t, _ = build_plumbing(g.flip_vertex(g.vertices[0]))
    assert s.euler_characteristic() == t.euler_characteristic()
    assert len(s.boundary_components()) == len(t.boundary_components())


@pytest.mark.parametrize("name", ["a2", "a3", "star4", "c3", "multi6-pair"])
def test_filling_arcs_cut_into_discs(name):
    _, s, _ = plumbed(name)
    arcs = filling_arc_system(s)
    assert len(arcs) == 1 - s.euler_characteristic()
    assert cut_report(s, list(arcs.curves.values())).all_discs


def test_too_few_arcs_do_not_fill():
    _, s, _ = plumbed("a3")
    arcs = list(filling_arc_system(s).curves.values())
    assert not cut_report(s, arcs[:-1]).all_discs


def test_detectors_meet_arc_zero_and_once():
    _, s, _ = plumbed("a2")
    arcs = filling_arc_system(s)
    a = arcs["arc" + str(s.cut_edges[0])]
    right, left = pushoffs(s, a)
    assert imin(s, a, right) == imin(s, a, left) == 0
    assert imin(s, a, detector_arc(s, a)) == 1


def test_handle_turns_arc_into_closed_curve():
    _, s, cs = plumbed("a2")
    a = filling_arc_system(s)["arc" + str(s.cut_edges[0])]
    h = attach_handle(s, a, keep=[cs["a"], cs["b"]])
    assert not h.curve.is_arc
    assert h.surface.euler_characteristic() == s.euler_characteristic() - 1
    assert is_simple(h.surface, h.curve)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 6))
def test_chain_characteristic(n):
    s, _ = build_plumbing(chain(n))
    assert s.euler_characteristic() == -(n - 1)
