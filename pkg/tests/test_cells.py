from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from twistlab.cells import CombSurface, SurfaceError, disc

from conftest import plumbed


def test_disc_is_a_disc():
    s = disc(3)
    assert s.euler_characteristic() == 1
    assert len(s.boundary_components()) == 1
    assert s.interior_edges == []


def test_annulus_from_square():
    s = CombSurface(((1, 2, -1, 3),))
    assert s.interior_edges == [1]
    assert s.euler_characteristic() == 0
    assert len(s.boundary_components()) == 2
    assert s.first_betti() == 1


def test_edge_used_three_times_rejected():
    with pytest.raises(SurfaceError):
        CombSurface(((1, 1, -1, 2),))


def test_json_roundtrip():
    _, s, _ = plumbed("star4")
    assert CombSurface.from_json(s.to_json()) == s


def test_cut_edges_count_betti():
    for name in ("a2", "a3", "star4", "c4", "multi6-pair"):
        _, s, _ = plumbed(name)
        assert len(s.cut_edges) == s.first_betti() == 1 - s.euler_characteristic()


def test_disjoint_union_adds_characteristics():
    _, s, _ = plumbed("a2")
    u, maps = CombSurface.disjoint_union([s, s, s])
    assert u.euler_characteristic() == 3 * s.euler_characteristic()
    assert u.num_components() == 3
    assert len(maps) == 3 and all(len(m) == len(s.edges) for m in maps)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8))
def test_polygon_discs(n):
    s = disc(n)
    assert s.euler_characteristic() == 1
    assert s.is_connected()
