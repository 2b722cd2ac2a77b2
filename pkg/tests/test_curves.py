from __future__ import annotations

import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from twistlab.curves import (
    Curve,
    CurveError,
    algebraic_intersection,
    crossing_count,
    cut_letters,
    diagram,
    embed,
    homotopy_word,
    imin,
    insert_bigon,
    is_isotopic,
    is_null,
    is_primitive,
    reduce,
    self_intersection,
    tighten,
    total_points,
)
from twistlab.twists import TwistWord, apply_word

from conftest import plumbed

NAMES = {"a2": ["a", "b"], "a3": ["v1", "v2", "v3"], "star4": ["A", "B", "C", "D", "E"]}


def words(names, max_len=4):
    return st.lists(st.tuples(st.sampled_from(names), st.sampled_from([-1, 1])), max_size=max_len).map(
        lambda fs: TwistWord(tuple(fs)))


def homology(s, c):
    v = Counter()
    for x in cut_letters(s, c):
        v[abs(x)] += 1 if x > 0 else -1
    return {k: n for k, n in v.items() if n}


def test_reduce_removes_backtracks():
    assert reduce(Curve((1, 2, -2, 3, -1))).darts == (3,)
    assert reduce(Curve((1, 2, -2, -1))).darts == ()
    assert is_null(Curve((4, -4)))


def test_primitive():
    assert is_primitive(Curve((1, -3)))
    assert not is_primitive(Curve((1, -3, 1, -3)))


def test_unknown_dart_rejected():
    _, s, _ = plumbed("a2")
    with pytest.raises(CurveError):
        imin(s, Curve((99,)), Curve((1, -3)))


def test_a2_core_values():
    _, s, cs = plumbed("a2")
    assert imin(s, cs["a"], cs["b"]) == 1
    assert imin(s, cs["a"], cs["a"]) == 0
    assert abs(algebraic_intersection(s, cs["a"], cs["b"])) == 1


def test_double_curve_self_intersects():
    _, s, cs = plumbed("a2")
    aa = Curve(cs["a"].darts * 2)
    assert self_intersection(s, aa) == 1


def test_homotopy_word_rotation_invariant():
    _, s, cs = plumbed("a3")
    c = apply_word(cs, TwistWord.parse("v1 v2"), cs["v3"])
    d = c.darts
    rot = Curve(d[3:] + d[:3])
    assert homotopy_word(s, c) == homotopy_word(s, rot)
    assert is_isotopic(s, c, rot.reversed())


def test_diagram_json_roundtrip():
    from twistlab.curves import CurveDiagram
    _, s, cs = plumbed("a2")
    d = diagram(s, cs["a"])
    d2 = CurveDiagram.from_json(s, d.to_json())
    assert [reduce(c).darts for c in d2.trace()] == [reduce(c).darts for c in d.trace()]


@pytest.mark.parametrize("name", sorted(NAMES))
def test_crossing_count_matches_imin(name):
    _, s, cs = plumbed(name)
    rng = random.Random(3)
    for _ in range(10):
        w = TwistWord(tuple((rng.choice(NAMES[name]), rng.choice((-1, 1))) for _ in range(3)))
        a = apply_word(cs, w, cs[rng.choice(NAMES[name])])
        b = cs[rng.choice(NAMES[name])]
        da, db = embed(s, [[a], [b]])
        assert crossing_count(da, db) == imin(s, a, b)


@settings(max_examples=40, deadline=None)
@given(words(NAMES["a3"]), st.sampled_from(NAMES["a3"]), st.sampled_from(NAMES["a3"]))
def test_imin_bounds_algebraic(w, i, j):
    _, s, cs = plumbed("a3")
    a = apply_word(cs, w, cs[i])
    n, k = imin(s, a, cs[j]), algebraic_intersection(s, a, cs[j])
    assert n >= abs(k) and (n - k) % 2 == 0


@settings(max_examples=40, deadline=None)
@given(words(NAMES["star4"], 3), st.sampled_from(NAMES["star4"]))
def test_twists_keep_curves_simple(w, i):
    _, s, cs = plumbed("star4")
    assert self_intersection(s, apply_word(cs, w, cs[i])) == 0


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(NAMES["star4"]), st.sampled_from(NAMES["star4"]), st.integers(-3, 3))
def test_picard_lefschetz_in_homology(a, b, n):
    # [T_a^n b] = [b] - n <a,b> [a] with the engine's sign for <,>
    _, s, cs = plumbed("star4")
    img = homology(s, apply_word(cs, TwistWord(((a, n),)), cs[b]))
    k = algebraic_intersection(s, cs[a], cs[b])
    want = Counter(homology(s, cs[b]))
    for e, x in homology(s, cs[a]).items():
        want[e] -= n * k * x
    assert img == {e: x for e, x in want.items() if x}


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_bigons_tighten_away(seed):
    rng = random.Random(seed)
    _, s, cs = plumbed("a3")
    c = apply_word(cs, TwistWord.parse("v1 v2^-1"), cs["v3"])
    d = diagram(s, c)
    base = total_points(d)
    for _ in range(3):
        pts = sorted(p for k, v in d.layout.items() if s.is_interior(k) for p in v)
        d = insert_bigon(d, rng.choice(pts), rng)
    assert total_points(d) == base + 6
    t = tighten(d, rng=rng)
    assert total_points(t) == base
    assert is_isotopic(s, t.trace()[0], c)
