"""Cross-checks against facts computed without the intersection engine."""

from __future__ import annotations

import random
from collections import Counter

from hypothesis import given, settings, strategies as st

from twistlab.curves import (
    Curve,
    algebraic_intersection,
    crossing_count,
    cut_letters,
    embed,
    imin,
    is_primitive,
    reduce,
    self_intersection,
)
from twistlab.curves import _interleaved
from twistlab.twists import TwistWord, apply_word, twist

from conftest import plumbed


def random_closed(s, rng, length):
    """A reduced primitive closed dart path from a random walk in the dual graph."""
    while True:
        f0 = f = rng.randrange(len(s.faces))
        darts = []
        for k in range(length + 40):
            if k >= length and f == f0:
                break
            opts = [x for x in s.faces[f] if s.is_interior(x) and (not darts or x != -darts[-1])]
            x = rng.choice(opts)
            darts.append(x)
            f = s.face_of(-x)
        if f != f0:
            continue
        c = reduce(Curve(tuple(darts)))
        if c.darts and is_primitive(c):
            return c


def homology(s, c):
    v = Counter()
    for x in cut_letters(s, c):
        v[abs(x)] += 1 if x > 0 else -1
    return v


def det(s, a, b):
    e, f = s.cut_edges
    ha, hb = homology(s, a), homology(s, b)
    return ha[e] * hb[f] - ha[f] * hb[e]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_punctured_torus_determinant(seed):
    # on a once-punctured torus two simple closed curves meet |det| times,
    # and the signed count is the determinant up to a global sign
    rng = random.Random(seed)
    _, s, _ = plumbed("a2")
    a, b = random_closed(s, rng, rng.randint(2, 12)), random_closed(s, rng, rng.randint(2, 12))
    k = algebraic_intersection(s, a, b)
    assert abs(k) == abs(det(s, a, b))
    if self_intersection(s, a) == 0 and self_intersection(s, b) == 0:
        assert imin(s, a, b) == abs(k)


def test_torus_sign_is_global():
    rng = random.Random(1)
    _, s, cs = plumbed("a2")
    ref = det(s, cs["a"], cs["b"]) * algebraic_intersection(s, cs["a"], cs["b"])
    for _ in range(100):
        a, b = random_closed(s, rng, 8), random_closed(s, rng, 8)
        assert det(s, a, b) * ref == algebraic_intersection(s, a, b) * abs(ref)


@settings(max_examples=30, deadline=None)
@given(st.integers(-4, 4), st.integers(-3, 3))
def test_torus_transvection(n, m):
    # twist images stay simple, so their intersections are determinants
    _, s, cs = plumbed("a2")
    b = apply_word(cs, twist("b", m), cs["a"])
    c = apply_word(cs, twist("a", n), b)
    assert imin(s, c, b) == abs(det(s, c, b))
    assert imin(s, c, cs["a"]) == abs(det(s, c, cs["a"]))


def _self_crossings(d):
    return sum(1 for f, ch in d.chords.items() for _ in _interleaved(d, f, ch, ch)) // 2


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["a2", "a3", "star4", "c3"]), st.integers(0, 10**9))
def test_joint_layout_is_minimal(name, seed):
    # three curves embedded together realise every pairwise and self minimum
    rng = random.Random(seed)
    _, s, _ = plumbed(name)
    cur = [random_closed(s, rng, rng.randint(2, 14)) for _ in range(3)]
    ds = embed(s, [[c] for c in cur])
    for i in range(3):
        assert _self_crossings(ds[i]) == self_intersection(s, cur[i])
        for j in range(i + 1, 3):
            assert crossing_count(ds[i], ds[j]) == imin(s, cur[i], cur[j])


def test_power_self_intersection():
    _, s, cs = plumbed("a2")
    for k in (2, 3, 4):
        assert self_intersection(s, Curve(cs["a"].darts * k)) == k - 1
    c = apply_word(cs, TwistWord.parse("a b"), cs["a"])
    p = self_intersection(s, c)
    assert self_intersection(s, Curve(c.darts * 2)) == 4 * p + 1
