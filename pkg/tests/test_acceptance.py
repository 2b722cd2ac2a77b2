"""The ten acceptance checks, each timed and reported as one PASS/FAIL line."""

from __future__ import annotations

import itertools
import json
import os
import random
import time
from pathlib import Path

import pytest

from twistlab.cli import run
from twistlab.curves import crossing_count, embed, imin, insert_bigon, tighten, total_points
from twistlab.groups import cyclic_group, hamidi_tehrani_certificate
from twistlab.stab import cycle_plumbing_sigma, equivariant_sequence, one_stabilise
from twistlab.surface import PlumbingGraph, build_plumbing
from twistlab.twists import (
    TwistWord,
    apply_word,
    braid_relator,
    commutator,
    is_trivial_word,
    twist,
    verify_witness,
)
from twistlab.zigzag import hf_dim, twist_word_complex, vertex_object, zigzag_from_tree

from conftest import fixture_graph, plumbed

GOLDEN = Path(__file__).parent / "golden"
SEED = int(os.environ.get("TWISTLAB_SEED", "20240601"))


@pytest.fixture
def criterion(record_property):
    def mark(n: int, title: str):
        record_property("criterion", n)
        record_property("title", title)
        print(f"criterion {n}: {title}")
    return mark


def random_word(rng, names, max_len):
    return TwistWord(tuple((rng.choice(names), rng.choice((-1, 1))) for _ in range(rng.randint(0, max_len))))


def test_01_labruere_algebraic_value(criterion):
    criterion(1, "Labruère HF(T_A T_C D, T_B T_C E) = 2, < 1 s")
    t = time.perf_counter()
    A = zigzag_from_tree(fixture_graph("star4"))
    X = twist_word_complex(A, TwistWord.parse("A C"), "D")
    Y = twist_word_complex(A, TwistWord.parse("B C"), "E")
    value = hf_dim(X, Y)
    assert value == 2
    assert time.perf_counter() - t < 1.0


def test_02_labruere_surface_side(criterion):
    criterion(2, "Labruère imin = 0 and commutator trivial on the surface, < 1 s")
    t = time.perf_counter()
    _, s, cs = plumbed("star4")
    c1 = apply_word(cs, TwistWord.parse("A C"), cs["D"])
    c2 = apply_word(cs, TwistWord.parse("B C"), cs["E"])
    assert imin(s, c1, c2) == 0
    cs = cs.with_curve("c1", c1).with_curve("c2", c2)
    assert is_trivial_word(cs, commutator(twist("c1"), twist("c2"))).trivial
    assert time.perf_counter() - t < 1.0


def test_03_zigzag_hom_table(criterion):
    criterion(3, "hom table 2/1/0 on A_2..A_6, star4, e6, < 1 s total")
    t = time.perf_counter()
    graphs = [PlumbingGraph(tuple(f"v{i}" for i in range(1, n + 1)),
                            tuple((f"v{i}", f"v{i + 1}", 1) for i in range(1, n)), {}) for n in range(1, 7)]
    graphs += [fixture_graph("star4"), fixture_graph("e6")]
    for g in graphs:
        A = zigzag_from_tree(g)
        for u, v in itertools.product(g.vertices, repeat=2):
            want = 2 if u == v else (1 if v in g.neighbours(u) else 0)
            assert hf_dim(vertex_object(A, u), vertex_object(A, v)) == want
    assert time.perf_counter() - t < 1.0


def test_04_seidel_smith_suite(criterion):
    criterion(4, "Seidel-Smith inequality, parity, small-value equality: 1000 samples, < 60 s")
    t = time.perf_counter()
    rng = random.Random(SEED)
    violations = []
    total = 0
    for name in ("a3", "star4"):
        g, s, cs = plumbed(name)
        A = zigzag_from_tree(g)
        for _ in range(500):
            w = random_word(rng, g.vertices, 6)
            i, j = rng.choice(g.vertices), rng.choice(g.vertices)
            up = hf_dim(twist_word_complex(A, w, i), vertex_object(A, j))
            down = imin(s, apply_word(cs, w, cs[i]), cs[j])
            total += 1
            if up < down or (up - down) % 2 or (up <= 1 and up != down):
                violations.append((name, str(w), i, j, up, down))
    assert total >= 500 and violations == []
    assert time.perf_counter() - t < 60.0


def test_05_relation_suite(criterion):
    criterion(5, "braid/commutator relations by intersection number, witness rechecked, < 10 s")
    t = time.perf_counter()
    _, s, a2 = plumbed("a2")
    _, s3, a3 = plumbed("a3")
    _, s6, m6 = plumbed("multi6-pair")
    assert imin(s, a2["a"], a2["b"]) == 1
    assert is_trivial_word(a2, braid_relator("a", "b")).trivial
    assert imin(s3, a3["v1"], a3["v3"]) == 0
    assert is_trivial_word(a3, commutator(twist("v1"), twist("v3"))).trivial
    v = is_trivial_word(a2, commutator(twist("a"), twist("b")))
    assert not v.trivial and verify_witness(a2, v)
    assert all(p.before in (0, 1) and p.after != p.before for p in v.witness.pairs)
    assert imin(s6, m6["a"], m6["b"]) == 6
    v6 = is_trivial_word(m6, braid_relator("a", "b"))
    assert not v6.trivial and verify_witness(m6, v6)
    assert time.perf_counter() - t < 10.0


@pytest.mark.parametrize("name,unit", [("a2", 1), ("multi6-pair", 36)])
def test_06_transvection_law(criterion, name, unit):
    criterion(6, f"imin(T_a^n b, b) = |n| imin(a,b)^2 on {name}")
    _, s, cs = plumbed(name)
    values = [imin(s, apply_word(cs, twist("a", n), cs["b"]), cs["b"]) for n in (1, 2, 3)]
    assert values == [unit * n for n in (1, 2, 3)]


def test_07_hamidi_tehrani(criterion):
    criterion(7, "multi6-triangle certified free; A_3 rejected at (1,3,2)")
    ok = hamidi_tehrani_certificate(plumbed("multi6-triangle")[2], ["a", "b", "c"])
    bad = hamidi_tehrani_certificate(plumbed("a3")[2], ["v1", "v2", "v3"])
    assert ok.holds
    assert not bad.holds and bad.witness == (1, 3, 2)


def test_08_coincidence_raag_golden(criterion):
    criterion(8, "star4 coincidence and RAAG, edgeless and complete cases, byte-exact")

    def result(*argv):
        rep, code = run(list(argv))
        assert code == 0
        return rep["result"]

    coin = result("coincidence", "--graph", "star4")
    assert json.dumps(coin, indent=2, sort_keys=True) + "\n" == (GOLDEN / "star4_coincidence.json").read_text()
    assert len(coin["edges"]) == 6
    raag = result("raag", "--graph", "star4")
    assert raag["text"] == (GOLDEN / "star4_raag.txt").read_text()
    assert len(raag["gens"]) == 5 and len(raag["rels"]) == 6
    assert result("raag", "--graph", "multi6-triangle")["text"] == (GOLDEN / "edgeless_raag.txt").read_text()
    complete = result("raag", "--coincidence", str(GOLDEN / "complete4_coincidence_input.json"))
    assert complete["text"] == (GOLDEN / "complete4_raag.txt").read_text()


def random_plumbing(rng) -> PlumbingGraph:
    n = rng.randint(2, 6)
    verts = tuple(f"x{i}" for i in range(n))
    edges = []
    for _ in range(rng.randint(0, 8)):
        u, v = rng.sample(verts, 2)
        edges.append((u, v, rng.choice((1, -1))))
    cyclic = {}
    for w in verts:
        inc = [i for i, (u, v, _) in enumerate(edges) if w in (u, v)]
        rng.shuffle(inc)
        cyclic[w] = tuple(inc)
    return PlumbingGraph(verts, tuple(edges), cyclic)


def test_09_structural(criterion):
    criterion(9, "chi = -|E| (25 graphs), tighten confluence (100 orders), imin invariance (100 words), < 60 s")
    t = time.perf_counter()
    rng = random.Random(SEED)
    for _ in range(25):
        g = random_plumbing(rng)
        s, _ = build_plumbing(g)
        assert s.euler_characteristic() == -len(g.edges)

    _, s, cs = plumbed("a3")
    a = apply_word(cs, TwistWord.parse("v1 v2^-1"), cs["v3"])
    b = apply_word(cs, TwistWord.parse("v3 v2"), cs["v1"])
    da, db = embed(s, [[a], [b]])
    want = (crossing_count(da, db), total_points(da), total_points(db))
    assert want[0] == imin(s, a, b)
    for _ in range(100):
        wa, wb = da, db
        for _ in range(rng.randint(1, 4)):
            pts = sorted(p for k, v in wa.layout.items() if s.is_interior(k) for p in v if p in wa.points)
            wa = insert_bigon(wa, rng.choice(pts), rng)
        ta, tb = tighten(wa, wb, rng=rng)
        assert (crossing_count(ta, tb), total_points(ta), total_points(tb)) == want
        ta2, tb2 = tighten(ta, tb, rng=rng)
        assert crossing_count(ta2, tb2) == want[0]

    g, s, cs = plumbed("star4")
    for _ in range(100):
        w = random_word(rng, g.vertices, 5)
        x, y = rng.sample(g.vertices, 2)
        p = apply_word(cs, random_word(rng, g.vertices, 2), cs[x])
        q = cs[y]
        assert imin(s, apply_word(cs, w, p), apply_word(cs, w, q)) == imin(s, p, q)
    assert time.perf_counter() - t < 60.0


def test_10_stabilisation_bookkeeping(criterion):
    criterion(10, "doubled sequence, cycle sigma on C3/C4, equivariant blocks for Z/2, Z/3")
    _, _, cs = plumbed("a3")
    rec = one_stabilise(cs, ["v1", "v2", "v3"], "(1 3 2)")
    half = tuple(["v1", "v2", "v3"][j - 1] for j in rec.sigma)
    assert rec.sequence == half + half
    assert [(a, b) for _, a, b in rec.labels] == [(1, 4), (2, 5), (3, 6)]
    assert cycle_plumbing_sigma(fixture_graph("c3")) == (1, 2, 3)
    assert cycle_plumbing_sigma(fixture_graph("c4")) == (1, 2, 3, 4)
    assert cycle_plumbing_sigma(fixture_graph("c3-twisted")) == (1, 3, 2)
    assert cycle_plumbing_sigma(fixture_graph("c4-two-negative")) == (1, 2, 3, 4)
    for n in (2, 3):
        seq = equivariant_sequence(["v1", "v2", "v3"], cyclic_group(n), cs)
        assert len(seq.blocks) == 3 and {len(b) for b in seq.blocks} == {n}
        assert len(seq.sequence) == 2 * 3 * n
