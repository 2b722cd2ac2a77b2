from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from twistlab.groups import cyclic_group
from twistlab.stab import (
    TAG_OBSTRUCTED,
    TAG_OPEN,
    StabError,
    augment_for_simple_connectivity,
    cycle_notation,
    cycle_plumbing_sigma,
    equivariant_sequence,
    one_stabilise,
    parse_permutation,
    tower,
    transfer_verdict,
)
from twistlab.surface import cycle
from twistlab.twists import TwistWord, apply_word, commutator, twist
from twistlab.zigzag import zigzag_from_tree

from conftest import fixture_graph, plumbed


def test_permutations():
    assert parse_permutation("id", 3) == (1, 2, 3)
    assert parse_permutation("(2 3)", 3) == (1, 3, 2)
    assert cycle_notation((1, 3, 2)) == "(2 3)"
    with pytest.raises(StabError):
        parse_permutation([1, 1, 2], 3)


def test_doubled_sequence():
    _, _, cs = plumbed("a3")
    r = one_stabilise(cs, ["v1", "v2", "v3"], "(1 2)")
    assert r.sequence == ("v2", "v1", "v3", "v2", "v1", "v3")
    assert [lab for lab, _, _ in r.labels] == ["V_2", "V_1", "V_3"]
    assert [(a, b) for _, a, b in r.labels] == [(1, 4), (2, 5), (3, 6)]


def test_arcs_cannot_be_vanishing_cycles():
    _, s, cs = plumbed("a2")
    from twistlab.twists import filling_arcs
    name, arc = filling_arcs(s)[0]
    with pytest.raises(StabError):
        one_stabilise(cs.with_curve(name, arc), [name])


def test_tower_heights():
    _, _, cs = plumbed("a2")
    t = tower(cs, 3)
    assert t.height == 3
    assert len(t.records[-1].sequence) == 4


@pytest.mark.parametrize("name,want", [("c3", (1, 2, 3)), ("c3-twisted", (1, 3, 2)),
                                       ("c4", (1, 2, 3, 4)), ("c4-two-negative", (1, 2, 3, 4))])
def test_cycle_sigma_fixtures(name, want):
    assert cycle_plumbing_sigma(fixture_graph(name)) == want


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7).flatmap(lambda n: st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n)))
def test_cycle_sigma_tracks_sign_product(orients):
    n = len(orients)
    sig = cycle_plumbing_sigma(cycle(n, orients))
    prod = 1
    for o in orients:
        prod *= o
    assert sig == (tuple(range(1, n + 1)) if prod > 0 else tuple(range(1, n - 1)) + (n, n - 1))


@pytest.mark.parametrize("n", [2, 3])
def test_equivariant_blocks(n):
    _, _, cs = plumbed("a3")
    seq = equivariant_sequence(["v1", "v2", "v3"], cyclic_group(n), cs)
    assert len(seq.blocks) == 3 and all(len(b) == n for b in seq.blocks)
    assert len(seq.sequence) == 2 * 3 * n and seq.disjointness_checked


def test_transfer_obstructed_with_handles():
    _, _, cs = plumbed("a2")
    v = transfer_verdict(cs, commutator(twist("a"), twist("b")), tower(cs, 2))
    assert v.tag == TAG_OBSTRUCTED and v.height == 2
    assert v.handle_check["agrees"]


def test_transfer_open_for_labruere():
    g, _, cs = plumbed("star4")
    cs = cs.with_curve("c1", apply_word(cs, TwistWord.parse("A C"), cs["D"]), ("A C", "D"))
    cs = cs.with_curve("c2", apply_word(cs, TwistWord.parse("B C"), cs["E"]), ("B C", "E"))
    v = transfer_verdict(cs, commutator(twist("c1"), twist("c2")), upstairs=(zigzag_from_tree(g), cs.origins))
    assert v.tag == TAG_OPEN
    assert v.upstairs["pairs"] == {"c1,c2": 2}


@pytest.mark.parametrize("name", ["a2", "a3", "star4", "c3"])
def test_augmentation_generates(name):
    _, s, cs = plumbed(name)
    out = augment_for_simple_connectivity(cs)
    assert set(cs.names) <= set(out.names)


def test_augmentation_adds_missing_generator():
    _, s, cs = plumbed("a3")
    out = augment_for_simple_connectivity(cs, ["v1"])
    assert len(out.names) > len(cs.names)
