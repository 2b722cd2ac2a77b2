from __future__ import annotations

import json
from pathlib import Path

import pytest

from twistlab.cli import run
from twistlab.curves import Curve, cut_letters, diagram

from conftest import plumbed

GOLDEN = Path(__file__).parent / "golden"


def result(*argv):
    rep, code = run(list(argv))
    assert code == 0, rep
    return rep["result"]


def as_file(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


@pytest.mark.parametrize("fname,argv", [
    ("a2_twist_word.json", ["apply", "--graph", "a2", "--word", "a", "--target", "b"]),
    ("a2_commutator_witness.json", ["check-relation", "--graph", "a2", "--word", "a b a^-1 b^-1"]),
    ("star4_coincidence.json", ["coincidence", "--graph", "star4"]),
    ("multi6_triangle_coincidence.json", ["coincidence", "--graph", "multi6-triangle"]),
])
def test_json_golden(fname, argv):
    assert as_file(result(*argv)) == (GOLDEN / fname).read_text()


@pytest.mark.parametrize("fname,argv", [
    ("star4_raag.txt", ["raag", "--graph", "star4"]),
    ("edgeless_raag.txt", ["raag", "--graph", "multi6-triangle"]),
    ("complete4_raag.txt", ["raag", "--coincidence", str(GOLDEN / "complete4_coincidence_input.json")]),
])
def test_raag_golden(fname, argv):
    assert result(*argv)["text"] == (GOLDEN / fname).read_text()


def test_twist_word_length_is_cut_crossings():
    _, s, _ = plumbed("a2")
    word = json.loads((GOLDEN / "a2_twist_word.json").read_text())
    c = Curve(tuple(word["image"]["darts"]))
    d = diagram(s, c)
    on_cuts = sum(len(d.edges.get(k, ())) for k in s.cut_edges)
    assert len(word["homotopy_word"]["letters"]) == on_cuts == len(cut_letters(s, c))
