"""Twist relations on the plumbing of two cylinders.

The braid relation holds; the commutator of the two twists does not, and
the checker hands back an arc that the commutator moves.
"""
from __future__ import annotations

import json
from importlib import resources

from twistlab import PlumbingGraph, TwistWord, apply_word, build_plumbing, imin, is_trivial_word
from twistlab.curves import algebraic_intersection


def load(name: str) -> PlumbingGraph:
    text = (resources.files("twistlab") / "fixtures" / f"{name}.json").read_text()
    return PlumbingGraph.from_json(json.loads(text))


def main():
    s, cs = build_plumbing(load("a2"))
    a, b = cs["a"], cs["b"]
    print("i(a, b) =", imin(s, a, b))

    for text in ("a b a b^-1 a^-1 b^-1", "a b a^-1 b^-1", "a^6 b^-6"):
        v = is_trivial_word(cs, TwistWord.parse(text))
        print(f"{text:24s} {v.verdict}", f"({v.witness.arc} moved)" if v.witness else "")

    # homology of twisted curves follows the transvection law
    for n in (1, 2, 3):
        c = apply_word(cs, TwistWord.parse(f"a^{n}"), b)
        print(f"T_a^{n}(b): i with a = {imin(s, c, a)}, i with b = {imin(s, c, b)},",
              f"algebraic with a = {algebraic_intersection(s, a, c)}")


if __name__ == "__main__":
    main()
