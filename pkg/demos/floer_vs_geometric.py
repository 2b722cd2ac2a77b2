"""Floer dimension of twisted spheres against geometric intersection of twisted circles.

For a tree plumbing the zigzag algebra models the sphere configuration.
Sampling random twist words, the algebraic count is never below the curve
count and agrees with it mod 2.
"""
from __future__ import annotations

import random

from twistlab import TwistWord, apply_word, build_plumbing, hf_dim, imin, twist_word_complex, vertex_object
from twistlab import zigzag_from_tree

from relations_on_a2 import load


def sample(name: str, count: int, rng: random.Random):
    g = load(name)
    s, cs = build_plumbing(g)
    A = zigzag_from_tree(g)
    names = list(g.vertices)
    for _ in range(count):
        w = TwistWord(tuple((rng.choice(names), rng.choice((-2, -1, 1, 2))) for _ in range(rng.randint(1, 4))))
        i, j = rng.choice(names), rng.choice(names)
        up = hf_dim(twist_word_complex(A, w, i), vertex_object(A, j))
        down = imin(s, apply_word(cs, w, cs[i]), cs[j])
        yield w, i, j, up, down


def main():
    rng = random.Random(20240601)
    for name in ("a3", "star4"):
        rows = list(sample(name, 8, rng))
        print(f"{name}:")
        for w, i, j, up, down in rows:
            print(f"  HF(({w}) {i}, {j}) = {up:3d}   i = {down:3d}")
        assert all(up >= down and (up - down) % 2 == 0 for *_, up, down in rows)


if __name__ == "__main__":
    main()
