"""Bookkeeping for stabilisation.

One stabilisation doubles the vanishing-cycle sequence. Cycle plumbings
need a reordering permutation, read off from the cyclic walk. A word that
is nontrivial on the surface stays nontrivial up any tower.
"""
from __future__ import annotations

from twistlab import TwistWord, build_plumbing
from twistlab.groups import cyclic_group
from twistlab.stab import cycle_notation, cycle_plumbing_sigma, equivariant_sequence, tower, transfer_verdict

from relations_on_a2 import load


def main():
    _, cs = build_plumbing(load("a3"))
    t = tower(cs, 2)
    for level, rec in enumerate(t.records, 1):
        print(f"level {level}: {' '.join(rec.sequence)}")

    for name in ("c3", "c3-twisted", "c4"):
        print(f"{name}: sigma = {cycle_notation(cycle_plumbing_sigma(load(name)))}")

    seq = equivariant_sequence(["v1", "v2", "v3"], cyclic_group(3), cs)
    print("Z/3 blocks:", [" ".join(b) for b in seq.blocks])

    for text in ("v1 v3 v1^-1 v3^-1", "v1 v2 v1^-1 v2^-1"):
        print(transfer_verdict(cs, TwistWord.parse(text), t).text)


if __name__ == "__main__":
    main()
