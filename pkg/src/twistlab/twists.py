"""Dehn twists as surgery on curves, twist words and triviality certificates.

Convention: a positive (right-handed) twist makes every strand that meets
the core turn right onto it, go once around, and continue. Words act like
composition of maps: in ``a b`` the twist ``b`` acts first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .cells import CombSurface
from .curves import (
    Curve,
    NamedCurveSet,
    ccw_between,
    imin,
    is_isotopic,
    is_null,
    is_primitive,
    is_simple,
    joint_layout,
    reduce,
    same_arc,
    validate,
)
from .surface import detector_arc, filling_arc_system, pushoffs


class WordError(ValueError):
    """Malformed twist word or a name that cannot be twisted along."""


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class TwistWord:
    """A product of twist powers, freely reduced.

    ``factors`` lists ``(name, exponent)`` from left to right.
    """

    factors: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        out: list[list] = []
        for name, m in self.factors:
            m = int(m)
            if out and out[-1][0] == name:
                out[-1][1] += m
            else:
                out.append([name, m])
            if out and out[-1][1] == 0:
                out.pop()
        object.__setattr__(self, "factors", tuple((n, m) for n, m in out))

    @classmethod
    def parse(cls, text: str) -> "TwistWord":
        fs = []
        for tok in text.split():
            m = _TOKEN.match(tok)
            if not m:
                raise WordError(f"cannot parse twist factor {tok!r}")
            fs.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
        return cls(tuple(fs))

    def __str__(self) -> str:
        return " ".join(n if m == 1 else f"{n}^{m}" for n, m in self.factors)

    def __len__(self) -> int:
        return sum(abs(m) for _, m in self.factors)

    def __mul__(self, other: "TwistWord") -> "TwistWord":
        return TwistWord(self.factors + other.factors)

    def inverse(self) -> "TwistWord":
        return TwistWord(tuple((n, -m) for n, m in reversed(self.factors)))

    @property
    def names(self) -> list[str]:
        return sorted({n for n, _ in self.factors})

    def rename(self, mapping) -> "TwistWord":
        return TwistWord(tuple((mapping.get(n, n), m) for n, m in self.factors))


def twist(name: str, m: int = 1) -> TwistWord:
    return TwistWord(((name, m),))


def commutator(x: TwistWord, y: TwistWord) -> TwistWord:
    return x * y * x.inverse() * y.inverse()


def braid_relator(a: str, b: str) -> TwistWord:
    return TwistWord.parse(f"{a} {b} {a} {b}^-1 {a}^-1 {b}^-1")


# -- surgery -------------------------------------------------------------------


def check_core(s: CombSurface, core: Curve, name: str = "core") -> Curve:
    if core.is_arc:
        raise WordError(f"{name} is an arc; twists need closed curves")
    validate(s, core)
    core = reduce(core)
    if is_null(core):
        raise WordError(f"{name} is null-homotopic")
    if not is_primitive(core) or not is_simple(s, core):
        raise WordError(f"{name} is not a simple closed curve")
    return core


def _cyc_rank(a, e):
    return (0 if e > a else 1, e)


def twist_curve(s: CombSurface, core: Curve, m: int, target: Curve, checked: bool = False) -> Curve:
    """Apply ``m`` right-handed twists along the simple closed ``core`` to ``target``.

    Both curves are embedded jointly in minimal position; at each crossing
    the target is cut and a copy of the core (traversed in the direction of
    a right turn, ``|m|`` times) is spliced in. Crossings within a face are
    handled in the order the target meets them.
    """
    if not checked:
        core = check_core(s, core)
    validate(s, target)
    target = reduce(target)
    if m == 0 or is_null(target):
        return target
    lay = joint_layout(s, [target, core])
    bd = core.darts
    bchords: dict[int, list] = {}
    for t, (f, (x, y)) in enumerate(lay.chords(1)):
        bchords.setdefault(f, []).append((t, lay.key(*x), lay.key(*y)))
    sgn = 1 if m > 0 else -1
    out: list[int] = []
    a_darts = target.darts
    for t, (f, (x, y)) in enumerate(lay.chords(0)):
        ka, kb = lay.key(*x), lay.key(*y)
        hits = []
        for tb, ky, kv in bchords.get(f, ()):
            iy, iv = ccw_between(ka, ky, kb), ccw_between(ka, kv, kb)
            if iy == iv:
                continue
            near = ky if iy else kv
            sign = 1 if ccw_between(ky, ka, kv) else -1
            hits.append((_cyc_rank(ka, near), tb, sign))
        hits.sort()
        for _, tb, sign in hits:
            loop = bd[tb:] + bd[:tb]
            if sign * sgn < 0:
                loop = tuple(-d for d in reversed(loop))
            out.extend(loop * abs(m))
        if t < len(a_darts):
            out.append(a_darts[t])
    return reduce(Curve(tuple(out), target.start, target.end))


def check_word(cs: NamedCurveSet, w: TwistWord) -> dict[str, Curve]:
    cores = {}
    for name in w.names:
        if name not in cs:
            raise WordError(f"unknown curve name {name!r}")
        cores[name] = check_core(cs.surface, cs[name], name)
    return cores


def apply_word(cs: NamedCurveSet, w: TwistWord, target: Curve) -> Curve:
    """Image of ``target`` under the mapping class ``w`` (rightmost factor first)."""
    cores = check_word(cs, w)
    c = reduce(target)
    for name, m in reversed(w.factors):
        c = twist_curve(cs.surface, cores[name], m, c, checked=True)
    return c


# -- triviality -------------------------------------------------------------------


@dataclass(frozen=True)
class DetectorPair:
    i: str
    j: str
    before: int
    after: int

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "before": self.before, "after": self.after}


@dataclass(frozen=True)
class Witness:
    """An arc moved by the word, with detector arcs that see the motion.

    The word is split as ``left * right``; ``image`` is ``right(arc)`` and
    ``pulled[j]`` is ``left^-1(detector j)``. Since mapping classes preserve
    intersection numbers, ``imin(image, pulled[j])`` equals
    ``imin(word(arc), detector j)``. Pairs list ``before`` =
    ``imin(arc, detector)`` and ``after`` for every detector whose value changed.
    """

    arc: str
    curve: Curve
    split: int
    image: Curve
    detectors: dict
    pulled: dict
    pairs: tuple[DetectorPair, ...]

    def to_json(self) -> dict:
        return {
            "arc": self.arc,
            "curve": self.curve.to_json(),
            "split": self.split,
            "detectors": {k: v.to_json() for k, v in self.detectors.items()},
            "pairs": [p.to_json() for p in self.pairs],
        }


@dataclass(frozen=True)
class TrivialityVerdict:
    trivial: bool
    word: TwistWord
    witness: Witness | None = None
    arcs_checked: int = 0

    @property
    def verdict(self) -> str:
        return "trivial" if self.trivial else "nontrivial"

    def to_json(self) -> dict:
        return {
            "trivial": self.trivial,
            "word": str(self.word),
            "arcs_checked": self.arcs_checked,
            "witness": self.witness.to_json() if self.witness else None,
        }


@lru_cache(maxsize=64)
def _arcs(s: CombSurface) -> tuple[tuple[str, Curve], ...]:
    return tuple(filling_arc_system(s).curves.items())


def filling_arcs(s: CombSurface) -> list[tuple[str, Curve]]:
    return list(_arcs(s))


def detector_scheme(s: CombSurface, a: Curve, others: Sequence[Curve] = ()) -> dict[str, Curve]:
    """Two parallel copies of ``a`` and a collar arc crossing it once."""
    right, left = pushoffs(s, a, others)
    det = detector_arc(s, a, others=list(others) + [right, left])
    return {"c_right": right, "c_left": left, "detector": det}


def _halves(w: TwistWord) -> tuple[int, TwistWord, TwistWord]:
    h = len(w.factors) // 2
    return h, TwistWord(w.factors[:h]), TwistWord(w.factors[h:])


def build_witness(cs: NamedCurveSet, w: TwistWord, name: str, a: Curve,
                  others: Sequence[Curve] = ()) -> Witness:
    s = cs.surface
    h, left, right = _halves(w)
    image = apply_word(cs, right, a)
    dets = detector_scheme(s, a, others)
    back = left.inverse()
    pulled = {j: apply_word(cs, back, c) for j, c in dets.items()}
    pairs = []
    for j, c in dets.items():
        before = imin(s, a, c)
        after = imin(s, image, pulled[j])
        if before != after:
            pairs.append(DetectorPair(name, j, before, after))
    return Witness(name, a, h, image, dets, pulled, tuple(pairs))


def moves_arc(cs: NamedCurveSet, w: TwistWord, a: Curve) -> bool:
    """Does ``w`` move the arc ``a`` (rel boundary)? Evaluated from both ends of the word."""
    _, left, right = _halves(w)
    s = cs.surface
    return not same_arc(s, apply_word(cs, right, a), apply_word(cs, left.inverse(), a))


def is_trivial_word(cs: NamedCurveSet, w: TwistWord) -> TrivialityVerdict:
    """Decide whether ``w`` is the identity rel boundary by its action on filling arcs.

    A mapping class fixing a filling arc system up to isotopy rel boundary
    is trivial. Writing ``w = left * right``, an arc is fixed exactly when
    ``right(arc)`` and ``left^-1(arc)`` agree, which keeps the curves short.
    When an arc moves, its push-offs and a collar detector give intersection
    numbers (0 or 1 before) that change.
    """
    s = cs.surface
    check_word(cs, w)
    arcs = _arcs(s)
    for k, (name, a) in enumerate(arcs):
        if not moves_arc(cs, w, a):
            continue
        others = [c for _, c in arcs]
        wit = build_witness(cs, w, name, a, others)
        if not wit.pairs:
            raise AssertionError(f"arc {name} moved but no detector changed (internal error)")
        return TrivialityVerdict(False, w, wit, k + 1)
    return TrivialityVerdict(True, w, None, len(arcs))


def verify_witness(cs: NamedCurveSet, v: TrivialityVerdict) -> bool:
    """Recheck a nontrivial verdict using intersection numbers only."""
    if v.trivial or v.witness is None or not v.witness.pairs:
        return False
    s = cs.surface
    wit = v.witness
    left = TwistWord(v.word.factors[:wit.split])
    right = TwistWord(v.word.factors[wit.split:])
    image = apply_word(cs, right, wit.curve)
    for p in wit.pairs:
        c = wit.detectors[p.j]
        pulled = apply_word(cs, left.inverse(), c)
        if p.before not in (0, 1) or p.before == p.after:
            return False
        if imin(s, wit.curve, c) != p.before or imin(s, image, pulled) != p.after:
            return False
    return True


def words_equal(cs: NamedCurveSet, w1: TwistWord, w2: TwistWord) -> bool:
    return is_trivial_word(cs, w1 * w2.inverse()).trivial


def acts_equally(cs: NamedCurveSet, w1: TwistWord, w2: TwistWord, probes: Iterable[Curve] | None = None) -> bool:
    """Do two words move the given curves (default: filling arcs) identically?"""
    s = cs.surface
    probes = list(probes) if probes is not None else [c for _, c in _arcs(s)]
    for c in probes:
        x, y = apply_word(cs, w1, c), apply_word(cs, w2, c)
        if c.is_arc:
            if not same_arc(s, x, y):
                return False
        elif not is_isotopic(s, x, y):
            return False
    return True
