"""Symbolic Lefschetz stabilisations and the transfer of twist-word verdicts.

Nothing here builds a higher-dimensional manifold. A one-stabilisation is
recorded by its doubled vanishing-cycle sequence; critical values are taken
to sit at the 2k-th roots of unity, a convention with no combinatorial
content. Verdicts about a twist word on the surface are carried upward by
two transfer rules:

* a word that is nontrivial on the surface stays nontrivial, both as a
  compactly supported symplectic mapping class and as an autoequivalence of
  the Fukaya category, in every stabilisation;
* a word that is trivial on the surface may or may not stay trivial
  upstairs (the converse is known to fail).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .cells import CombSurface
from .curves import Curve, NamedCurveSet, cut_letters, imin, is_simple, reduce
from .groups import FiniteGroup, FoldedGraph
from .surface import PlumbingGraph, attach_handle
from .twists import (
    TrivialityVerdict,
    TwistWord,
    apply_word,
    is_trivial_word,
)


class StabError(ValueError):
    """Invalid stabilisation data."""


# -- permutations ---------------------------------------------------------------


def parse_permutation(text: str | Sequence[int], k: int) -> tuple[int, ...]:
    """Accept images ``[2, 1, 3]`` or cycle notation ``"(1 2)"``; return 1-based images."""
    if isinstance(text, str):
        t = text.strip()
        if t.lower() in ("", "id", "()"):
            return tuple(range(1, k + 1))
        if t.startswith("("):
            img = list(range(1, k + 1))
            for cyc in t.replace(")", " ").split("("):
                pts = [int(x) for x in cyc.replace(",", " ").split()]
                for i, a in enumerate(pts):
                    if not 1 <= a <= k:
                        raise StabError(f"point {a} outside 1..{k}")
                    img[a - 1] = pts[(i + 1) % len(pts)]
            return check_permutation(img, k)
        return check_permutation([int(x) for x in t.replace(",", " ").split()], k)
    return check_permutation(list(text), k)


def check_permutation(img: Sequence[int], k: int) -> tuple[int, ...]:
    img = tuple(int(x) for x in img)
    if sorted(img) != list(range(1, k + 1)):
        raise StabError(f"sigma {list(img)} is not a bijection of 1..{k}")
    return img


def cycle_notation(img: Sequence[int]) -> str:
    seen = set()
    parts = []
    for i in range(1, len(img) + 1):
        if i in seen or img[i - 1] == i:
            seen.add(i)
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = img[j - 1]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "Id"


# -- records -----------------------------------------------------------------------


@dataclass(frozen=True)
class StabRecord:
    """One Lefschetz one-stabilisation.

    ``sequence`` is the vanishing-cycle list ``(v_σ(1), …, v_σ(k))`` written
    twice; ``labels[i]`` is the matching sphere joining critical points
    ``i+1`` and ``i+1+k``.
    """

    fibre: object
    curves: tuple[str, ...]
    sigma: tuple[int, ...]
    sequence: tuple[str, ...]
    labels: tuple[tuple[str, int, int], ...]
    convention: str = "critical values at the 2k-th roots of unity"

    def __post_init__(self):
        k = len(self.curves)
        check_permutation(self.sigma, k)
        half = tuple(self.curves[j - 1] for j in self.sigma)
        if self.sequence != half + half:
            raise StabError("vanishing sequence is not the doubled sigma-ordered list")
        for i, (lab, a, b) in enumerate(self.labels):
            if (a, b) != (i + 1, i + 1 + k) or lab != f"V_{self.sigma[i]}":
                raise StabError("matching labels do not pair critical points i and i+k")

    @property
    def k(self) -> int:
        return len(self.curves)

    def to_json(self) -> dict:
        return {
            "sigma": list(self.sigma),
            "sequence": list(self.sequence),
            "labels": [{"label": lab, "critical_points": [a, b]} for lab, a, b in self.labels],
            "convention": self.convention,
        }


def one_stabilise(fibre, curves: Sequence[str], sigma: Sequence[int] | str | None = None,
                  curve_set: NamedCurveSet | None = None) -> StabRecord:
    """Record the one-stabilisation of ``fibre`` along the listed curves (repeats allowed)."""
    curves = tuple(curves)
    k = len(curves)
    if k == 0:
        raise StabError("need at least one curve")
    sig = parse_permutation(sigma if sigma is not None else "id", k)
    cs = curve_set if curve_set is not None else (fibre if isinstance(fibre, NamedCurveSet) else None)
    if cs is not None:
        for name in curves:
            c = cs[name]
            if c.is_arc:
                raise StabError(f"{name} is an arc; vanishing cycles are closed curves")
            if not is_simple(cs.surface, c):
                raise StabError(f"{name} is not a simple closed curve")
    half = tuple(curves[j - 1] for j in sig)
    labels = tuple((f"V_{sig[i]}", i + 1, i + 1 + k) for i in range(k))
    return StabRecord(fibre, curves, sig, half + half, labels)


@dataclass(frozen=True)
class StabTower:
    """Iterated stabilisations; level ``i`` is stabilised from level ``i-1``."""

    base: NamedCurveSet
    records: tuple[StabRecord, ...] = ()

    def __post_init__(self):
        prev = self.base
        for r in self.records:
            if r.fibre is not prev:
                raise StabError("each record must stabilise the previous level")
            prev = r

    @property
    def height(self) -> int:
        return len(self.records)

    def stabilise(self, curves: Sequence[str] | None = None, sigma=None) -> "StabTower":
        # matching spheres keep the base names, so the same labels can be reused
        curves = tuple(curves if curves is not None else self.base.names)
        fibre = self.records[-1] if self.records else self.base
        rec = one_stabilise(fibre, curves, sigma, curve_set=self.base)
        return StabTower(self.base, self.records + (rec,))

    def to_json(self) -> dict:
        return {"height": self.height, "levels": [r.to_json() for r in self.records]}


def tower(base: NamedCurveSet, height: int, sigmas: Sequence | None = None) -> StabTower:
    t = StabTower(base)
    for i in range(height):
        t = t.stabilise(sigma=sigmas[i] if sigmas else None)
    return t


# -- cycle plumbings -------------------------------------------------------------------


def cycle_walk(g: PlumbingGraph) -> list[int]:
    """Edge indices of ``g`` in order around its unique cycle."""
    n = len(g.vertices)
    if n < 2 or len(g.edges) != n or any(g.degree(v) != 2 for v in g.vertices) or not g.is_connected():
        raise StabError("graph is not a single cycle")
    start = g.vertices[0]
    order = []
    cur, prev_edge = start, None
    for _ in range(n):
        nxt_edge = next(i for i in g.cyclic[cur] if i != prev_edge) if prev_edge is not None \
            else min(g.cyclic[cur])
        order.append(nxt_edge)
        u, v, _ = g.edges[nxt_edge]
        cur = v if u == cur else u
        prev_edge = nxt_edge
    return order


def cycle_plumbing_sigma(g: PlumbingGraph) -> tuple[int, ...]:
    """Identity if the cycle is positively oriented, else the transposition (n-1 n).

    Flipping a vertex negates both edges there; flipping vertices 2..n in turn
    makes the first n-1 edges positive, and the last edge is then the product
    of all edge signs.
    """
    walk = cycle_walk(g)
    signs = [g.edges[i][2] for i in walk]
    n = len(walk)
    for i in range(n - 1):
        if signs[i] < 0:
            signs[i] = -signs[i]
            signs[i + 1] = -signs[i + 1]
    img = list(range(1, n + 1))
    if signs[-1] < 0:
        img[n - 2], img[n - 1] = img[n - 1], img[n - 2]
    return tuple(img)


# -- equivariant sequences -----------------------------------------------------------


@dataclass(frozen=True)
class EquivariantSequence:
    sequence: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]
    disjointness_checked: bool = False

    def to_json(self) -> dict:
        return {"sequence": list(self.sequence), "blocks": [list(b) for b in self.blocks],
                "block_count": len(self.blocks),
                "block_size": len(self.blocks[0]) if self.blocks else 0,
                "disjointness_checked": self.disjointness_checked}


def equivariant_sequence(curves: Sequence[str], G: FiniteGroup,
                         curve_set: NamedCurveSet | None = None) -> EquivariantSequence:
    """Vanishing cycles ``v_i^g`` for the |G| labelled copies, and the merged blocks.

    With ``curve_set`` the copies are realised on the disjoint union of |G|
    copies of the surface and each block is checked to be pairwise disjoint.
    """
    curves = list(curves)
    blocks = tuple(tuple(f"{c}^{g}" for g in G.elements) for c in curves)
    half = tuple(x for b in blocks for x in b)
    checked = False
    if curve_set is not None:
        s = curve_set.surface
        union, maps = CombSurface.disjoint_union([s] * len(G))
        for name in curves:
            c = curve_set[name]
            copies = []
            for m in maps:
                copies.append(Curve(tuple((1 if d > 0 else -1) * m[abs(d)] for d in c.darts)))
            for x, y in itertools.combinations(copies, 2):
                if imin(union, x, y) != 0:
                    raise StabError(f"copies of {name} in the block are not disjoint")
        checked = True
    return EquivariantSequence(half + half, blocks, checked)


# -- transfer -------------------------------------------------------------------------

TAG_OBSTRUCTED = "obstructed_everywhere"
TAG_OPEN = "holds_downstairs_converse_unknown"


@dataclass(frozen=True)
class TransferVerdict:
    word: TwistWord
    downstairs: TrivialityVerdict
    tag: str
    height: int
    theorem_tags: tuple[str, ...]
    handle_check: dict | None = None
    upstairs: dict | None = None

    def __post_init__(self):
        if self.tag == TAG_OBSTRUCTED and self.downstairs.trivial:
            raise AssertionError("obstruction claimed for a word that is trivial on the surface")

    @property
    def text(self) -> str:
        if self.tag == TAG_OBSTRUCTED:
            lines = [f"word {self.word} is nontrivial on the surface;",
                     "it is nontrivial as a compactly supported symplectic mapping class of every stabilisation",
                     "and as an autoequivalence of the Fukaya category of the augmented stabilisation."]
        else:
            lines = [f"word {self.word} is trivial on the surface;",
                     "the relation need not survive stabilisation (the converse is known to fail)."]
        if self.upstairs:
            lines.append(f"upstairs Floer dimensions: {self.upstairs['pairs']}")
        return " ".join(lines)

    def to_json(self) -> dict:
        out = {
            "word": str(self.word),
            "tag": self.tag,
            "height": self.height,
            "theorem_tags": list(self.theorem_tags),
            "downstairs": self.downstairs.to_json(),
            "text": self.text,
        }
        if self.handle_check is not None:
            out["handle_check"] = self.handle_check
        if self.upstairs is not None:
            out["upstairs"] = self.upstairs
        return out


def handle_surface_check(cs: NamedCurveSet, v: TrivialityVerdict) -> dict:
    """Repeat the witness computation on the surface with a handle per detector arc.

    Each arc ``x`` in the witness becomes a closed curve ``s_x`` on the
    enlarged surface; the pairs ``(arc, detector)`` are recomputed as
    intersection numbers of closed curves and compared with the arc values.
    """
    wit = v.witness
    s = cs.surface
    arcs = {"arc": wit.curve, **wit.detectors}
    names = list(arcs)
    cur = s
    closed: dict[str, Curve] = {}
    pending = dict(arcs)
    for name in names:
        a = pending.pop(name)
        res = attach_handle(cur, a, keep=list(pending.values()))
        cur = res.surface
        closed = {k: c for k, c in closed.items()}
        closed[name] = res.curve
        pending = {k: res.move(c) for k, c in pending.items()}
    big = NamedCurveSet(cur, {**{n: cs[n] for n in v.word.names}, **{f"s_{k}": c for k, c in closed.items()}})
    left = TwistWord(v.word.factors[:wit.split])
    right = TwistWord(v.word.factors[wit.split:])
    image = apply_word(big, right, closed["arc"])
    rows = []
    agree = True
    for p in wit.pairs:
        sc = closed[p.j]
        before = imin(cur, closed["arc"], sc)
        after = imin(cur, image, apply_word(big, left.inverse(), sc))
        ok = before == p.before and after == p.after
        agree = agree and ok
        rows.append({"i": f"s_{p.i}", "j": f"s_{p.j}", "before": before, "after": after, "agrees": ok})
    index_set = [[p.i, [p.i, p.j]] for p in wit.pairs]
    return {"euler_characteristic": cur.euler_characteristic(), "pairs": rows,
            "index_set": index_set, "agrees": agree}


def transfer_verdict(cs: NamedCurveSet, w: TwistWord, t: StabTower | None = None,
                     upstairs=None) -> TransferVerdict:
    """Carry the surface verdict for ``w`` up a stabilisation tower.

    ``upstairs`` optionally supplies ``(algebra, origins)`` so that curves
    recorded as twist images of vertex objects can be compared in the
    algebraic model.
    """
    down = is_trivial_word(cs, w)
    height = t.height if t is not None else 0
    if not down.trivial:
        tag = TAG_OBSTRUCTED
        tags = ("transfer:symplectic-mapping-class", "transfer:fukaya-autoequivalence",
                "detector-pairs:zero-or-one")
        check = handle_surface_check(cs, down)
    else:
        tag = TAG_OPEN
        tags = ("caveat:converse-fails",)
        check = None
    up = None
    if upstairs is not None:
        up = _upstairs_report(cs, w, *upstairs)
    return TransferVerdict(w, down, tag, height, tags, check, up)


def _upstairs_report(cs: NamedCurveSet, w: TwistWord, algebra, origins=None) -> dict | None:
    from .zigzag import hf_dim, twist_word_complex

    origins = dict(origins or cs.origins)
    names = w.names
    if not all(n in origins for n in names):
        return None
    objs = {n: twist_word_complex(algebra, TwistWord.parse(origins[n][0]), origins[n][1]) for n in names}
    pairs = {}
    for a, b in itertools.combinations(names, 2):
        pairs[f"{a},{b}"] = hf_dim(objs[a], objs[b])
    nonzero = any(v for v in pairs.values())
    return {
        "origins": {n: {"word": origins[n][0], "target": origins[n][1]} for n in names},
        "pairs": pairs,
        "note": ("nonzero upstairs Floer dimension: the spheres cannot be displaced, so the "
                 "surface relation does not force the upstairs twists to commute") if nonzero else
                "upstairs objects are Floer-orthogonal",
    }


# -- simple connectivity augmentation ----------------------------------------------------


def fundamental_cycle(s: CombSurface, k: int) -> Curve:
    """Closed curve crossing the cut edge ``k`` once and otherwise only tree edges."""
    tree = s.spanning_tree
    start, goal = s.face_of(-k), s.face_of(k)
    prev: dict[int, tuple[int, int] | None] = {start: None}
    queue = [start]
    while queue:
        f = queue.pop(0)
        if f == goal:
            break
        for x in s.faces[f]:
            if abs(x) in tree and s.is_interior(x):
                g = s.face_of(-x)
                if g not in prev:
                    prev[g] = (f, x)
                    queue.append(g)
    path = []
    f = goal
    while prev[f] is not None:
        g, x = prev[f]
        path.append(x)
        f = g
    path.reverse()
    return reduce(Curve(tuple(path) + (k,)))


def augment_for_simple_connectivity(cs: NamedCurveSet, names: Sequence[str] | None = None) -> NamedCurveSet:
    """Add simple closed curves until the curves' classes generate the fundamental group."""
    s = cs.surface
    if not s.is_connected():
        raise StabError("surface is not connected")
    names = list(names) if names is not None else cs.names
    letters = list(s.cut_edges)
    words = [cut_letters(s, reduce(cs[n])) for n in names if not cs[n].is_arc]
    out = cs
    for k in letters:
        fg = FoldedGraph(words)
        if fg.is_whole_group(letters):
            break
        if fg.accepts([k]):
            continue
        c = fundamental_cycle(s, k)
        name = f"g{k}"
        while name in out:
            name += "'"
        out = out.with_curve(name, c)
        words.append(cut_letters(s, c))
    if not FoldedGraph(words).is_whole_group(letters):
        raise AssertionError("augmentation failed to generate the fundamental group")
    return out
