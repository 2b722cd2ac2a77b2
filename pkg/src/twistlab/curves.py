"""Curves and arcs on a :class:`CombSurface`.

A curve is stored by its *dart path*: the sequence of interior edges it
crosses, each read as a dart (signed edge id, "leave the face holding this
side"). Closed curves are cyclic dart sequences; arcs carry a boundary point
at each end. Reduced paths (no immediate backtracking) are canonical
homotopy representatives, so homotopy questions are answered on the paths
and geometric questions (minimal intersection, embedding) by comparing how
strands diverge inside faces.

Inside a face every place a curve can enter or leave is a *slot*, keyed by
``(side position, ccw parameter)``. Darts use parameter 0; boundary points
use their counter-clockwise position along the side. Slots are compared in
the cyclic counter-clockwise order of the face boundary.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Mapping, Sequence

from .cells import CombSurface


class CurveError(ValueError):
    """Rejected curve input: invalid path, wrong curve type, shared endpoints."""


# -- values ------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class BoundaryPoint:
    """A point on boundary edge ``edge`` at parameter ``t`` along the edge direction."""

    edge: int
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        if not 0 < self.t < 1:
            raise CurveError(f"boundary parameter {self.t} not in (0, 1)")

    def to_json(self) -> dict:
        return {"edge": self.edge, "t": str(self.t)}

    @classmethod
    def from_json(cls, data) -> "BoundaryPoint":
        return cls(int(data["edge"]), Fraction(str(data["t"])))


@dataclass(frozen=True)
class Curve:
    """A closed curve (``start is None``) or an arc, as a dart path."""

    darts: tuple[int, ...]
    start: BoundaryPoint | None = None
    end: BoundaryPoint | None = None

    def __post_init__(self):
        object.__setattr__(self, "darts", tuple(int(d) for d in self.darts))
        if (self.start is None) != (self.end is None):
            raise CurveError("an arc needs both endpoints")

    @property
    def is_arc(self) -> bool:
        return self.start is not None

    @property
    def kind(self) -> str:
        return "arc" if self.is_arc else "closed"

    def reversed(self) -> "Curve":
        return Curve(tuple(-d for d in reversed(self.darts)), self.end, self.start)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "darts": list(self.darts)}
        if self.is_arc:
            out["start"] = self.start.to_json()
            out["end"] = self.end.to_json()
        return out

    @classmethod
    def from_json(cls, data) -> "Curve":
        if data.get("kind", "closed") == "arc":
            return cls(tuple(data["darts"]), BoundaryPoint.from_json(data["start"]),
                       BoundaryPoint.from_json(data["end"]))
        return cls(tuple(data["darts"]))


def closed(*darts: int) -> Curve:
    return Curve(tuple(darts))


# -- slots and visits --------------------------------------------------------

Slot = tuple  # (pos, Fraction)
Visit = tuple  # (face, in_slot, out_slot)


def _dart_slot(s: CombSurface, dart: int) -> tuple[int, Slot]:
    side = s.side_of(dart)
    return side.face, (side.pos, Fraction(0))


def _point_slot(s: CombSurface, p: BoundaryPoint) -> tuple[int, Slot]:
    side = s.boundary_side(p.edge)
    u = p.t if side.sign > 0 else 1 - p.t
    return side.face, (side.pos, u)


def ccw_between(a, x, b) -> bool:
    """Is ``x`` strictly inside the counter-clockwise interval from ``a`` to ``b``?"""
    if a < b:
        return a < x < b
    return x > a or x < b


def validate(s: CombSurface, c: Curve) -> None:
    n = len(c.darts)
    for d in c.darts:
        if not s.is_interior(d):
            raise CurveError(f"dart {d} is not an interior edge side")
    for t in range(n - 1 if c.is_arc else n):
        d, e = c.darts[t], c.darts[(t + 1) % n]
        if s.face_of(-d) != s.face_of(e):
            raise CurveError(f"darts {d} and {e} are not consecutive in a face")
    if c.is_arc:
        for p in (c.start, c.end):
            if s.is_interior(p.edge) or p.edge not in s.edges:
                raise CurveError(f"endpoint edge {p.edge} is not a boundary edge")
        if c.start == c.end:
            raise CurveError("arc endpoints coincide")
        f0 = _point_slot(s, c.start)[0]
        f1 = _point_slot(s, c.end)[0]
        first = s.face_of(c.darts[0]) if n else f1
        last = s.face_of(-c.darts[-1]) if n else f0
        if f0 != first or f1 != last:
            raise CurveError("arc endpoints do not lie in the faces its path starts/ends in")


def visits(s: CombSurface, c: Curve) -> list[Visit]:
    """Face visits of ``c`` in order, as ``(face, in_slot, out_slot)``."""
    d = c.darts
    n = len(d)
    if not c.is_arc:
        out = []
        for t in range(n):
            f, o = _dart_slot(s, d[t])
            out.append((f, _dart_slot(s, -d[t - 1])[1], o))
        return out
    f, i = _point_slot(s, c.start)
    out = []
    ends = [(f, i)] + [_dart_slot(s, -x) for x in d]
    exits = [_dart_slot(s, x)[1] for x in d] + [_point_slot(s, c.end)[1]]
    for (face, slot_in), slot_out in zip(ends, exits):
        out.append((face, slot_in, slot_out))
    return out


# -- reduction ---------------------------------------------------------------


def reduce(c: Curve, rng: random.Random | None = None) -> Curve:
    """Remove backtracking (cyclically for closed curves).

    With ``rng`` the cancellations are performed in a random order; the
    result is the same (free reduction is confluent), which the tests use.
    """
    if rng is not None:
        return _reduce_random(c, rng)
    stack: list[int] = []
    for x in c.darts:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    if not c.is_arc:
        i, j = 0, len(stack) - 1
        while i < j and stack[i] == -stack[j]:
            i += 1
            j -= 1
        stack = stack[i:j + 1] if i <= j else []
    return Curve(tuple(stack), c.start, c.end)


def _reduce_random(c: Curve, rng: random.Random) -> Curve:
    word = list(c.darts)
    cyc = not c.is_arc
    while True:
        n = len(word)
        spots = [i for i in range(n if cyc else n - 1)
                 if n > 1 and word[i] == -word[(i + 1) % n]]
        if not spots:
            return Curve(tuple(word), c.start, c.end)
        i = rng.choice(spots)
        j = (i + 1) % n
        for k in sorted((i, j), reverse=True):
            del word[k]


def is_reduced(c: Curve) -> bool:
    return reduce(c).darts == c.darts


def is_null(c: Curve) -> bool:
    """A closed curve whose reduced path is empty bounds a disc."""
    return not c.is_arc and not reduce(c).darts


def primitive_root(c: Curve) -> tuple[Curve, int]:
    """``(p, k)`` with ``c`` freely homotopic to ``p`` traversed ``k`` times."""
    c = reduce(c)
    d = c.darts
    n = len(d)
    if c.is_arc or n == 0:
        return c, 1
    for p in range(1, n):
        if n % p == 0 and d[p:] + d[:p] == d:
            return Curve(d[:p]), n // p
    return c, 1


def is_primitive(c: Curve) -> bool:
    c = reduce(c)
    return bool(c.darts) and primitive_root(c)[1] == 1


# -- intersection counting ---------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    """One essential intersection of ``a`` with ``b`` (or ``b`` reversed).

    ``s``/``t`` index the visits where the two paths come together, ``length``
    the number of shared darts and ``sign`` is +1 when ``a`` passes from the
    right of ``b`` to its left.
    """

    s: int
    t: int
    length: int
    reversed: bool
    sign: int


def _at(vs: Sequence[Visit], i: int, cyclic: bool) -> Visit | None:
    if cyclic:
        return vs[i % len(vs)]
    return vs[i] if 0 <= i < len(vs) else None


def _flip(vs: Sequence[Visit]) -> list[Visit]:
    return [(f, o, i) for (f, i, o) in reversed(vs)]


def _segments(A, ca, B, cb, same_direction: bool, out: list, flip_index: int):
    by_face: dict[int, list[int]] = {}
    for t, v in enumerate(B):
        by_face.setdefault(v[0], []).append(t)
    cap = len(A) + len(B) + 2
    for s, va in enumerate(A):
        for t in by_face.get(va[0], ()):
            vb = B[t]
            if va[1] == vb[1]:
                continue
            L = 0
            parallel = False
            while True:
                x, y = _at(A, s + L, ca), _at(B, t + L, cb)
                if x[2] != y[2]:
                    break
                L += 1
                if L > cap:
                    parallel = True
                    break
                if _at(A, s + L, ca) is None or _at(B, t + L, cb) is None:
                    parallel = True
                    break
            if parallel:
                continue
            if L == 0:
                if not same_direction:
                    continue
                if len({va[1], va[2], vb[1], vb[2]}) < 4:
                    continue
                r1 = ccw_between(vb[1], va[1], vb[2])
                r2 = ccw_between(vb[1], va[2], vb[2])
            else:
                ea, eb = _at(A, s + L, ca), _at(B, t + L, cb)
                r1 = ccw_between(vb[1], va[1], vb[2])
                r2 = ccw_between(eb[1], ea[2], eb[2])
            if r1 != r2:
                tt = t if same_direction else flip_index - t
                # against the reversed b, its right and left swap
                sign = (1 if r1 else -1) * (1 if same_direction else -1)
                out.append(Crossing(s, tt, L, not same_direction, sign))


def crossings(s: CombSurface, a: Curve, b: Curve) -> list[Crossing]:
    """Essential intersections of two reduced curves.

    Each intersection point of a minimal-position pair corresponds to one
    maximal common segment of lifts whose two ends leave on opposite sides;
    for a segment with ``b`` reversed, ``t`` is the visit index of ``b`` in
    its own orientation where the segment (read along ``a``) begins.
    """
    A = visits(s, a)
    B = visits(s, b)
    if not A or not B:
        return []
    ca, cb = not a.is_arc, not b.is_arc
    out: list[Crossing] = []
    _segments(A, ca, B, cb, True, out, 0)
    _segments(A, ca, _flip(B), cb, False, out, len(B) - 1)
    return out


def _prepare(s: CombSurface, c: Curve) -> Curve:
    validate(s, c)
    return reduce(c)


def imin(s: CombSurface, a: Curve, b: Curve) -> int:
    """Minimal geometric intersection number of two curves/arcs.

    Arcs are taken up to homotopy rel endpoints; two arcs must not share an
    endpoint. Null-homotopic closed curves meet nothing.
    """
    a, b = _prepare(s, a), _prepare(s, b)
    if a.is_arc and b.is_arc and {a.start, a.end} & {b.start, b.end}:
        raise CurveError("arcs share an endpoint")
    if is_null(a) or is_null(b):
        return 0
    return len(crossings(s, a, b))


def self_intersection(s: CombSurface, c: Curve) -> int:
    """Minimal number of self-crossings; a ``k``-fold power of ``p`` has ``k²·i(p) + k - 1``."""
    c = _prepare(s, c)
    if is_null(c):
        return 0
    p, k = primitive_root(c)
    return k * k * (len(crossings(s, p, p)) // 2) + k - 1


def is_simple(s: CombSurface, c: Curve) -> bool:
    c = _prepare(s, c)
    if is_null(c):
        return True
    if not c.is_arc and not is_primitive(c):
        return False
    return self_intersection(s, c) == 0


def algebraic_intersection(s: CombSurface, a: Curve, b: Curve) -> int:
    """Signed count of the essential crossings (+1 when ``a`` crosses ``b`` right to left)."""
    a, b = _prepare(s, a), _prepare(s, b)
    if is_null(a) or is_null(b):
        return 0
    return sum(x.sign for x in crossings(s, a, b))


# -- homotopy words ----------------------------------------------------------


@dataclass(frozen=True)
class ReducedWord:
    """Cut-system word of a curve: the signed non-tree edges it crosses.

    For closed curves the word is cyclically reduced and put in a canonical
    rotation (least among rotations of the word and of its inverse), so free
    homotopy classes of unoriented curves have one word. Arcs keep both
    endpoints and are canonicalised over the two orientations.
    """

    letters: tuple[int, ...]
    kind: str
    anchors: tuple[BoundaryPoint, BoundaryPoint] | None = None

    def __len__(self) -> int:
        return len(self.letters)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "letters": list(self.letters)}
        if self.anchors:
            out["anchors"] = [p.to_json() for p in self.anchors]
        return out


def _free_reduce(word: Iterable[int], cyclic: bool) -> tuple[int, ...]:
    stack: list[int] = []
    for x in word:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    if cyclic:
        i, j = 0, len(stack) - 1
        while i < j and stack[i] == -stack[j]:
            i += 1
            j -= 1
        stack = stack[i:j + 1] if i <= j else []
    return tuple(stack)


def _min_rotation(w: tuple[int, ...]) -> tuple[int, ...]:
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def cut_letters(s: CombSurface, c: Curve) -> tuple[int, ...]:
    tree = s.spanning_tree
    return tuple(d for d in c.darts if abs(d) not in tree)


def homotopy_word(s: CombSurface, c: Curve, oriented: bool = False) -> ReducedWord:
    c = _prepare(s, c)
    if not c.is_arc:
        w = _free_reduce(cut_letters(s, c), True)
        cands = [_min_rotation(w)]
        if not oriented:
            cands.append(_min_rotation(tuple(-x for x in reversed(w))))
        return ReducedWord(min(cands), "closed")
    w = _free_reduce(cut_letters(s, c), False)
    fwd = (w, (c.start, c.end))
    if oriented:
        return ReducedWord(w, "arc", (c.start, c.end))
    bwd = (tuple(-x for x in reversed(w)), (c.end, c.start))
    letters, anchors = min(fwd, bwd, key=lambda p: (p[1], p[0]))
    return ReducedWord(letters, "arc", anchors)


def is_isotopic(s: CombSurface, a: Curve, b: Curve) -> bool:
    """Isotopy of simple curves (rel boundary for arcs), decided on homotopy words."""
    if a.is_arc != b.is_arc:
        raise CurveError("cannot compare an arc with a closed curve")
    return homotopy_word(s, a) == homotopy_word(s, b)


def same_arc(s: CombSurface, a: Curve, b: Curve) -> bool:
    """Oriented comparison rel endpoints, used when arcs keep their direction."""
    return homotopy_word(s, a, oriented=True) == homotopy_word(s, b, oriented=True)


# -- embedded diagrams -------------------------------------------------------

Chord = tuple  # ((side, point), (side, point))


@dataclass(frozen=True, eq=False)
class CurveDiagram:
    """An explicit embedded multicurve.

    ``layout`` gives, for every edge, the total order of crossing points along
    the edge direction; diagrams produced by one joint embedding share it so
    their relative positions are known. ``points`` are the points owned by
    this diagram, ``chords`` its strands inside each face and ``endpoints``
    the boundary positions of arc ends.
    """

    surface: CombSurface
    layout: Mapping[int, tuple[int, ...]]
    points: frozenset
    chords: Mapping[int, tuple[Chord, ...]]
    endpoints: Mapping[int, BoundaryPoint] = field(default_factory=dict)

    @property
    def edges(self) -> dict[int, tuple[int, ...]]:
        out = {}
        for k, pts in self.layout.items():
            mine = tuple(p for p in pts if p in self.points)
            if mine:
                out[k] = mine
        return out

    def _key(self, face: int, side: int, pt: int) -> Slot:
        pos = self.surface.side_of(side).pos
        line = self.layout[abs(side)]
        u = Fraction(line.index(pt) + 1, len(line) + 1)
        return (pos, u if side > 0 else 1 - u)

    def crossing_chords(self) -> list[tuple[int, Chord, Chord]]:
        bad = []
        for f, cs in self.chords.items():
            bad.extend((f, x, y) for x, y in _interleaved(self, f, cs, cs))
        return bad

    def is_valid(self) -> bool:
        return not self.crossing_chords()

    @property
    def kind(self) -> str:
        kinds = {c.kind for c in self.trace()}
        if len(kinds) == 1:
            return kinds.pop()
        return "mixed" if kinds else "closed"

    def trace(self) -> list[Curve]:
        return _trace(self)

    @property
    def num_components(self) -> int:
        return len(self.trace())

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "edges": {str(k): list(v) for k, v in sorted(self.edges.items())},
            "faces": {
                str(f): [[list(a), list(b)] for a, b in cs]
                for f, cs in sorted(self.chords.items()) if cs
            },
            "endpoints": [
                {"point": p, **bp.to_json()} for p, bp in sorted(self.endpoints.items())
            ],
        }

    @classmethod
    def from_json(cls, surface: CombSurface, data: dict) -> "CurveDiagram":
        layout = {int(k): tuple(int(p) for p in v) for k, v in data.get("edges", {}).items()}
        chords = {
            int(f): tuple((tuple(a), tuple(b)) for a, b in cs)
            for f, cs in data.get("faces", {}).items()
        }
        ends = {int(e["point"]): BoundaryPoint.from_json(e) for e in data.get("endpoints", [])}
        pts = frozenset(p for v in layout.values() for p in v)
        d = cls(surface, layout, pts, chords, ends)
        bad = d.crossing_chords()
        if bad:
            raise CurveError(f"face {bad[0][0]} has crossing chords")
        d.trace()
        return d


def _interleaved(d: CurveDiagram, face: int, xs, ys):
    keyed_y = [(d._key(face, *a), d._key(face, *b), (a, b)) for a, b in ys]
    for a, b in xs:
        ka, kb = d._key(face, *a), d._key(face, *b)
        for kc, kd, y in keyed_y:
            if y == (a, b) or y == (b, a):
                continue
            if ccw_between(ka, kc, kb) != ccw_between(ka, kd, kb):
                if len({ka, kb, kc, kd}) == 4:
                    yield (a, b), y


def crossing_count(d1: CurveDiagram, d2: CurveDiagram) -> int:
    """Number of transverse crossings between two jointly embedded diagrams."""
    if d1.layout is not d2.layout and dict(d1.layout) != dict(d2.layout):
        raise CurveError("diagrams were not embedded jointly")
    total = 0
    for f, cs in d1.chords.items():
        other = d2.chords.get(f, ())
        if cs and other:
            total += sum(1 for _ in _interleaved(d1, f, cs, other))
    return total


def _trace(d: CurveDiagram) -> list[Curve]:
    s = d.surface
    at: dict[tuple[int, int, int], tuple[int, int]] = {}
    for f, cs in d.chords.items():
        for a, b in cs:
            for x, y in ((a, b), (b, a)):
                key = (f, x[0], x[1])
                if key in at:
                    raise CurveError(f"point {x[1]} used twice on side {x[0]}")
                at[key] = y
    used: set = set()

    def walk(f, side, pt):
        darts = []
        for _ in range(len(at) + 2):
            used.add((f, side, pt))
            nxt = at.get((f, side, pt))
            if nxt is None:
                raise CurveError(f"point {pt} has no chord in face {f}")
            used.add((f, nxt[0], nxt[1]))
            s2, q = nxt
            if not s.is_interior(s2):
                return darts, q, None
            darts.append(s2)
            g = s.face_of(-s2)
            if (g, -s2, q) in used:
                return darts, q, (g, -s2, q)
            f, side, pt = g, -s2, q
        raise CurveError("chord walk does not terminate")

    curves = []
    for p in sorted(d.endpoints):
        bp = d.endpoints[p]
        side = s.boundary_side(bp.edge)
        key = (side.face, bp.edge * side.sign, p)
        if key in used:
            continue
        darts, q, loop = walk(*key)
        if loop is not None or q not in d.endpoints:
            raise CurveError(f"arc from point {p} does not end on the boundary")
        curves.append(Curve(tuple(darts), bp, d.endpoints[q]))
    for key in sorted(at):
        if key in used:
            continue
        f, side, pt = key
        if not s.is_interior(side):
            raise CurveError(f"boundary point {pt} is not a declared endpoint")
        # start just after crossing into f through `side`
        darts, q, loop = walk(f, side, pt)
        if loop != key:
            raise CurveError("closed component does not close up")
        darts = darts[-1:] + darts[:-1]
        curves.append(Curve(tuple(darts)))
    return curves


# strand comparison on an edge


def _forward(X, Y):
    (vx, cx, i), (vy, cy, j) = X[1], Y[1]
    for step in range(1, len(vx) + len(vy) + 2):
        a, b = _at(vx, i + step, cx), _at(vy, j + step, cy)
        if a is None or b is None:
            return None
        if a[2] != b[2]:
            return (1 if ccw_between(a[1], b[2], a[2]) else -1), step
    return None


def _backward(X, Y):
    (vx, cx, i), (vy, cy, j) = X[1], Y[1]
    for step in range(len(vx) + len(vy) + 2):
        a, b = _at(vx, i - step, cx), _at(vy, j - step, cy)
        if a is None or b is None:
            return None
        if a[1] != b[1]:
            return (1 if ccw_between(a[1], b[1], a[2]) else -1), step
    return None


def _cmp_strands(X, Y) -> int:
    """+1 when ``Y`` lies to the right of ``X`` (earlier along the edge).

    Strands are ``((curve, dart index), (visits, cyclic, position), sign)``,
    all read in the edge direction. Two strands that share a stretch of
    faces and leave it on opposite sides cross once, in the middle face of
    the stretch, as geodesics would; when the middle is this edge the
    crossing goes in the face before it. Placing every crossing by the same
    geometric rule keeps the orders on all edges mutually consistent.
    """
    f, b = _forward(X, Y), _backward(X, Y)
    if f is None and b is None:
        # parallel all the way: the lower-indexed curve stays on its own right
        if X[0][0] == Y[0][0]:
            return (X[0] > Y[0]) - (X[0] < Y[0])
        lo = X if X[0][0] < Y[0][0] else Y
        first = -1 if lo[2] > 0 else 1
        return first if lo is X else -first
    if f is None or b is None:
        return (f or b)[0]
    if f[0] == b[0]:
        return f[0]
    # crossing still ahead when the stretch extends further forward
    return b[0] if f[1] - b[1] > 1 else f[0]


@dataclass
class Layout:
    """Joint positions of several reduced curves on the edges of a surface.

    ``pid[(i, t)]`` is the point where curve ``i`` crosses its ``t``-th dart;
    ``pid[(i, "s")]``/``pid[(i, "e")]`` are arc endpoints; ``line[k]`` lists the
    points on edge ``k`` in edge-direction order.
    """

    surface: CombSurface
    curves: list
    pid: dict
    line: dict

    def key(self, side: int, pt: int) -> Slot:
        pos = self.surface.side_of(side).pos
        row = self.line[abs(side)]
        u = Fraction(self._index[pt] + 1, len(row) + 1)
        return (pos, u if side > 0 else 1 - u)

    def __post_init__(self):
        self._index = {p: i for row in self.line.values() for i, p in enumerate(row)}

    def chords(self, i: int) -> list[tuple[int, Chord]]:
        """Strands of curve ``i`` as ``(face, ((side, pt), (side, pt)))`` in visit order."""
        s = self.surface
        c = self.curves[i]
        pid = self.pid
        out = []
        n = len(c.darts)
        if c.is_arc:
            sb = s.boundary_side(c.start.edge)
            eb = s.boundary_side(c.end.edge)
            prev = (c.start.edge * sb.sign, pid[(i, "s")])
            face = sb.face
            for t, d in enumerate(c.darts):
                out.append((face, (prev, (d, pid[(i, t)]))))
                face = s.face_of(-d)
                prev = (-d, pid[(i, t)])
            out.append((face, (prev, (c.end.edge * eb.sign, pid[(i, "e")]))))
        else:
            for t, d in enumerate(c.darts):
                out.append((s.face_of(d), ((-c.darts[t - 1], pid[(i, (t - 1) % n)]), (d, pid[(i, t)]))))
        return out


def joint_layout(s: CombSurface, curves: Sequence[Curve]) -> Layout:
    """Order all strands of reduced, non-null ``curves`` jointly on every edge.

    Parallel strands are ordered by where their continuations diverge (then
    where their pasts diverge), which puts every pair of curves in minimal
    position and embeds each simple curve.
    """
    strands: dict[int, list] = {}
    ends: dict[int, list] = {}
    for idx, c in enumerate(curves):
        cyc = not c.is_arc
        n = len(c.darts)
        fv = visits(s, c)
        bv = visits(s, c.reversed())
        for t, d in enumerate(c.darts):
            if d > 0:
                strands.setdefault(d, []).append(((idx, t), (fv, cyc, t), 1))
            else:
                strands.setdefault(-d, []).append(((idx, t), (bv, cyc, n - 1 - t), -1))
        if c.is_arc:
            ends.setdefault(c.start.edge, []).append((c.start.t, idx, "s"))
            ends.setdefault(c.end.edge, []).append((c.end.t, idx, "e"))
    pid: dict = {}
    line: dict[int, tuple[int, ...]] = {}
    counter = 0
    for k in sorted(strands):
        order = sorted(strands[k], key=cmp_to_key(_cmp_strands))
        row = []
        for tag, _, _ in order:
            pid[tag] = counter
            row.append(counter)
            counter += 1
        line[k] = tuple(row)
    for k in sorted(ends):
        row = []
        got = sorted(ends[k])
        ts = [t for t, _, _ in got]
        if len(set(ts)) != len(ts):
            raise CurveError(f"two arc endpoints coincide on boundary edge {k}")
        for _, idx, which in got:
            pid[(idx, which)] = counter
            row.append(counter)
            counter += 1
        line[k] = tuple(row)
    return Layout(s, list(curves), pid, line)


def embed(s: CombSurface, groups: Sequence[Sequence[Curve]]) -> list[CurveDiagram]:
    """Embed several groups of curves jointly, one diagram per group.

    Curves are reduced first; null-homotopic closed curves are dropped. The
    diagrams realise exactly :func:`imin` crossings between distinct curves,
    and a simple curve gets an embedded diagram.
    """
    owner = []
    flat = []
    for g, grp in enumerate(groups):
        for c in grp:
            c = _prepare(s, c)
            if is_null(c):
                continue
            owner.append(g)
            flat.append(c)
    lay = joint_layout(s, flat)
    diagrams = []
    for g in range(len(groups)):
        chords: dict[int, list] = {}
        pts: set = set()
        eps: dict = {}
        for idx, c in enumerate(flat):
            if owner[idx] != g:
                continue
            if c.is_arc:
                eps[lay.pid[(idx, "s")]] = c.start
                eps[lay.pid[(idx, "e")]] = c.end
            for face, ch in lay.chords(idx):
                chords.setdefault(face, []).append(ch)
                pts.update((ch[0][1], ch[1][1]))
        diagrams.append(
            CurveDiagram(s, lay.line, frozenset(pts), {f: tuple(v) for f, v in chords.items()}, eps)
        )
    return diagrams


def diagram(s: CombSurface, *curves: Curve) -> CurveDiagram:
    """Embed one multicurve as a single diagram."""
    return embed(s, [curves])[0]


def tighten(d: CurveDiagram, against: CurveDiagram | None = None, rng: random.Random | None = None):
    """Put ``d`` (and ``against``) in minimal position.

    ``rng`` randomises the order in which cancellations are performed; the
    outcome does not depend on it.

    Monogons and bigons with the cell structure disappear when paths are
    reduced; bigons between components disappear in the joint re-embedding.
    Returns a diagram, or a pair when ``against`` is given.
    """
    bad = d.crossing_chords()
    if bad:
        raise CurveError(f"face {bad[0][0]} has crossing chords")
    cs = [reduce(c, rng) for c in d.trace()]
    if against is None:
        return embed(d.surface, [cs])[0]
    if against.surface != d.surface:
        raise CurveError("diagrams live on different surfaces")
    if against.crossing_chords():
        raise CurveError("companion diagram has crossing chords")
    other = [reduce(c, rng) for c in against.trace()]
    out = embed(d.surface, [cs, other])
    return out[0], out[1]


def total_points(d: CurveDiagram) -> int:
    """Crossings of ``d`` with the interior edges (its size against the cell structure)."""
    return sum(len(v) for k, v in d.edges.items() if d.surface.is_interior(k))


def insert_bigon(d: CurveDiagram, point: int, rng: random.Random | None = None) -> CurveDiagram:
    """Push a strand of ``d`` back and forth across its edge at ``point``.

    The crossing point is replaced by three consecutive points; the middle
    strand makes a U-turn on the far side. The result is isotopic to ``d``
    and has two more edge crossings, forming a bigon with the edge.
    """
    s = d.surface
    k = next((e for e, v in d.layout.items() if point in v), None)
    if k is None or not s.is_interior(k):
        raise CurveError(f"point {point} is not on an interior edge")
    fresh = max((p for v in d.layout.values() for p in v), default=-1) + 1
    p1, p2, p3 = fresh, fresh + 1, fresh + 2
    line = list(d.layout[k])
    i = line.index(point)
    line[i:i + 1] = [p1, p2, p3]
    layout = dict(d.layout)
    layout[k] = tuple(line)
    if rng is None:
        near = +k
    else:
        near = rng.choice((k, -k))
    far = -near
    chords = {f: list(cs) for f, cs in d.chords.items()}
    fn, ff = s.face_of(near), s.face_of(far)
    # on the near side the strand end at `point` becomes p1, the far end p3
    chords[fn] = [
        tuple(((x[0], p1) if (x[0] == near and x[1] == point) else x) for x in ch)
        for ch in chords[fn]
    ]
    chords[ff] = [
        tuple(((x[0], p3) if (x[0] == far and x[1] == point) else x) for x in ch)
        for ch in chords[ff]
    ]
    chords[ff].append(((far, p1), (far, p2)))
    chords[fn].append(((near, p2), (near, p3)))
    pts = (d.points - {point}) | {p1, p2, p3}
    return CurveDiagram(s, layout, frozenset(pts), {f: tuple(v) for f, v in chords.items()},
                        dict(d.endpoints))


# -- named collections ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NamedCurveSet:
    """Named curves and arcs on one surface.

    ``origins`` optionally records how a curve was produced, as
    ``(word text, target name)``.
    """

    surface: CombSurface
    curves: Mapping[str, Curve]
    origins: Mapping[str, tuple[str, str]] = field(default_factory=dict)

    def __post_init__(self):
        fixed = {}
        for name, c in self.curves.items():
            if not isinstance(name, str) or not name:
                raise CurveError(f"bad curve name {name!r}")
            validate(self.surface, c)
            fixed[name] = c
        object.__setattr__(self, "curves", fixed)
        object.__setattr__(self, "origins", dict(self.origins))

    def __getitem__(self, name: str) -> Curve:
        try:
            return self.curves[name]
        except KeyError:
            raise CurveError(f"unknown curve name {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self.curves

    def __iter__(self):
        return iter(self.curves)

    def __len__(self) -> int:
        return len(self.curves)

    @property
    def names(self) -> list[str]:
        return list(self.curves)

    def with_curve(self, name: str, c: Curve, origin: tuple[str, str] | None = None) -> "NamedCurveSet":
        if name in self.curves:
            raise CurveError(f"duplicate curve name {name!r}")
        curves = dict(self.curves)
        curves[name] = c
        origins = dict(self.origins)
        if origin is not None:
            origins[name] = origin
        return NamedCurveSet(self.surface, curves, origins)

    def subset(self, names: Sequence[str]) -> "NamedCurveSet":
        return NamedCurveSet(self.surface, {n: self[n] for n in names},
                             {n: o for n, o in self.origins.items() if n in names})

    def diagram(self, name: str) -> CurveDiagram:
        return diagram(self.surface, self[name])

    def to_json(self) -> dict:
        return {
            "surface": self.surface.to_json(),
            "curves": {n: c.to_json() for n, c in self.curves.items()},
        }
