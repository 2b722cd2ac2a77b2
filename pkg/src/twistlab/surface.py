"""Surfaces from decorated plumbing graphs, handle attachment, arc systems."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cells import CombSurface, SurfaceError
from .curves import (
    BoundaryPoint,
    Curve,
    CurveError,
    NamedCurveSet,
    imin,
    is_simple,
    joint_layout,
    reduce,
    validate,
    ccw_between,
)


# -- plumbing graphs -----------------------------------------------------------


@dataclass(frozen=True)
class PlumbingGraph:
    """A graph with a cyclic order of edges at each vertex and a sign per edge.

    ``edges[i] = (u, v, orient)``; the edge-end of edge ``i`` at a vertex is
    named by ``i`` itself (self-loops are not allowed, so this is unambiguous).
    ``cyclic[v]`` lists the edges at ``v`` in their cyclic order.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]
    cyclic: Mapping[str, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(set(verts)) != len(verts):
            raise SurfaceError("duplicate vertex label", field="vertices")
        edges = []
        for i, e in enumerate(self.edges):
            if len(e) != 3:
                raise SurfaceError(f"edge {i} needs (u, v, orient)", field=f"edges[{i}]")
            u, v, o = str(e[0]), str(e[1]), e[2]
            for w in (u, v):
                if w not in verts:
                    raise SurfaceError(f"edge {i} ends at unknown vertex {w!r}", field=f"edges[{i}].ends")
            if u == v:
                raise SurfaceError(f"edge {i} is a self-loop at vertex {u!r}", field=f"edges[{i}].ends")
            if o not in (1, -1):
                raise SurfaceError(f"edge {i} orientation must be +1 or -1, got {o!r}", field=f"edges[{i}].orient")
            edges.append((u, v, int(o)))
        object.__setattr__(self, "edges", tuple(edges))
        cyc = {}
        given = dict(self.cyclic)
        for w in given:
            if w not in verts:
                raise SurfaceError(f"cyclic order given for unknown vertex {w!r}", field=f"cyclic.{w}")
        for w in verts:
            incident = sorted(i for i, (u, v, _) in enumerate(edges) if w in (u, v))
            order = tuple(int(x) for x in given.get(w, incident))
            if sorted(order) != incident:
                raise SurfaceError(
                    f"cyclic order at vertex {w!r} must list each incident edge-end exactly once "
                    f"(expected {incident}, got {list(order)})",
                    field=f"cyclic.{w}",
                )
            cyc[w] = order
        object.__setattr__(self, "cyclic", cyc)

    def degree(self, v: str) -> int:
        return len(self.cyclic[v])

    def neighbours(self, v: str) -> list[str]:
        out = []
        for i in self.cyclic[v]:
            a, b, _ = self.edges[i]
            out.append(b if a == v else a)
        return out

    def multiplicity(self, u: str, v: str) -> int:
        return sum(1 for a, b, _ in self.edges if {a, b} == {u, v})

    def is_tree(self) -> bool:
        if len(self.edges) != len(self.vertices) - 1:
            return False
        return self.is_connected()

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            w = stack.pop()
            for x in self.neighbours(w):
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        return len(seen) == len(self.vertices)

    def flip_vertex(self, w: str, reverse_order: bool = True) -> "PlumbingGraph":
        """Reverse every orientation flag at ``w`` (and, by default, its cyclic order)."""
        edges = [(u, v, -o if w in (u, v) else o) for u, v, o in self.edges]
        cyc = dict(self.cyclic)
        if reverse_order:
            cyc[w] = tuple(reversed(cyc[w]))
        return PlumbingGraph(self.vertices, tuple(edges), cyc)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"ends": [u, v], "orient": o} for u, v, o in self.edges],
            "cyclic": {w: list(order) for w, order in self.cyclic.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "PlumbingGraph":
        if not isinstance(data, dict):
            raise SurfaceError("plumbing graph JSON must be an object", field="")
        if "vertices" not in data:
            raise SurfaceError("missing 'vertices'", field="vertices")
        edges = []
        for i, e in enumerate(data.get("edges", [])):
            if not isinstance(e, dict) or "ends" not in e:
                raise SurfaceError(f"edge {i} lacks 'ends'", field=f"edges[{i}].ends")
            if "orient" not in e:
                raise SurfaceError(f"edge {i} lacks 'orient'", field=f"edges[{i}].orient")
            ends = e["ends"]
            if len(ends) != 2:
                raise SurfaceError(f"edge {i} must have two ends", field=f"edges[{i}].ends")
            edges.append((str(ends[0]), str(ends[1]), e["orient"]))
        cyc = {str(k): tuple(v) for k, v in (data.get("cyclic") or {}).items()}
        return cls(tuple(str(v) for v in data["vertices"]), tuple(edges), cyc)


def chain(n: int, names: Sequence[str] | None = None) -> PlumbingGraph:
    names = list(names or [f"v{i + 1}" for i in range(n)])
    return PlumbingGraph(tuple(names), tuple((names[i], names[i + 1], 1) for i in range(n - 1)))


def cycle(n: int, orients: Sequence[int] | None = None) -> PlumbingGraph:
    names = [f"v{i + 1}" for i in range(n)]
    orients = list(orients or [1] * n)
    return PlumbingGraph(tuple(names), tuple((names[i], names[(i + 1) % n], orients[i]) for i in range(n)))


# -- plumbing construction -------------------------------------------------------


def build_plumbing(g: PlumbingGraph) -> tuple[CombSurface, NamedCurveSet]:
    """Thicken ``g`` into a surface with one core curve per vertex.

    Each edge becomes an octagon in which the two cores cross once; each
    vertex becomes an annulus assembled from strips joining consecutive
    octagons in the vertex's cyclic order. The sign of an edge decides in
    which direction the second core runs through its octagon.
    """
    ids = iter(range(1, 10 ** 9))
    faces: list[tuple[int, ...]] = []
    io: dict[tuple[int, str], tuple[int, int]] = {}  # (edge, vertex) -> (in id, out id)
    for i, (u, v, o) in enumerate(g.edges):
        u_out, v_a, u_in, v_b = next(ids), next(ids), next(ids), next(ids)
        bs = [next(ids) for _ in range(4)]
        faces.append((u_out, bs[0], v_a, bs[1], u_in, bs[2], v_b, bs[3]))
        io[(i, u)] = (u_in, u_out)
        io[(i, v)] = (v_b, v_a) if o > 0 else (v_a, v_b)
    cores: dict[str, Curve] = {}
    for w in g.vertices:
        order = g.cyclic[w]
        if not order:
            k, b1, b2 = next(ids), next(ids), next(ids)
            faces.append((k, b1, -k, b2))
            cores[w] = Curve((k,))
            continue
        darts = []
        d = len(order)
        for j in range(d):
            x, y = order[j], order[(j + 1) % d]
            out_x = io[(x, w)][1]
            in_y = io[(y, w)][0]
            faces.append((-out_x, next(ids), -in_y, next(ids)))
            darts.extend((out_x, -in_y))
        cores[w] = Curve(tuple(darts))
    s = CombSurface(tuple(faces))
    if s.euler_characteristic() != -len(g.edges):
        raise SurfaceError(
            f"plumbing complex has Euler characteristic {s.euler_characteristic()}, "
            f"expected {-len(g.edges)}", field="edges",
        )
    return s, NamedCurveSet(s, cores)


# -- boundary points ---------------------------------------------------------


def _ccw_u(s: CombSurface, p: BoundaryPoint) -> Fraction:
    side = s.boundary_side(p.edge)
    return p.t if side.sign > 0 else 1 - p.t


def nudge(s: CombSurface, p: BoundaryPoint, delta: Fraction) -> BoundaryPoint:
    """Move ``p`` by ``delta`` in the counter-clockwise direction of its face."""
    side = s.boundary_side(p.edge)
    return BoundaryPoint(p.edge, p.t + delta * side.sign)


def _marks(curves: Iterable[Curve]) -> list[BoundaryPoint]:
    out = []
    for c in curves:
        if c.is_arc:
            out.extend((c.start, c.end))
    return out


def clearance(p: BoundaryPoint, others: Iterable[BoundaryPoint]) -> Fraction:
    """Distance from ``p`` to the nearest other marked point or edge end."""
    gap = min(p.t, 1 - p.t)
    for q in others:
        if q.edge == p.edge and q != p:
            gap = min(gap, abs(q.t - p.t))
    return gap


# -- handles -----------------------------------------------------------------


@dataclass(frozen=True)
class HandleResult:
    surface: CombSurface
    curve: Curve
    point_map: Mapping[BoundaryPoint, BoundaryPoint]

    def move(self, c: Curve) -> Curve:
        """Carry a curve on the old surface across to the new one."""
        if not c.is_arc:
            return c
        try:
            return Curve(c.darts, self.point_map[c.start], self.point_map[c.end])
        except KeyError as e:
            raise CurveError(f"boundary point {e.args[0]} was absorbed by the handle") from None


def attach_handle(s: CombSurface, a: Curve, keep: Iterable[Curve] = ()) -> HandleResult:
    """Attach a 1-handle joining small boundary intervals around the ends of ``a``.

    Returns the new surface, the closed curve formed by ``a`` and the core of
    the handle, and where the endpoints of the arcs in ``keep`` went.
    """
    if not a.is_arc:
        raise CurveError("handles are attached along arcs, not closed curves")
    validate(s, a)
    if a.start == a.end:
        raise CurveError("arc endpoints coincide")
    keep = list(keep)
    marks = _marks(keep) + [a.start, a.end]
    cuts: dict[int, list[tuple[Fraction, Fraction, str]]] = {}
    for tag, p in (("p", a.start), ("q", a.end)):
        delta = clearance(p, marks) / 3
        cuts.setdefault(p.edge, []).append((p.t - delta, p.t + delta, tag))
    nxt = s.next_edge_id()
    pieces: dict[int, list[int]] = {}
    handle_id: dict[str, int] = {}
    ranges: dict[int, list[tuple[Fraction, Fraction, int]]] = {}
    for k, cs in cuts.items():
        cs.sort()
        lo = Fraction(0)
        seq, rs = [], []
        for a0, a1, tag in cs:
            seq.append(nxt)
            rs.append((lo, a0, nxt))
            nxt += 1
            seq.append(nxt)
            handle_id[tag] = nxt
            nxt += 1
            lo = a1
        seq.append(nxt)
        rs.append((lo, Fraction(1), nxt))
        nxt += 1
        pieces[k] = seq
        ranges[k] = rs
    faces = []
    for face in s.faces:
        new = []
        for x in face:
            if abs(x) in pieces:
                seq = pieces[abs(x)]
                new.extend(seq if x > 0 else [-y for y in reversed(seq)])
            else:
                new.append(x)
        faces.append(tuple(new))
    sp = s.boundary_side(a.start.edge).sign
    sq = s.boundary_side(a.end.edge).sign
    hp, hq = handle_id["p"], handle_id["q"]
    faces.append((-sq * hq, nxt, -sp * hp, nxt + 1))
    t = CombSurface(tuple(faces))
    curve = Curve(a.darts + (sq * hq, -sp * hp))
    validate(t, curve)
    pmap: dict[BoundaryPoint, BoundaryPoint] = {}
    for p in _marks(keep):
        if p.edge not in ranges:
            pmap[p] = p
            continue
        for lo, hi, eid in ranges[p.edge]:
            if lo < p.t < hi:
                pmap[p] = BoundaryPoint(eid, (p.t - lo) / (hi - lo))
                break
    return HandleResult(t, curve, pmap)


# -- filling arcs -------------------------------------------------------------


def _cw_walk(s: CombSurface, face: int, pos: int):
    """Walk clockwise around the vertex at the start of side ``pos``.

    Returns the darts needed to reach ``face`` from the boundary side where
    the walk ends, that side, and the number of interior sides crossed.
    """
    f, p = face, pos
    darts: list[int] = []
    for _ in range(4 * sum(len(x) for x in s.faces) + 4):
        n = len(s.faces[f])
        q = (p - 1) % n
        x = s.faces[f][q]
        if not s.is_interior(x):
            return list(reversed(darts)), x, len(darts)
        darts.append(x)  # the path runs the other way: enters f through x
        other = s.side_of(-x)
        f, p = other.face, other.pos
    raise SurfaceError("vertex fan does not terminate on the boundary", field="faces")


def _corner_u(depth: int) -> Fraction:
    return Fraction(1, 4 * (depth + 1))


def filling_arc_system(s: CombSurface) -> NamedCurveSet:
    """Disjoint arcs cutting ``s`` into discs: one parallel copy of each cut edge.

    The cut edges are the interior edges off a spanning tree of the dual
    graph; cutting along them leaves the tree of polygons, a disc.
    """
    if not s.boundary_edges:
        raise SurfaceError("closed surfaces have no boundary to anchor arcs", field="faces")
    if not s.is_connected():
        raise SurfaceError("surface is not connected", field="faces")
    arcs: dict[str, Curve] = {}
    for k in s.cut_edges:
        side = s.side_of(k)
        f, p = side.face, side.pos
        back, b_start, dep0 = _cw_walk(s, f, p)
        # back lists sides x met in clockwise order; crossing into f uses -x in reverse
        head = [-x for x in back]
        fan = s.fan(f, p)
        tail = [s.faces[g][q] for g, q in fan[:-1]]
        g_end, q_end = fan[-1]
        b_end = s.faces[g_end][q_end]
        u0 = 1 - _corner_u(dep0)
        u1 = _corner_u(len(tail))
        start = BoundaryPoint(abs(b_start), u0 if b_start > 0 else 1 - u0)
        end = BoundaryPoint(abs(b_end), u1 if b_end > 0 else 1 - u1)
        arcs[f"arc{k}"] = reduce(Curve(tuple(head + tail), start, end))
    out = NamedCurveSet(s, arcs)
    report = cut_report(s, list(out.curves.values()))
    if not report.all_discs:
        raise SurfaceError(f"internal: arc system leaves {report.pieces} pieces, not all discs",
                           field="faces")
    return out


@dataclass(frozen=True)
class CutReport:
    pieces: int
    expected_discs: int
    disjoint: bool

    @property
    def all_discs(self) -> bool:
        return self.disjoint and self.pieces == self.expected_discs


def cut_report(s: CombSurface, arcs: Sequence[Curve]) -> CutReport:
    """Cut ``s`` along disjoint embedded arcs and count the pieces.

    Each cut raises the Euler characteristic by one, and every piece has
    boundary, so the complement is a union of discs exactly when the piece
    count equals ``χ(s) + #arcs``.
    """
    arcs = [reduce(a) for a in arcs]
    for a in arcs:
        if not a.is_arc:
            raise CurveError("cut systems consist of arcs")
    disjoint = all(is_simple(s, a) for a in arcs)
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            if imin(s, arcs[i], arcs[j]):
                disjoint = False
    expected = s.euler_characteristic() + len(arcs)
    if not disjoint:
        return CutReport(-1, expected, False)
    lay = joint_layout(s, arcs)
    # regions of each face: gaps between consecutive chord ends, joined across chords
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    by_face: dict[int, list] = {f: [] for f in range(len(s.faces))}
    for i in range(len(arcs)):
        for f, ch in lay.chords(i):
            by_face[f].append(ch)
    gap_keys: dict[int, list] = {}
    for f, chords in by_face.items():
        ends = []
        for a_, b_ in chords:
            ka, kb = lay.key(*a_), lay.key(*b_)
            ends.append((ka, kb))
            ends.append((kb, ka))
        ends.sort()
        keys = [k for k, _ in ends]
        gap_keys[f] = keys
        m = len(keys)
        find((f, 0))
        if m == 0:
            continue
        index = {k: i for i, k in enumerate(keys)}
        for i, (k, partner) in enumerate(ends):
            # the gap after the mark before k continues after k's partner
            union((f, (i - 1) % m), (f, index[partner]))
    import bisect

    def gap_of(f: int, key) -> tuple[int, int]:
        keys = gap_keys[f]
        if not keys:
            return (f, 0)
        i = bisect.bisect_left(keys, key) - 1
        return (f, i % len(keys))

    for k in s.interior_edges:
        row = lay.line.get(k, ())
        bounds = [Fraction(0)] + [Fraction(i + 1, len(row) + 1) for i in range(len(row))] + [Fraction(1)]
        for r in range(len(row) + 1):
            mid = (bounds[r] + bounds[r + 1]) / 2
            ends_ = []
            for sign in (1, -1):
                side = s.side_of(sign * k)
                u = mid if sign > 0 else 1 - mid
                ends_.append(gap_of(side.face, (side.pos, u)))
            union(*ends_)
    roots = {find((f, 0)) for f in range(len(s.faces))}
    for f, keys in gap_keys.items():
        for i in range(len(keys)):
            roots.add(find((f, i)))
    return CutReport(len(roots), expected, True)


# -- detectors and push-offs ---------------------------------------------------


def _delta(a: Curve, others: Iterable[Curve]) -> Fraction:
    marks = _marks(list(others)) + [a.start, a.end]
    return min(clearance(a.start, marks), clearance(a.end, marks)) / 4


def detector_arc(s: CombSurface, a: Curve, avoid: Curve | None = None,
                 others: Iterable[Curve] = ()) -> Curve:
    """A short arc in the collar of the start of ``a``, crossing ``a`` once.

    It runs along the boundary from just before to just after the start
    point, so it misses every arc whose endpoints stay away from that point.
    """
    if not a.is_arc:
        raise CurveError("detector arcs are built for arcs only")
    validate(s, a)
    pool = list(others) + ([avoid] if avoid is not None else [])
    if avoid is not None:
        validate(s, avoid)
        if imin(s, a, avoid):
            raise CurveError("the arc to avoid must be disjoint from a")
    d = _delta(a, pool) / 2
    return Curve((), nudge(s, a.start, -d), nudge(s, a.start, d))


def pushoffs(s: CombSurface, a: Curve, others: Iterable[Curve] = ()) -> tuple[Curve, Curve]:
    """Parallel copies of ``a`` on its right and on its left."""
    if not a.is_arc:
        raise CurveError("push-offs are built for arcs only")
    d = _delta(a, others)
    right = Curve(a.darts, nudge(s, a.start, d), nudge(s, a.end, -d))
    left = Curve(a.darts, nudge(s, a.start, -d), nudge(s, a.end, d))
    return right, left


def boundary_arc(s: CombSurface, start: BoundaryPoint, end: BoundaryPoint, darts: Sequence[int]) -> Curve:
    c = Curve(tuple(darts), start, end)
    validate(s, c)
    return c


__all__ = [
    "PlumbingGraph", "build_plumbing", "chain", "cycle", "attach_handle", "HandleResult",
    "filling_arc_system", "cut_report", "CutReport", "detector_arc", "pushoffs", "nudge",
    "boundary_arc", "clearance", "ccw_between",
]
