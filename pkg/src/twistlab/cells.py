"""Oriented surfaces with boundary as polygon gluings.

A surface is a list of faces. Each face is the cyclic, counter-clockwise
sequence of its sides; a side is a signed edge id (``+k`` when the face
traverses edge ``k`` along its direction, ``-k`` otherwise). An edge used by
two sides is interior and must be traversed once in each direction; an edge
used once lies on the boundary.

Every cell vertex is required to lie on the boundary. The dual graph (faces
joined across interior edges) is then a spine of the surface, which is what
the curve engine works with: a *dart* is a signed interior edge id, read as
"leave the face containing this side through it".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence


class SurfaceError(ValueError):
    """Structured rejection of a malformed cell structure or plumbing input."""

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.field = field


@dataclass(frozen=True)
class Side:
    face: int
    pos: int
    sign: int


@dataclass(frozen=True, eq=False)
class CombSurface:
    faces: tuple[tuple[int, ...], ...]
    _uses: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        faces = tuple(tuple(int(s) for s in f) for f in self.faces)
        object.__setattr__(self, "faces", faces)
        uses: dict[int, list[Side]] = {}
        for fi, face in enumerate(faces):
            if not face:
                raise SurfaceError(f"face {fi} has no sides", field=f"faces[{fi}]")
            for pos, s in enumerate(face):
                if s == 0:
                    raise SurfaceError(f"face {fi} uses edge id 0", field=f"faces[{fi}]")
                uses.setdefault(abs(s), []).append(Side(fi, pos, 1 if s > 0 else -1))
        for k, us in uses.items():
            if len(us) > 2:
                raise SurfaceError(f"edge {k} used by {len(us)} face sides", field=f"edge {k}")
            if len(us) == 2 and us[0].sign == us[1].sign:
                raise SurfaceError(
                    f"edge {k} traversed twice in the same direction (non-orientable gluing)",
                    field=f"edge {k}",
                )
        object.__setattr__(self, "_uses", uses)
        self._check_vertices()

    # -- basic tables -----------------------------------------------------

    @property
    def edges(self) -> list[int]:
        return sorted(self._uses)

    @property
    def interior_edges(self) -> list[int]:
        return [k for k in self.edges if len(self._uses[k]) == 2]

    @property
    def boundary_edges(self) -> list[int]:
        return [k for k in self.edges if len(self._uses[k]) == 1]

    def is_interior(self, k: int) -> bool:
        return len(self._uses.get(abs(k), ())) == 2

    def side_of(self, signed: int) -> Side:
        """Return the face side carrying the signed edge id ``signed``."""
        for side in self._uses.get(abs(signed), ()):
            if side.sign == (1 if signed > 0 else -1):
                return side
        raise KeyError(signed)

    def face_of(self, dart: int) -> int:
        return self.side_of(dart).face

    def pos_of(self, dart: int) -> int:
        return self.side_of(dart).pos

    def boundary_side(self, k: int) -> Side:
        us = self._uses.get(k)
        if not us or len(us) != 1:
            raise KeyError(f"edge {k} is not a boundary edge")
        return us[0]

    def darts(self) -> list[int]:
        out = []
        for k in self.interior_edges:
            out.extend((k, -k))
        return out

    # -- vertices, boundary, topology --------------------------------------

    def _ends(self, s: int) -> tuple[tuple[int, int], tuple[int, int]]:
        # (start, end) vertex handles of a side in counter-clockwise order
        k = abs(s)
        tail, head = (k, 0), (k, 1)
        return (tail, head) if s > 0 else (head, tail)

    @cached_property
    def _vertex_classes(self) -> dict[tuple[int, int], tuple[int, int]]:
        parent: dict[tuple[int, int], tuple[int, int]] = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k in self.edges:
            find((k, 0)), find((k, 1))
        for face in self.faces:
            n = len(face)
            for i in range(n):
                a = self._ends(face[i])[1]
                b = self._ends(face[(i + 1) % n])[0]
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        return {x: find(x) for x in parent}

    @property
    def num_vertices(self) -> int:
        return len(set(self._vertex_classes.values()))

    def euler_characteristic(self) -> int:
        return self.num_vertices - len(self.edges) + len(self.faces)

    def _check_vertices(self) -> None:
        cls = self._vertex_classes
        on_boundary: dict = {}
        for k in self.boundary_edges:
            for end in ((k, 0), (k, 1)):
                on_boundary[cls[end]] = on_boundary.get(cls[end], 0) + 1
        for v in set(cls.values()):
            count = on_boundary.get(v, 0)
            if count == 0:
                raise SurfaceError(
                    f"cell vertex at edge-end {v} is interior; all vertices must lie on the boundary",
                    field="faces",
                )
            if count != 2:
                raise SurfaceError(
                    f"cell vertex at edge-end {v} meets the boundary {count} times (not a surface)",
                    field="faces",
                )

    def fan(self, face: int, pos: int) -> list[tuple[int, int]]:
        """Walk counter-clockwise around the vertex at the end of side ``pos``.

        Returns the successive ``(face, pos)`` sides met after that corner,
        stopping at (and including) the first boundary side.
        """
        out = []
        f, p = face, pos
        for _ in range(4 * sum(len(x) for x in self.faces) + 4):
            n = len(self.faces[f])
            q = (p + 1) % n
            s = self.faces[f][q]
            out.append((f, q))
            if not self.is_interior(s):
                return out
            other = self.side_of(-s)
            f, p = other.face, other.pos
        raise SurfaceError("vertex fan does not terminate on the boundary", field="faces")

    def boundary_components(self) -> list[tuple[int, ...]]:
        """Boundary cycles as tuples of signed boundary edge ids (face orientation)."""
        seen: set[int] = set()
        comps = []
        for k in self.boundary_edges:
            if k in seen:
                continue
            cycle = []
            cur = k
            while cur not in seen:
                seen.add(cur)
                side = self.boundary_side(cur)
                cycle.append(cur * side.sign)
                f, p = self.fan(side.face, side.pos)[-1]
                cur = abs(self.faces[f][p])
            comps.append(tuple(cycle))
        return comps

    def is_connected(self) -> bool:
        if not self.faces:
            return True
        seen = {0}
        stack = [0]
        while stack:
            f = stack.pop()
            for s in self.faces[f]:
                if self.is_interior(s):
                    g = self.face_of(-s)
                    if g not in seen:
                        seen.add(g)
                        stack.append(g)
        return len(seen) == len(self.faces)

    def first_betti(self) -> int:
        """Rank of H_1, read off the dual graph (interior edges minus spanning tree)."""
        return len(self.interior_edges) - len(self.faces) + self.num_components()

    def num_components(self) -> int:
        parent = list(range(len(self.faces)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k in self.interior_edges:
            a, b = find(self.face_of(k)), find(self.face_of(-k))
            parent[a] = b
        return len({find(i) for i in range(len(self.faces))})

    @cached_property
    def spanning_tree(self) -> frozenset[int]:
        """Interior edge ids of a breadth-first spanning forest of the dual graph."""
        tree: set[int] = set()
        seen: set[int] = set()
        for root in range(len(self.faces)):
            if root in seen:
                continue
            seen.add(root)
            queue = [root]
            while queue:
                f = queue.pop(0)
                for s in self.faces[f]:
                    if not self.is_interior(s):
                        continue
                    g = self.face_of(-s)
                    if g not in seen:
                        seen.add(g)
                        tree.add(abs(s))
                        queue.append(g)
        return frozenset(tree)

    @property
    def cut_edges(self) -> list[int]:
        """Interior edges off the spanning tree: the cut-system alphabet."""
        return [k for k in self.interior_edges if k not in self.spanning_tree]

    def next_edge_id(self) -> int:
        return max(self._uses, default=0) + 1

    # -- serialisation -------------------------------------------------------

    def to_json(self) -> dict:
        return {"faces": [list(f) for f in self.faces]}

    @classmethod
    def from_json(cls, data: dict) -> "CombSurface":
        if "faces" not in data:
            raise SurfaceError("surface JSON lacks 'faces'", field="faces")
        return cls(tuple(tuple(f) for f in data["faces"]))

    @classmethod
    def disjoint_union(cls, parts: Sequence["CombSurface"]) -> tuple["CombSurface", list[dict[int, int]]]:
        """Disjoint union; returns the surface and one edge-id relabelling per part."""
        faces = []
        maps = []
        offset = 0
        for part in parts:
            relabel = {k: k + offset for k in part.edges}
            maps.append(relabel)
            for f in part.faces:
                faces.append(tuple((1 if s > 0 else -1) * relabel[abs(s)] for s in f))
            offset += max(part.edges, default=0)
        return cls(tuple(faces)), maps

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CombSurface) and self.faces == other.faces

    def __hash__(self) -> int:
        return hash(self.faces)


def disc(sides: int = 1) -> CombSurface:
    """A single polygon with all sides on the boundary."""
    return CombSurface((tuple(range(1, sides + 1)),))
