"""Ungraded zigzag algebras of trees over F2 and twisted complexes over them.

Morphisms compose like maps: ``mul(x, y)`` is ``x ∘ y`` (``y`` first). The
basis of the algebra is

* ``e(i)``: the idempotent at vertex ``i`` (identity of ``P_i``);
* ``l(i)``: the loop at ``i``;
* ``p(i,j)``: the arrow ``P_i -> P_j`` for each edge, in both directions;

with ``p(j,i) ∘ p(i,j) = l(i)`` and every other length-two path zero, so
that loops square to zero and all paths of length three vanish.

Elements are sums of basis vectors over F2, stored as int bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .surface import PlumbingGraph
from .twists import TwistWord


class AlgebraError(ValueError):
    """Input that the algebraic model rejects (cyclic graphs, unknown vertices)."""


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over F2 of a matrix whose rows are int bitmasks."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in pivots:
                r ^= pivots[top]
            else:
                pivots[top] = r
                rank += 1
                break
    return rank


@dataclass(frozen=True, eq=False)
class ZigzagAlgebra:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    basis: tuple[tuple, ...] = field(init=False)

    def __post_init__(self):
        verts = tuple(self.vertices)
        if not verts:
            raise AlgebraError("empty algebra")
        adj = {v: set() for v in verts}
        for u, v in self.edges:
            if u == v:
                raise AlgebraError(f"self-loop at {u!r}")
            if v in adj[u]:
                raise AlgebraError(f"multiple edges between {u!r} and {v!r}")
            adj[u].add(v)
            adj[v].add(u)
        basis: list[tuple] = []
        for v in verts:
            basis.append(("e", v))
            basis.append(("l", v))
        for u, v in self.edges:
            basis.append(("p", u, v))
            basis.append(("p", v, u))
        object.__setattr__(self, "basis", tuple(basis))
        object.__setattr__(self, "_index", {b: i for i, b in enumerate(basis)})
        object.__setattr__(self, "_adj", adj)
        table: dict[tuple[int, int], int] = {}
        for x in basis:
            for y in basis:
                z = self._basis_product(x, y)
                if z is not None:
                    table[(self._index[x], self._index[y])] = 1 << self._index[z]
        object.__setattr__(self, "_table", table)
        self._check_associative()

    # structure

    @staticmethod
    def source(b: tuple) -> str:
        return b[1]

    @staticmethod
    def target(b: tuple) -> str:
        return b[1] if b[0] in ("e", "l") else b[2]

    def _basis_product(self, x: tuple, y: tuple):
        # x ∘ y: y goes first
        if self.target(y) != self.source(x):
            return None
        if x[0] == "e":
            return y
        if y[0] == "e":
            return x
        if x[0] == "p" and y[0] == "p" and x[2] == y[1]:
            return ("l", y[1])
        return None

    def _check_associative(self) -> None:
        n = len(self.basis)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    a, b, c = 1 << i, 1 << j, 1 << k
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise AlgebraError("multiplication table is not associative")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, *names: tuple) -> int:
        x = 0
        for b in names:
            x ^= 1 << self._index[b]
        return x

    def e(self, v: str) -> int:
        return self.element(("e", v))

    def l(self, v: str) -> int:
        return self.element(("l", v))

    def p(self, u: str, v: str) -> int:
        if (("p", u, v)) not in self._index:
            raise AlgebraError(f"no arrow {u}->{v}")
        return self.element(("p", u, v))

    def mul(self, x: int, y: int) -> int:
        out = 0
        xs = _bits(x)
        ys = _bits(y)
        for a in xs:
            for b in ys:
                out ^= self._table.get((a, b), 0)
        return out

    def hom_basis(self, u: str, v: str) -> list[int]:
        """Basis of Hom(P_u, P_v) as bit indices."""
        if u == v:
            return [self._index[("e", u)], self._index[("l", u)]]
        if v in self._adj.get(u, ()):
            return [self._index[("p", u, v)]]
        return []

    def hom_dim(self, u: str, v: str) -> int:
        return len(self.hom_basis(u, v))

    def is_unit(self, x: int, v: str) -> bool:
        return bool(x >> self._index[("e", v)] & 1)

    def name(self, x: int) -> str:
        parts = []
        for i in _bits(x):
            b = self.basis[i]
            parts.append(f"{b[0]}({b[1]})" if b[0] != "p" else f"p({b[1]},{b[2]})")
        return "+".join(parts) if parts else "0"


def _bits(x: int) -> list[int]:
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


def zigzag_from_tree(g: PlumbingGraph) -> ZigzagAlgebra:
    if not g.is_tree():
        raise AlgebraError("zigzag model is only built for trees (graph has a cycle or is disconnected)")
    return ZigzagAlgebra(g.vertices, tuple((u, v) for u, v, _ in g.edges))


# -- twisted complexes -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TwComplex:
    """Generators ``P_{gens[i]}`` with differential entries ``delta[(b, a)]: gens[a] -> gens[b]``, ``a < b``."""

    algebra: ZigzagAlgebra
    gens: tuple[str, ...]
    delta: Mapping[tuple[int, int], int]

    def __post_init__(self):
        d = {k: v for k, v in self.delta.items() if v}
        for (b, a) in d:
            if not a < b:
                raise AlgebraError(f"differential entry {a}->{b} is not strictly triangular")
        object.__setattr__(self, "delta", d)
        self.check()

    def check(self) -> None:
        A = self.algebra
        by_src: dict[int, list] = {}
        for (b, a), x in self.delta.items():
            by_src.setdefault(a, []).append((b, x))
        sq: dict[tuple[int, int], int] = {}
        for (b, a), x in self.delta.items():
            for c, y in by_src.get(b, ()):
                sq[(c, a)] = sq.get((c, a), 0) ^ A.mul(y, x)
        bad = [k for k, v in sq.items() if v]
        if bad:
            raise AssertionError(f"delta^2 != 0 at entry {bad[0]}")

    def __len__(self) -> int:
        return len(self.gens)

    def dump(self) -> str:
        A = self.algebra
        lines = ["gens: " + " ".join(self.gens)]
        for (b, a), x in sorted(self.delta.items()):
            lines.append(f"{b} {a} {A.name(x)}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        A = self.algebra
        return {
            "gens": list(self.gens),
            "delta": [[b, a, A.name(x)] for (b, a), x in sorted(self.delta.items())],
        }


def vertex_object(A: ZigzagAlgebra, v: str) -> TwComplex:
    if v not in A.vertices:
        raise AlgebraError(f"unknown vertex {v!r}")
    return TwComplex(A, (v,), {})


def twist_complex(X: TwComplex, k: str, inverse: bool = False) -> TwComplex:
    """Cone of evaluation ``Hom(P_k, X) ⊗ P_k -> X`` (or of coevaluation for the inverse)."""
    A = X.algebra
    if k not in A.vertices:
        raise AlgebraError(f"unknown vertex {k!r}")
    n = len(X.gens)
    if not inverse:
        copies = [(a, bi) for a in range(n) for bi in A.hom_basis(k, X.gens[a])]
        m = len(copies)
        pos = {c: i for i, c in enumerate(copies)}
        delta: dict[tuple[int, int], int] = {}
        e_k = A.e(k)
        for i, (a, bi) in enumerate(copies):
            phi = 1 << bi
            # evaluation into X
            delta[(m + a, i)] = phi
            # differential of Hom(P_k, X): phi -> delta_X ∘ phi
            for (b, a2), x in X.delta.items():
                if a2 != a:
                    continue
                for bj in _bits(A.mul(x, phi)):
                    j = pos[(b, bj)]
                    delta[(j, i)] = delta.get((j, i), 0) ^ e_k
        for (b, a), x in X.delta.items():
            delta[(m + b, m + a)] = x
        return TwComplex(A, tuple([k] * m) + X.gens, delta)
    copies = [(a, bi) for a in range(n) for bi in A.hom_basis(X.gens[a], k)]
    pos = {c: i for i, c in enumerate(copies)}
    delta = {}
    e_k = A.e(k)
    for (b, a), x in X.delta.items():
        delta[(b, a)] = x
    for i, (a, bi) in enumerate(copies):
        phi = 1 << bi
        delta[(n + i, a)] = phi
    # dual of psi -> psi ∘ delta_X on Hom(X, P_k)
    for j, (b, bj) in enumerate(copies):
        psi = 1 << bj
        for (b2, a), x in X.delta.items():
            if b2 != b:
                continue
            for bi in _bits(A.mul(psi, x)):
                i = pos[(a, bi)]
                delta[(n + j, n + i)] = delta.get((n + j, n + i), 0) ^ e_k
    return TwComplex(A, X.gens + tuple([k] * len(copies)), delta)


def _topo_order(n: int, delta: Mapping[tuple[int, int], int]) -> list[int] | None:
    succ: dict[int, list[int]] = {i: [] for i in range(n)}
    indeg = [0] * n
    for (b, a) in delta:
        succ[a].append(b)
        indeg[b] += 1
    ready = sorted(i for i in range(n) if indeg[i] == 0)
    out = []
    import heapq

    heapq.heapify(ready)
    while ready:
        a = heapq.heappop(ready)
        out.append(a)
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(ready, b)
    return out if len(out) == n else None


def minimize(X: TwComplex) -> TwComplex:
    """Cancel differential entries that are isomorphisms until none remain.

    Eliminating an isomorphism ``φ: a -> b`` removes both generators and
    adds ``δ_da ∘ φ^-1 ∘ δ_bc`` to each entry ``c -> d``; this is a
    homotopy equivalence, so all Floer dimensions are preserved.
    """
    A = X.algebra
    gens = list(X.gens)
    delta = dict(X.delta)
    while True:
        done = True
        for (b, a), phi in sorted(delta.items()):
            if gens[a] != gens[b] or not A.is_unit(phi, gens[a]):
                continue
            inv = phi  # (e + λl)^2 = e in characteristic two
            new = {k: v for k, v in delta.items() if a not in k and b not in k}
            into_b = [(c, x) for (bb, c), x in delta.items() if bb == b and c != a]
            from_a = [(d, y) for (d, aa), y in delta.items() if aa == a and d != b]
            for c, x in into_b:
                for d, y in from_a:
                    z = A.mul(y, A.mul(inv, x))
                    if z:
                        new[(d, c)] = new.get((d, c), 0) ^ z
            keep = [i for i in range(len(gens)) if i not in (a, b)]
            renum = {old: i for i, old in enumerate(keep)}
            sub = {(renum[d], renum[c]): v for (d, c), v in new.items() if v}
            order = _topo_order(len(keep), sub)
            if order is None:
                continue
            place = {old: i for i, old in enumerate(order)}
            gens = [gens[keep[i]] for i in order]
            delta = {(place[d], place[c]): v for (d, c), v in sub.items()}
            done = False
            break
        if done:
            return TwComplex(A, tuple(gens), delta)


def twist_word_complex(A: ZigzagAlgebra, w: TwistWord, target: str) -> TwComplex:
    """The object ``w(P_target)`` as a minimal twisted complex (rightmost factor first)."""
    X = vertex_object(A, target)
    for name, m in reversed(w.factors):
        if name not in A.vertices:
            raise AlgebraError(f"unknown vertex {name!r}")
        for _ in range(abs(m)):
            X = minimize(twist_complex(X, name, inverse=m < 0))
    return X


def apply_to_complex(X: TwComplex, w: TwistWord) -> TwComplex:
    for name, m in reversed(w.factors):
        for _ in range(abs(m)):
            X = minimize(twist_complex(X, name, inverse=m < 0))
    return X


def hom_complex_matrix(X: TwComplex, Y: TwComplex) -> tuple[int, list[int]]:
    """Dimension and differential (rows as bitmasks) of Hom(X, Y)."""
    A = X.algebra
    if Y.algebra is not A:
        raise AlgebraError("complexes over different algebras")
    cells = []
    for a, u in enumerate(X.gens):
        for b, v in enumerate(Y.gens):
            for bi in A.hom_basis(u, v):
                cells.append((a, b, bi))
    index = {c: i for i, c in enumerate(cells)}
    xs_from: dict[int, list] = {}
    for (a2, a), x in X.delta.items():
        xs_from.setdefault(a2, []).append((a, x))
    ys_from: dict[int, list] = {}
    for (b2, b), y in Y.delta.items():
        ys_from.setdefault(b, []).append((b2, y))
    cols = []
    for (a, b, bi) in cells:
        phi = 1 << bi
        img = 0
        # δ_Y ∘ φ
        for b2, y in ys_from.get(b, ()):
            for bj in _bits(A.mul(y, phi)):
                img ^= 1 << index[(a, b2, bj)]
        # φ ∘ δ_X, with δ_X: a0 -> a
        for a0, x in xs_from.get(a, ()):
            for bj in _bits(A.mul(phi, x)):
                img ^= 1 << index[(a0, b, bj)]
        cols.append(img)
    return len(cells), cols


def hf_dim(X: TwComplex, Y: TwComplex) -> int:
    n, cols = hom_complex_matrix(X, Y)
    return n - 2 * gf2_rank(cols)
