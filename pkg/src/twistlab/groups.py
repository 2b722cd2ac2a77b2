"""Coincidence graphs, free-subgroup certificates, RAAG and wreath presentations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .curves import CurveError, NamedCurveSet, imin, is_isotopic


class GroupError(ValueError):
    """Invalid group table or presentation input."""


# -- coincidence graphs ------------------------------------------------------------


@dataclass(frozen=True)
class CoincidenceGraph:
    vertices: tuple[str, ...]
    edges: frozenset  # of frozenset pairs

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2 or not set(e) <= set(self.vertices):
                raise GroupError(f"bad edge {sorted(e)}")

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[str, str]]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        pairs = [tuple(sorted(e, key=pos.__getitem__)) for e in self.edges]
        return sorted(pairs, key=lambda p: (pos[p[0]], pos[p[1]]))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(p) for p in self.sorted_edges()]}

    @classmethod
    def from_pairs(cls, vertices: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "CoincidenceGraph":
        return cls(tuple(vertices), frozenset(frozenset(p) for p in pairs))


def _closed_names(cs: NamedCurveSet, names: Sequence[str] | None) -> list[str]:
    names = list(names) if names is not None else cs.names
    for n in names:
        if cs[n].is_arc:
            raise CurveError(f"{n} is an arc; expected closed curves")
    return names


def intersection_matrix(cs: NamedCurveSet, names: Sequence[str] | None = None) -> list[list[int]]:
    names = list(names) if names is not None else cs.names
    s = cs.surface
    return [[imin(s, cs[a], cs[b]) if a != b else 0 for b in names] for a in names]


def coincidence_graph(cs: NamedCurveSet, names: Sequence[str] | None = None) -> CoincidenceGraph:
    """Join two curves exactly when they can be made disjoint."""
    names = _closed_names(cs, names)
    s = cs.surface
    pairs = [(a, b) for a, b in itertools.combinations(names, 2) if imin(s, cs[a], cs[b]) == 0]
    return CoincidenceGraph.from_pairs(names, pairs)


# -- certificates ------------------------------------------------------------------


@dataclass(frozen=True)
class FreeCertificate:
    """Outcome of the intersection inequality test ``6 I(i,k) <= I(i,j) I(j,k)``.

    ``witness`` is the first failing ordered triple, as 1-based positions in
    the tested list.
    """

    holds: bool
    names: tuple[str, ...]
    witness: tuple[int, int, int] | None = None
    values: tuple[int, int, int] | None = None
    citation: str = "Hamidi-Tehrani intersection criterion"

    @property
    def claim(self) -> str:
        if self.holds:
            return (f"free subgroup F_{len(self.names)} generated by the twists along "
                    f"{', '.join(self.names)} in every stabilisation")
        return "criterion fails; no freeness claim"

    def to_json(self) -> dict:
        out: dict = {"holds": self.holds, "names": list(self.names), "claim": self.claim,
                     "citation": self.citation}
        if self.witness:
            out["witness"] = list(self.witness)
            out["values"] = {"I_ik": self.values[0], "I_ij": self.values[1], "I_jk": self.values[2]}
        return out


def hamidi_tehrani_certificate(cs: NamedCurveSet, subset: Sequence[str]) -> FreeCertificate:
    names = list(subset)
    if len(names) < 2:
        raise GroupError("need at least two curves")
    for n in names:
        cs[n]
    if len(set(names)) != len(names):
        raise GroupError("repeated curve names")
    m = intersection_matrix(cs, names)
    for i, j, k in itertools.permutations(range(len(names)), 3):
        if 6 * m[i][k] > m[i][j] * m[j][k]:
            return FreeCertificate(False, tuple(names), (i + 1, j + 1, k + 1), (m[i][k], m[i][j], m[j][k]))
    return FreeCertificate(True, tuple(names))


def irredundancy_check(cs: NamedCurveSet, names: Sequence[str] | None = None) -> tuple[bool, tuple[int, int] | None]:
    """No two curves isotopic; the witness is the first isotopic pair (1-based)."""
    names = _closed_names(cs, names)
    s = cs.surface
    for i, j in itertools.combinations(range(len(names)), 2):
        if is_isotopic(s, cs[names[i]], cs[names[j]]):
            return False, (i + 1, j + 1)
    return True, None


# -- presentations -----------------------------------------------------------------

Letter = tuple  # (generator, ±1)


def free_reduce(word: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in word:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def comm(x: str, y: str) -> tuple[Letter, ...]:
    return ((x, 1), (y, 1), (x, -1), (y, -1))


@dataclass(frozen=True)
class Presentation:
    gens: tuple[str, ...]
    rels: tuple[tuple[Letter, ...], ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if len(set(self.gens)) != len(self.gens):
            raise GroupError("duplicate generator")
        rels = []
        for r in self.rels:
            r = free_reduce(tuple((g, int(e)) for g, e in r))
            for g, e in r:
                if g not in self.gens or e not in (1, -1):
                    raise GroupError(f"relator uses unknown letter {g}^{e}")
            if r:
                rels.append(r)
        object.__setattr__(self, "rels", tuple(rels))

    @staticmethod
    def format_word(r: Sequence[Letter]) -> str:
        if len(r) == 4 and r[0][1] == r[1][1] == 1 and r[2] == (r[0][0], -1) and r[3] == (r[1][0], -1) \
                and r[0][0] != r[1][0]:
            return f"[{r[0][0]},{r[1][0]}]"
        return " ".join(g if e == 1 else f"{g}^-1" for g, e in r)

    def to_text(self) -> str:
        lines = [f"# {n}" for n in self.notes]
        lines.append("gens: " + " ".join(self.gens))
        lines.append("rels:")
        lines.extend(self.format_word(r) for r in self.rels)
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"gens": list(self.gens), "rels": [self.format_word(r) for r in self.rels],
                "notes": list(self.notes)}

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        gens: list[str] = []
        rels = []
        mode = None
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("gens:"):
                gens = line[5:].split()
                mode = "gens"
                continue
            if line.startswith("rels:"):
                mode = "rels"
                rest = line[5:].strip()
                if rest:
                    rels.append(_parse_rel(rest))
                continue
            if mode == "rels":
                rels.append(_parse_rel(line))
            else:
                raise GroupError(f"unexpected line {line!r}")
        return cls(tuple(gens), tuple(rels))


def _parse_rel(text: str) -> tuple[Letter, ...]:
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        x, y = (p.strip() for p in text[1:-1].split(","))
        return comm(x, y)
    out = []
    for tok in text.split():
        if tok.endswith("^-1"):
            out.append((tok[:-3], -1))
        else:
            out.append((tok, 1))
    return tuple(out)


def raag_presentation(g: CoincidenceGraph, n: int = 1) -> Presentation:
    """One generator per curve (standing for the n-th power of its twist), commuting along edges."""
    if n < 1:
        raise GroupError("exponent must be positive")
    gens = tuple(f"z_{v}" for v in g.vertices)
    rels = tuple(comm(f"z_{a}", f"z_{b}") for a, b in g.sorted_edges())
    notes = (f"z_v stands for T_v^{n}, the twist along v to the power {n}",
             "right-angled Artin system valid for all sufficiently large powers")
    return Presentation(gens, rels, notes)


def free_group(k: int, prefix: str = "x") -> Presentation:
    return Presentation(tuple(f"{prefix}{i + 1}" for i in range(k)))


# -- finite groups and wreath products -------------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table ``table[g][h] = gh``."""

    elements: tuple[str, ...]
    table: Mapping[str, Mapping[str, str]]

    def __post_init__(self):
        els = tuple(str(x) for x in self.elements)
        object.__setattr__(self, "elements", els)
        if not els or len(set(els)) != len(els):
            raise GroupError("group elements must be distinct and nonempty")
        tab = {g: {h: str(self.table[g][h]) for h in els} for g in els} if all(
            g in self.table and all(h in self.table[g] for h in els) for g in els) else None
        if tab is None:
            raise GroupError("multiplication table is incomplete")
        for g in els:
            for h in els:
                if tab[g][h] not in els:
                    raise GroupError(f"product {g}*{h} is not an element")
        object.__setattr__(self, "table", tab)
        for a in els:
            for b in els:
                for c in els:
                    if tab[tab[a][b]][c] != tab[a][tab[b][c]]:
                        raise GroupError(f"table is not associative at ({a},{b},{c})")
        ids = [e for e in els if all(tab[e][g] == g and tab[g][e] == g for g in els)]
        if not ids:
            raise GroupError("table has no identity")
        e = ids[0]
        for g in els:
            if not any(tab[g][h] == e for h in els):
                raise GroupError(f"element {g} has no inverse")

    @property
    def identity(self) -> str:
        t = self.table
        return next(e for e in self.elements if all(t[e][g] == g for g in self.elements))

    def mul(self, g: str, h: str) -> str:
        return self.table[g][h]

    def __len__(self) -> int:
        return len(self.elements)

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "table": [[self.table[g][h] for h in self.elements]
                                                           for g in self.elements]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        els = [str(x) for x in data["elements"]]
        rows = data["table"]
        if isinstance(rows, dict):
            return cls(tuple(els), rows)
        if len(rows) != len(els) or any(len(r) != len(els) for r in rows):
            raise GroupError("table must be square")
        return cls(tuple(els), {g: {h: str(rows[i][j]) for j, h in enumerate(els)} for i, g in enumerate(els)})


def cyclic_group(n: int) -> FiniteGroup:
    els = tuple(str(i) for i in range(n))
    return FiniteGroup(els, {str(i): {str(j): str((i + j) % n) for j in range(n)} for i in range(n)})


def copy_name(x: str, g: str, G: FiniteGroup) -> str:
    return x if g == G.identity else f"{x}_{g}"


def wreath_presentation(gamma: Presentation, G: FiniteGroup) -> Presentation:
    """Presentation of ``gamma ≀ G`` with ``G`` permuting copies by left translation.

    Copy ``g`` of generator ``x`` is ``x_g`` (plain ``x`` for the identity);
    ``t_g`` is the generator of ``G`` for each ``g`` other than the identity.
    """
    e = G.identity
    others = [g for g in G.elements if g != e]
    gens = [copy_name(x, g, G) for g in G.elements for x in gamma.gens] + [f"t_{g}" for g in others]
    rels: list[tuple] = []
    for g in G.elements:
        for r in gamma.rels:
            rels.append(tuple((copy_name(x, g, G), s) for x, s in r))
    for g, h in itertools.combinations(G.elements, 2):
        for x in gamma.gens:
            for y in gamma.gens:
                rels.append(comm(copy_name(x, g, G), copy_name(y, h, G)))

    def t(g):
        return () if g == e else ((f"t_{g}", 1),)

    def tinv(g):
        return () if g == e else ((f"t_{g}", -1),)

    for g in others:
        for h in others:
            rels.append(t(g) + t(h) + tinv(G.mul(g, h)))
    for g in others:
        for h in G.elements:
            for x in gamma.gens:
                rels.append(t(g) + ((copy_name(x, h, G), 1),) + tinv(g) + ((copy_name(x, G.mul(g, h), G), -1),))
    notes = ("left translation: t_g x_h t_g^-1 = x_gh",)
    return Presentation(tuple(gens), tuple(rels), notes)


# -- Stallings folding -------------------------------------------------------------------


class FoldedGraph:
    """Stallings graph of a finitely generated subgroup of a free group.

    Letters are nonzero ints; ``-x`` is the inverse of ``x``. A word lies in
    the subgroup iff it reads a closed path at the base vertex.
    """

    def __init__(self, words: Iterable[Sequence[int]]):
        parent: dict[int, int] = {}

        def find(v):
            while parent.get(v, v) != v:
                parent[v] = parent.get(parent[v], parent[v])
                v = parent[v]
            return v

        edges: set[tuple[int, int, int]] = set()
        fresh = 1
        for w in words:
            w = [x for x in w]
            cur = 0
            for i, x in enumerate(w):
                nxt = 0 if i == len(w) - 1 else fresh
                if nxt:
                    fresh += 1
                edges.add((cur, x, nxt))
                edges.add((nxt, -x, cur))
                cur = nxt
        while True:
            seen: dict[tuple[int, int], int] = {}
            merge = None
            for u, x, v in edges:
                key = (u, x)
                if key in seen and seen[key] != v:
                    merge = (seen[key], v)
                    break
                seen[key] = v
            if merge is None:
                break
            a, b = sorted(merge)
            parent[b] = a
            edges = {(find(u), x, find(v)) for u, x, v in edges}
        self.base = find(0)
        self.out: dict[int, dict[int, int]] = {self.base: {}}
        for u, x, v in edges:
            self.out.setdefault(u, {})[x] = v

    def accepts(self, w: Sequence[int]) -> bool:
        cur = self.base
        for x in w:
            nxt = self.out.get(cur, {}).get(x)
            if nxt is None:
                return False
            cur = nxt
        return cur == self.base

    def is_whole_group(self, letters: Iterable[int]) -> bool:
        return all(self.accepts([x]) for x in letters)

    @property
    def rank(self) -> int:
        e = sum(len(d) for d in self.out.values()) // 2
        return e - len(self.out) + 1
