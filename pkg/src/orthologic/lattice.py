"""Finite ortholattices built from Hasse diagrams or families of subsets.

A lattice is stored as dense tables over element indices ``0..n-1``.  The
index order is the declaration order of the input and every "first witness"
reported anywhere in the package is first with respect to it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CycleInCovers,
    FormatError,
    InvalidSpec,
    NoBottom,
    NotALattice,
    NotComplementClosed,
    NoTop,
    OrthoNotComplement,
    OrthoNotInvolution,
    OrthoNotOrderReversing,
)


@dataclass(frozen=True)
class HasseSpec:
    """Hasse diagram of an ortholattice: cover pairs ``(lower, upper)`` and
    orthocomplement pairs."""

    name: str
    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]
    ortho: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "covers", tuple(tuple(p) for p in self.covers))
        object.__setattr__(self, "ortho", tuple(tuple(p) for p in self.ortho))


@dataclass(frozen=True)
class SubsetFamilySpec:
    """A complement-closed family of subsets of ``universe``, in order."""

    name: str
    universe: frozenset
    family: tuple[frozenset, ...]
    labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "universe", frozenset(self.universe))
        fam = self.family
        if isinstance(fam, (set, frozenset)):
            fam = sorted(fam, key=lambda s: (len(s), _sorted_atoms(s)))
        object.__setattr__(self, "family", tuple(frozenset(s) for s in fam))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))


def _sorted_atoms(s):
    try:
        return sorted(s)
    except TypeError:
        return sorted(s, key=repr)


def subset_label(s) -> str:
    return "{" + ",".join(str(x) for x in _sorted_atoms(s)) + "}"


class FiniteOrtholattice:
    """An immutable finite ortholattice.

    ``leq[a, b]`` is the order, ``meet``/``join`` are total ``n x n`` index
    tables and ``ortho`` is the complement as an index array.
    """

    def __init__(self, name, labels, leq, meet, join, ortho, bottom, top):
        self.name = name
        self.labels = tuple(labels)
        self.n = len(self.labels)
        self.leq = leq
        self.meet = meet
        self.join = join
        self.ortho = ortho
        self.bottom = int(bottom)
        self.top = int(top)
        for arr in (leq, meet, join, ortho):
            arr.setflags(write=False)
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def __repr__(self):
        return f"<FiniteOrtholattice {self.name} n={self.n}>"

    def __len__(self):
        return self.n

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label!r} is not an element of {self.name}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs ``(lower, upper)`` in index order."""
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        # i < j is a cover iff no k with i < k < j
        between = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
        cov = strict & ~between
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(cov))]

    def heights(self) -> np.ndarray:
        """Length of the longest chain from the bottom to each element."""
        h = np.zeros(self.n, dtype=np.int64)
        order = np.argsort(self.leq.sum(axis=0), kind="stable")
        for j in order:
            below = np.flatnonzero(self.leq[:, j])
            below = below[below != j]
            if below.size:
                h[j] = h[below].max() + 1
        return h

    def to_hasse_spec(self) -> HasseSpec:
        lab = self.labels
        pairs = []
        seen = set()
        for i in range(self.n):
            j = int(self.ortho[i])
            if i not in seen:
                pairs.append((lab[i], lab[j]))
                seen.update((i, j))
        return HasseSpec(
            self.name, lab, tuple((lab[i], lab[j]) for i, j in self.covers()), tuple(pairs)
        )


def _assemble(name: str, labels: Sequence[str], leq: np.ndarray, ortho: np.ndarray) -> FiniteOrtholattice:
    n = len(labels)
    if n == 0:
        raise InvalidSpec("a lattice needs at least one element")
    bottoms = np.flatnonzero(leq.all(axis=1))
    if bottoms.size != 1:
        raise NoBottom(f"{name}: no element lies below every other element")
    tops = np.flatnonzero(leq.all(axis=0))
    if tops.size != 1:
        raise NoTop(f"{name}: no element lies above every other element")

    meet = np.empty((n, n), dtype=np.int64)
    join = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            lower = np.flatnonzero(leq[:, a] & leq[:, b])
            glb = [g for g in lower if leq[lower, g].all()]
            if len(glb) != 1:
                maximal = [g for g in lower if not (leq[g, lower] & (lower != g)).any()]
                raise NotALattice(
                    f"{name}: {labels[a]} and {labels[b]} have no greatest lower bound "
                    f"(maximal lower bounds: {', '.join(labels[g] for g in maximal)})",
                    pair=(labels[a], labels[b]),
                    operation="meet",
                )
            upper = np.flatnonzero(leq[a, :] & leq[b, :])
            lub = [u for u in upper if leq[u, upper].all()]
            if len(lub) != 1:
                minimal = [u for u in upper if not (leq[upper, u] & (upper != u)).any()]
                raise NotALattice(
                    f"{name}: {labels[a]} and {labels[b]} have no least upper bound "
                    f"(minimal upper bounds: {', '.join(labels[u] for u in minimal)})",
                    pair=(labels[a], labels[b]),
                    operation="join",
                )
            meet[a, b] = meet[b, a] = glb[0]
            join[a, b] = join[b, a] = lub[0]

    ortho = np.asarray(ortho, dtype=np.int64)
    if not np.array_equal(ortho[ortho], np.arange(n)):
        bad = int(np.flatnonzero(ortho[ortho] != np.arange(n))[0])
        raise OrthoNotInvolution(f"{name}: {labels[bad]}'' is not {labels[bad]}")
    for a in range(n):
        for b in range(n):
            if leq[a, b] and not leq[ortho[b], ortho[a]]:
                raise OrthoNotOrderReversing(
                    f"{name}: {labels[a]} <= {labels[b]} but not "
                    f"{labels[ortho[b]]} <= {labels[ortho[a]]}",
                    pair=(labels[a], labels[b]),
                )
    bottom, top = int(bottoms[0]), int(tops[0])
    for a in range(n):
        if meet[a, ortho[a]] != bottom or join[a, ortho[a]] != top:
            raise OrthoNotComplement(
                f"{name}: {labels[a]} and {labels[ortho[a]]} are not complements",
                element=labels[a],
            )
    return FiniteOrtholattice(name, labels, leq, meet, join, ortho, bottom, top)


def _closure(name, labels, leq):
    leq = leq.copy()
    n = len(labels)
    for k in range(n):
        leq |= np.outer(leq[:, k], leq[k, :])
    both = leq & leq.T & ~np.eye(n, dtype=bool)
    if both.any():
        i, j = (int(v) for v in np.argwhere(both)[0])
        raise CycleInCovers(f"{name}: covers form a cycle through {labels[i]} and {labels[j]}")
    return leq


def build_from_hasse(spec: HasseSpec) -> FiniteOrtholattice:
    """Build and validate the ortholattice described by a Hasse diagram."""
    labels = spec.elements
    if len(set(labels)) != len(labels):
        raise InvalidSpec(f"{spec.name}: duplicate element labels")
    idx = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)

    leq = np.eye(n, dtype=bool)
    seen = set()
    for lo, hi in spec.covers:
        for lab in (lo, hi):
            if lab not in idx:
                raise InvalidSpec(f"{spec.name}: cover {lo} < {hi} uses undeclared element {lab}")
        if lo == hi:
            raise InvalidSpec(f"{spec.name}: self-cover {lo} < {hi}")
        if (lo, hi) in seen:
            raise InvalidSpec(f"{spec.name}: duplicate cover {lo} < {hi}")
        seen.add((lo, hi))
        leq[idx[lo], idx[hi]] = True
    leq = _closure(spec.name, labels, leq)

    ortho = np.full(n, -1, dtype=np.int64)
    for a, b in spec.ortho:
        for lab in (a, b):
            if lab not in idx:
                raise InvalidSpec(f"{spec.name}: ortho pair {a} {b} uses undeclared element {lab}")
        if a == b:
            raise OrthoNotInvolution(f"{spec.name}: {a} is paired with itself")
        i, j = idx[a], idx[b]
        if ortho[i] != -1 or ortho[j] != -1:
            dup = a if ortho[i] != -1 else b
            raise OrthoNotInvolution(f"{spec.name}: {dup} appears in more than one ortho pair")
        ortho[i], ortho[j] = j, i
    missing = [labels[i] for i in np.flatnonzero(ortho == -1)]
    if missing:
        raise OrthoNotInvolution(f"{spec.name}: no orthocomplement given for {', '.join(missing)}")
    return _assemble(spec.name, labels, leq, ortho)


def from_subset_family(spec: SubsetFamilySpec) -> FiniteOrtholattice:
    """Ortholattice of a complement-closed family ordered by inclusion.

    Meet and join come from the inclusion order, so they need not be
    intersection and union.
    """
    universe = spec.universe
    fam = list(spec.family)
    if len(set(fam)) != len(fam):
        raise InvalidSpec(f"{spec.name}: duplicate subsets in family")
    for s in fam:
        if not s <= universe:
            raise InvalidSpec(f"{spec.name}: {subset_label(s)} is not a subset of the universe")
    where = {s: i for i, s in enumerate(fam)}
    for s in fam:
        if universe - s not in where:
            raise NotComplementClosed(
                f"{spec.name}: complement {subset_label(universe - s)} of {subset_label(s)} is missing"
            )
    if frozenset() not in where:
        raise InvalidSpec(f"{spec.name}: family must contain the empty set")
    labels = spec.labels if spec.labels is not None else tuple(subset_label(s) for s in fam)
    if len(labels) != len(fam):
        raise InvalidSpec(f"{spec.name}: {len(labels)} labels for {len(fam)} subsets")
    n = len(fam)
    leq = np.array([[fam[i] <= fam[j] for j in range(n)] for i in range(n)], dtype=bool)
    ortho = np.array([where[universe - s] for s in fam], dtype=np.int64)
    return _assemble(spec.name, labels, leq, ortho)


def subalgebra(L: FiniteOrtholattice, elements: Iterable[int], name: str | None = None) -> FiniteOrtholattice:
    """Restrict ``L`` to a subset closed under ', meet and join.

    Elements keep their relative index order.
    """
    keep = sorted(set(int(e) for e in elements))
    ks = set(keep)
    for a in keep:
        if int(L.ortho[a]) not in ks:
            raise InvalidSpec(f"{L.label(a)}' = {L.label(L.ortho[a])} is outside the subset")
        for b in keep:
            for op, tab in (("meet", L.meet), ("join", L.join)):
                if int(tab[a, b]) not in ks:
                    raise InvalidSpec(f"{op}({L.label(a)}, {L.label(b)}) is outside the subset")
    pos = {e: i for i, e in enumerate(keep)}
    sub = np.ix_(keep, keep)
    leq = L.leq[sub].copy()
    ortho = np.array([pos[int(L.ortho[e])] for e in keep], dtype=np.int64)
    labels = [L.label(e) for e in keep]
    return _assemble(name or f"{L.name}|sub", labels, leq, ortho)


def invariant_violations(L: FiniteOrtholattice) -> list[str]:
    """Table-level sanity checks; an empty list means every one holds."""
    problems = []
    n = L.n
    leq, meet, join, o = L.leq, L.meet, L.join, L.ortho
    eye = np.eye(n, dtype=bool)
    if not leq[eye].all():
        problems.append("order is not reflexive")
    if (leq & leq.T & ~eye).any():
        problems.append("order is not antisymmetric")
    if ((leq.astype(np.int64) @ leq.astype(np.int64) > 0) & ~leq).any():
        problems.append("order is not transitive")
    for name, tab in (("meet", meet), ("join", join)):
        if not np.array_equal(tab, tab.T):
            problems.append(f"{name} is not commutative")
        lhs = tab[tab[:, :, None], np.arange(n)[None, None, :]]  # (a.b).c
        rhs = tab[np.arange(n)[:, None, None], tab[None, :, :]]  # a.(b.c)
        if not np.array_equal(lhs, rhs):
            problems.append(f"{name} is not associative")
    a = np.arange(n)
    # a ∩ b = a  iff  a ≤ b  iff  a ∪ b = b
    if not np.array_equal(meet == a[:, None], leq) or not np.array_equal(join == a[None, :], leq):
        problems.append("meet/join disagree with the order")
    if not np.array_equal(o[o], a):
        problems.append("ortho is not an involution")
    if (leq & ~leq[o][:, o].T).any():
        problems.append("ortho is not order-reversing")
    if not np.array_equal(meet, o[join[o][:, o]]):
        problems.append("De Morgan fails: a ∩ b != (a' ∪ b')'")
    if not np.array_equal(join, o[meet[o][:, o]]):
        problems.append("De Morgan fails: a ∪ b != (a' ∩ b')'")
    if not (meet[a, o] == L.bottom).all() or not (join[a, o] == L.top).all():
        problems.append("a ∩ a' / a ∪ a' are not the bounds")
    return problems


# --- isomorphism and O6 detection -------------------------------------------


def _signatures(L: FiniteOrtholattice) -> list[tuple]:
    h = L.heights()
    cov = np.zeros((L.n, L.n), dtype=bool)
    for i, j in L.covers():
        cov[i, j] = True
    up = cov.sum(axis=1)
    down = cov.sum(axis=0)
    below = L.leq.sum(axis=0)
    above = L.leq.sum(axis=1)
    base = [(int(h[i]), int(up[i]), int(down[i]), int(below[i]), int(above[i])) for i in range(L.n)]
    return [(base[i], base[int(L.ortho[i])]) for i in range(L.n)]


def find_isomorphism(L1: FiniteOrtholattice, L2: FiniteOrtholattice) -> dict[int, int] | None:
    """First order- and ortho-preserving bijection from ``L1`` onto ``L2``.

    "First" means the tuple ``(f(0), f(1), ...)`` is lexicographically least.
    """
    if L1.n != L2.n:
        return None
    n = L1.n
    s1, s2 = _signatures(L1), _signatures(L2)
    if sorted(s1) != sorted(s2):
        return None
    cand = [[w for w in range(n) if s2[w] == s1[v]] for v in range(n)]
    fwd = [-1] * n
    used = [False] * n
    leq1, leq2, o1, o2 = L1.leq, L2.leq, L1.ortho, L2.ortho

    def consistent(v, w):
        for u in range(n):
            fu = fwd[u]
            if fu < 0:
                continue
            if leq1[u, v] != leq2[fu, w] or leq1[v, u] != leq2[w, fu]:
                return False
        return True

    def search(v):
        while v < n and fwd[v] >= 0:
            v += 1
        if v == n:
            return True
        vo = int(o1[v])
        for w in cand[v]:
            if used[w]:
                continue
            wo = int(o2[w])
            if (vo == v) != (wo == w) or (vo != v and used[wo]):
                continue
            if not consistent(v, w):
                continue
            fwd[v], used[w] = w, True
            if vo != v:
                if s2[wo] != s1[vo] or not consistent(vo, wo):
                    fwd[v], used[w] = -1, False
                    continue
                fwd[vo], used[wo] = wo, True
            if search(v + 1):
                return True
            fwd[v], used[w] = -1, False
            if vo != v:
                fwd[vo], used[wo] = -1, False
        return False

    if search(0):
        return {v: fwd[v] for v in range(n)}
    return None


def find_o6_subalgebra(L: FiniteOrtholattice) -> tuple[int, int, int, int, int, int] | None:
    """First sextuple ``(0, a, b, b', a', 1)`` spanning a copy of O6.

    For ``0 < a < b < 1`` the set ``{0, a, b, b', a', 1}`` is a subalgebra
    isomorphic to O6 exactly when ``a ∪ b' = 1``; every other meet and join
    of the six is then forced by the order.
    """
    lo, hi = L.bottom, L.top
    for a in range(L.n):
        if a in (lo, hi):
            continue
        for b in range(L.n):
            if b in (lo, hi, a) or not L.leq[a, b]:
                continue
            bo, ao = int(L.ortho[b]), int(L.ortho[a])
            if L.join[a, bo] != hi:
                continue
            six = (lo, a, b, bo, ao, hi)
            if len(set(six)) == 6:
                return six
    return None


# --- text format -----------------------------------------------------------------------


def parse_hasse_text(text: str) -> HasseSpec:
    """Parse the line-oriented lattice format.

    ::

        lattice O6
        elements 0 x x' y y' 1
        covers 0 x ; 0 y' ; x y ; y' x' ; y 1 ; x' 1
        ortho 0 1 ; x x' ; y y'

    ``covers`` and ``ortho`` may be repeated; their pairs accumulate.  ``#``
    starts a comment.  Any other directive is a :class:`FormatError`.
    """
    name = None
    elements = None
    covers: list[tuple[str, str]] = []
    ortho: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "lattice":
            if name is not None:
                raise FormatError("second 'lattice' line", lineno)
            if len(rest.split()) != 1:
                raise FormatError("'lattice' takes exactly one name", lineno)
            name = rest
        elif word == "elements":
            if elements is not None:
                raise FormatError("second 'elements' line", lineno)
            elements = tuple(rest.split())
            if not elements:
                raise FormatError("'elements' needs at least one label", lineno)
        elif word in ("covers", "ortho"):
            target = covers if word == "covers" else ortho
            for item in rest.split(";"):
                toks = item.split()
                if not toks:
                    continue
                if len(toks) != 2:
                    raise FormatError(f"{word}: expected a pair of labels, got {item.strip()!r}", lineno)
                target.append((toks[0], toks[1]))
        else:
            raise FormatError(f"unknown directive {word!r}", lineno)
    if name is None:
        raise FormatError("missing 'lattice <name>' line")
    if elements is None:
        raise FormatError("missing 'elements' line")
    return HasseSpec(name, elements, tuple(covers), tuple(ortho))


def format_hasse_text(spec: HasseSpec) -> str:
    """Inverse of :func:`parse_hasse_text`."""

    def pairs(ps):
        return " ; ".join(f"{a} {b}" for a, b in ps)

    lines = [f"lattice {spec.name}", "elements " + " ".join(spec.elements)]
    if spec.covers:
        lines.append("covers " + pairs(spec.covers))
    lines.append("ortho " + pairs(spec.ortho))
    return "\n".join(lines) + "\n"
