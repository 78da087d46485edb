"""Finite groups given by their Cayley tables.

Elements are 0-based indices ``0..n-1`` everywhere inside the library; the
text format and the CLI speak 1-based ids and convert at the boundary.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

FULL_ASSOCIATIVITY_LIMIT = 512
ASSOCIATIVITY_SAMPLES = 1_000_000


class GroupError(Exception):
    """Base class for group-theoretic failures."""


class ParseError(GroupError):
    pass


class AxiomError(GroupError):
    """A table that violates a group law; ``law`` and ``witness`` say which."""

    def __init__(self, message: str, law: str, witness: tuple[int, ...] = ()):
        super().__init__(message)
        self.law = law
        self.witness = witness


class NotNormalError(GroupError):
    def __init__(self, message: str, witness: int):
        super().__init__(message)
        self.witness = witness


class CayleyGroup:
    """A group of order ``n`` stored as its full ``n x n`` multiplication table.

    ``table[a, b]`` is the product ``a*b``. The identity and inverses are
    detected from the table rather than assumed.
    """

    def __init__(self, table, *, check: bool = True, seed: int = 0):
        t = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise AxiomError("table must be a non-empty square array", "shape")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            bad = np.argwhere((t < 0) | (t >= n))[0]
            raise AxiomError(
                f"entry at ({bad[0] + 1},{bad[1] + 1}) is outside 1..{n}",
                "closure", (int(bad[0]), int(bad[1])),
            )
        t.setflags(write=False)
        self.table = t
        self.order = n
        self.identity = _find_identity(t)
        self.inverses = _find_inverses(t, self.identity)
        self.inverses.setflags(write=False)
        if check:
            check_associativity(t, seed=seed)
        self._element_orders: np.ndarray | None = None
        self._classes: list[np.ndarray] | None = None
        self._generators: list[int] | None = None
        self._abelian: bool | None = None

    def __repr__(self):
        return f"CayleyGroup(order={self.order})"

    def __len__(self):
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            self._abelian = bool(np.array_equal(self.table, self.table.T))
        return self._abelian

    def power(self, xs, k: int) -> np.ndarray:
        """Elementwise ``x**k`` for an array of elements (k >= 0)."""
        xs = np.asarray(xs, dtype=np.int32)
        result = np.full(xs.shape, self.identity, dtype=np.int32)
        base = xs.copy()
        while k:
            if k & 1:
                result = self.table[result, base]
            base = self.table[base, base]
            k >>= 1
        return result

    def element_orders(self) -> np.ndarray:
        if self._element_orders is None:
            n = self.order
            idx = np.arange(n, dtype=np.int32)
            orders = np.zeros(n, dtype=np.int64)
            cur = idx.copy()
            k = 1
            while True:
                hit = (cur == self.identity) & (orders == 0)
                orders[hit] = k
                if orders.all():
                    break
                cur = self.table[cur, idx]
                k += 1
            orders.setflags(write=False)
            self._element_orders = orders
        return self._element_orders

    def conjugacy_class(self, x: int) -> np.ndarray:
        return np.unique(self.table[self.table[:, x], self.inverses])

    def conjugacy_classes(self) -> list[np.ndarray]:
        """Classes as sorted arrays, ordered by their smallest element."""
        if self._classes is None:
            if self.is_abelian:
                self._classes = [np.array([g], dtype=np.int32) for g in range(self.order)]
            else:
                seen = np.zeros(self.order, dtype=bool)
                classes = []
                for x in range(self.order):
                    if seen[x]:
                        continue
                    c = self.conjugacy_class(x)
                    seen[c] = True
                    classes.append(c)
                self._classes = classes
        return self._classes

    def generators(self) -> list[int]:
        """A small generating set, found greedily in increasing id order."""
        if self._generators is None:
            self._generators = list(closure(self, range(self.order)).gens)
        return self._generators

    def restrict(self, H: "Subgroup") -> "CayleyGroup":
        """``H`` as a group in its own right; element ``j`` is ``H.elements[j]``."""
        rank = np.full(self.order, -1, dtype=np.int32)
        rank[H.elements] = np.arange(H.order, dtype=np.int32)
        sub = rank[self.table[np.ix_(H.elements, H.elements)]]
        return CayleyGroup(sub, check=False)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, [self.identity], gens=(), check=False)

    def whole(self) -> "Subgroup":
        return Subgroup(self, np.arange(self.order), gens=self.generators(), check=False)

    def to_text(self) -> str:
        lines = [str(self.order)]
        for row in self.table + 1:
            lines.append(" ".join(map(str, row.tolist())))
        return "\n".join(lines) + "\n"


def _find_identity(t: np.ndarray) -> int:
    n = t.shape[0]
    idx = np.arange(n)
    rows = np.flatnonzero((t == idx[None, :]).all(axis=1))
    for e in rows:
        if np.array_equal(t[:, e], idx):
            return int(e)
    raise AxiomError("no identity element", "identity")


def _find_inverses(t: np.ndarray, e: int) -> np.ndarray:
    hits = t == e
    has = hits.any(axis=1)
    if not has.all():
        g = int(np.flatnonzero(~has)[0])
        raise AxiomError(f"no inverse for element {g + 1}", "inverse", (g,))
    inv = hits.argmax(axis=1).astype(np.int32)
    left = t[inv, np.arange(t.shape[0])]
    if (left != e).any():
        g = int(np.flatnonzero(left != e)[0])
        raise AxiomError(f"inverse of element {g + 1} is not two-sided", "inverse", (g,))
    return inv


def check_associativity(t: np.ndarray, *, seed: int = 0,
                        samples: int = ASSOCIATIVITY_SAMPLES) -> None:
    """Full check up to ``FULL_ASSOCIATIVITY_LIMIT`` elements, sampled above."""
    n = t.shape[0]
    if n <= FULL_ASSOCIATIVITY_LIMIT:
        for a in range(n):
            left = t[t[a]]          # (a*b)*c over all (b, c)
            right = t[a][t]         # a*(b*c)
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                _assoc_fail(a, int(b), int(c))
        return
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, samples), dtype=np.int64)
    bad = t[t[a, b], c] != t[a, t[b, c]]
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        _assoc_fail(int(a[i]), int(b[i]), int(c[i]))


def _assoc_fail(a: int, b: int, c: int):
    raise AxiomError(
        f"associativity fails for ({a + 1},{b + 1},{c + 1})", "associativity", (a, b, c)
    )


_COMMENT = re.compile(r"^\s*#")


def parse_table(text: str) -> np.ndarray:
    """Parse the Cayley-table text format into a 0-based array."""
    lines = [ln for ln in text.replace("\r\n", "\n").split("\n")
             if ln.strip() and not _COMMENT.match(ln)]
    if not lines:
        raise ParseError("empty table file")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError(f"first line must be the order, got {lines[0].strip()!r}") from None
    if n < 1:
        raise ParseError("order must be positive")
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for i, ln in enumerate(lines[1:], start=1):
        parts = ln.split()
        if len(parts) != n:
            raise ParseError(f"row {i} has {len(parts)} entries, expected {n}")
        try:
            rows.append([int(x) for x in parts])
        except ValueError:
            raise ParseError(f"row {i} contains a non-integer entry") from None
    return np.asarray(rows, dtype=np.int64) - 1


def load_group(data: bytes | str, *, seed: int = 0) -> CayleyGroup:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError:
            raise ParseError("table file is not valid UTF-8") from None
    return CayleyGroup(parse_table(data), seed=seed)


def read_group(path, *, seed: int = 0) -> CayleyGroup:
    with open(path, "rb") as fh:
        return load_group(fh.read(), seed=seed)


class Subgroup:
    """A subgroup of ``parent`` as a sorted element array plus a membership mask."""

    def __init__(self, parent: CayleyGroup, elements: Iterable[int], *,
                 gens: Sequence[int] | None = None, check: bool = True):
        els = np.unique(np.asarray(list(elements) if not isinstance(elements, np.ndarray)
                                   else elements, dtype=np.int32))
        mask = np.zeros(parent.order, dtype=bool)
        mask[els] = True
        self.parent = parent
        self.elements = els
        self.membership = mask
        self.order = int(els.size)
        self._gens = None if gens is None else tuple(int(g) for g in gens)
        els.setflags(write=False)
        mask.setflags(write=False)
        if check:
            self._certify()

    def _certify(self):
        p = self.parent
        if not self.membership[p.identity]:
            raise GroupError("subgroup does not contain the identity")
        if not self.membership[p.inverses[self.elements]].all():
            raise GroupError("subgroup is not closed under inverses")
        if not self.membership[p.table[np.ix_(self.elements, self.elements)]].all():
            raise GroupError("subgroup is not closed under multiplication")
        if p.order % self.order:
            raise GroupError("subgroup order does not divide the group order")

    @property
    def gens(self) -> tuple[int, ...]:
        if self._gens is None:
            self._gens = closure(self.parent, self.elements).gens
        return self._gens

    def __contains__(self, g) -> bool:
        return bool(self.membership[g])

    def __len__(self):
        return self.order

    def __le__(self, other: "Subgroup") -> bool:
        return bool(other.membership[self.elements].all())

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and np.array_equal(self.elements, other.elements)

    def __hash__(self):
        return hash(self.elements.tobytes())

    def __repr__(self):
        return f"Subgroup(order={self.order}, index={self.index})"

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def key(self) -> bytes:
        return self.membership.tobytes()


def closure(G: CayleyGroup, gens: Iterable[int], *, base: Subgroup | None = None,
            limit: int | None = None) -> Subgroup | None:
    """Smallest subgroup containing ``gens`` (and ``base``, if given).

    Grows the group one generator at a time as a union of right cosets of the
    previous stage. Returns ``None`` once the size would exceed ``limit``;
    with ``limit = n // 2`` that means the generated group is ``G`` itself.
    """
    T = G.table
    if base is None:
        mask = np.zeros(G.order, dtype=bool)
        mask[G.identity] = True
        elems = np.array([G.identity], dtype=np.int32)
        used: list[int] = []
    else:
        mask = base.membership.copy()
        elems = base.elements
        used = list(base.gens)
    for g in gens:
        g = int(g)
        if mask[g]:
            continue
        used.append(g)
        prev = elems
        chunks = [prev]
        size = prev.size
        reps = [G.identity]
        i = 0
        while i < len(reps):
            r = reps[i]
            for s in used:
                t = int(T[r, s])
                if not mask[t]:
                    coset = T[prev, t]
                    mask[coset] = True
                    chunks.append(coset)
                    reps.append(t)
                    size += coset.size
                    if limit is not None and size > limit:
                        return None
            i += 1
        elems = np.concatenate(chunks)
    return Subgroup(G, np.flatnonzero(mask), gens=used, check=False)


@dataclass(frozen=True)
class Transversal:
    subgroup: Subgroup
    side: str
    reps: np.ndarray
    coset_of: np.ndarray

    @property
    def index(self) -> int:
        return int(self.reps.size)


def transversal(G: CayleyGroup, H: Subgroup, side: str = "right") -> Transversal:
    """Coset representatives picked by a smallest-id scan, identity first.

    ``side="right"`` partitions ``G`` into cosets ``H*r``; ``"left"`` into ``r*H``.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    T = G.table
    coset_of = np.full(G.order, -1, dtype=np.int32)
    reps = []
    order = [G.identity] + [g for g in range(G.order) if g != G.identity]
    for g in order:
        if coset_of[g] >= 0:
            continue
        members = T[H.elements, g] if side == "right" else T[g, H.elements]
        coset_of[members] = len(reps)
        reps.append(g)
    reps = np.asarray(reps, dtype=np.int32)
    reps.setflags(write=False)
    coset_of.setflags(write=False)
    return Transversal(H, side, reps, coset_of)


def _conjugates(G: CayleyGroup, conj_by, h: int) -> np.ndarray:
    conj_by = np.asarray(conj_by, dtype=np.int32)
    return G.table[G.table[conj_by, h], G.inverses[conj_by]]


def non_normalizing_witness(G: CayleyGroup, H: Subgroup) -> int | None:
    """A generator ``g`` of ``G`` with ``gHg^-1 != H``, or ``None``."""
    gens = np.asarray(G.generators(), dtype=np.int32)
    if gens.size == 0:
        return None
    ok = np.ones(gens.size, dtype=bool)
    for h in H.gens:
        ok &= H.membership[_conjugates(G, gens, h)]
    bad = np.flatnonzero(~ok)
    return int(gens[bad[0]]) if bad.size else None


def is_normal(G: CayleyGroup, H: Subgroup) -> bool:
    return non_normalizing_witness(G, H) is None


def normalizer(G: CayleyGroup, H: Subgroup) -> Subgroup:
    """``{g : gHg^-1 = H}``; checking the generators of ``H`` suffices."""
    ok = np.ones(G.order, dtype=bool)
    every = np.arange(G.order, dtype=np.int32)
    for h in H.gens:
        ok &= H.membership[_conjugates(G, every, h)]
    return Subgroup(G, np.flatnonzero(ok), check=False)


@dataclass(frozen=True)
class QuotientGroup:
    base: CayleyGroup
    canonical_map: np.ndarray
    section: np.ndarray
    kernel: Subgroup

    @property
    def parent(self) -> CayleyGroup:
        return self.kernel.parent


def quotient(G: CayleyGroup, N: Subgroup) -> QuotientGroup:
    w = non_normalizing_witness(G, N)
    if w is not None:
        raise NotNormalError(f"subgroup is not normal: element {w + 1} does not normalize it", w)
    tr = transversal(G, N, "right")
    reps = tr.reps
    qt = tr.coset_of[G.table[np.ix_(reps, reps)]]
    return QuotientGroup(CayleyGroup(qt, check=False), tr.coset_of, reps, N)


def lift(Q: QuotientGroup, S: Subgroup) -> Subgroup:
    """Full preimage of ``S`` under the canonical map."""
    els = np.flatnonzero(S.membership[Q.canonical_map])
    return Subgroup(Q.parent, els, check=False)


def subgroup_from_ids(G: CayleyGroup, ids: Iterable[int]) -> Subgroup:
    return Subgroup(G, ids)
