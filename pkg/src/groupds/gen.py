"""Cayley tables for the standard test families.

Generated tables always put the identity at index 0 and number elements
deterministically, so the same recipe yields a byte-identical file.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

import numpy as np

from .core import CayleyGroup, GroupError, ParseError

MAX_ORDER = 6000


class SizeError(GroupError):
    pass


def _guard(n: int):
    if n > MAX_ORDER:
        raise SizeError(f"group order {n} exceeds the limit of {MAX_ORDER}")
    if n < 1:
        raise SizeError("group order must be positive")


def cyclic(n: int) -> np.ndarray:
    _guard(n)
    i = np.arange(n)
    return ((i[:, None] + i[None, :]) % n).astype(np.int32)


def dihedral(m: int) -> np.ndarray:
    """Order ``2m``; element ``s^j r^i`` has index ``j*m + i``."""
    _guard(2 * m)
    if m < 1:
        raise SizeError("dihedral parameter must be positive")
    idx = np.arange(2 * m)
    j, i = idx // m, idx % m
    a, b = j[:, None], i[:, None]
    c, d = j[None, :], i[None, :]
    sign = np.where(c == 1, -1, 1)
    jj = (a + c) % 2
    ii = (sign * b + d) % m
    return (jj * m + ii).astype(np.int32)


def permutation_table(perms: np.ndarray) -> np.ndarray:
    """Table of a permutation group listed as rows of ``perms`` (shape ``n x d``).

    Rows must be sorted lexicographically. Products compose left to right:
    ``(p*q)(x) = q(p(x))``.
    """
    perms = np.asarray(perms, dtype=np.int64)
    n, d = perms.shape
    _guard(n)
    weights = (d ** np.arange(d - 1, -1, -1)).astype(np.int64) if d else np.zeros(0, np.int64)
    keys = perms @ weights
    order = np.argsort(keys)
    if not np.array_equal(order, np.arange(n)):
        raise ValueError("permutations must be sorted lexicographically")
    # composite[a, b, x] = perms[b, perms[a, x]]
    table = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        comp = perms[:, perms[a]]
        table[a] = np.searchsorted(keys, comp @ weights)
    return table


def symmetric(m: int) -> np.ndarray:
    n = 1
    for k in range(2, m + 1):
        n *= k
    _guard(n)
    perms = np.array(list(itertools.permutations(range(m))), dtype=np.int64).reshape(n, m)
    return permutation_table(perms)


def _parity(p) -> int:
    p = list(p)
    s = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            s ^= p[i] > p[j]
    return s


def alternating(m: int) -> np.ndarray:
    n = 1
    for k in range(2, m + 1):
        n *= k
    _guard(max(1, n // 2))
    perms = [p for p in itertools.permutations(range(m)) if not _parity(p)]
    return permutation_table(np.array(perms, dtype=np.int64).reshape(len(perms), m))


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(line: str, degree: int | None = None) -> list[int]:
    """Disjoint-cycle notation with 1-based points, e.g. ``(1 2 3)(4 5)``."""
    text = line.strip()
    if not text or text == "()":
        return list(range(degree or 0))
    if _CYCLE.sub("", text).strip():
        raise ParseError(f"not in cycle notation: {line!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        parts = body.replace(",", " ").split()
        try:
            pts = [int(x) for x in parts]
        except ValueError:
            raise ParseError(f"non-integer point in {line!r}") from None
        if any(x < 1 for x in pts):
            raise ParseError(f"points must be positive in {line!r}")
        if len(set(pts)) != len(pts):
            raise ParseError(f"repeated point inside a cycle in {line!r}")
        cycles.append(pts)
    flat = [x for c in cycles for x in c]
    if len(set(flat)) != len(flat):
        raise ParseError(f"cycles are not disjoint in {line!r}")
    d = max([degree or 0] + flat)
    perm = list(range(d))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            perm[a - 1] = b - 1
    return perm


def parse_perm_gens(text: str) -> list[list[int]]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    gens = [parse_permutation(ln) for ln in lines]
    d = max([len(g) for g in gens] + [1])
    return [g + list(range(len(g), d)) for g in gens]


def perm_group(gens: list[list[int]]) -> np.ndarray:
    """Close a set of permutations and return the table in lexicographic order."""
    if not gens:
        return np.zeros((1, 1), dtype=np.int32)
    d = len(gens[0])
    ident = tuple(range(d))
    seen = {ident}
    frontier = [ident]
    gs = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gs:
                q = tuple(g[x] for x in p)
                if q not in seen:
                    seen.add(q)
                    if len(seen) > MAX_ORDER:
                        raise SizeError(f"generated group exceeds the limit of {MAX_ORDER}")
                    nxt.append(q)
        frontier = nxt
    perms = np.array(sorted(seen), dtype=np.int64)
    return permutation_table(perms)


def direct_product(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    """Element ``(a, b)`` gets index ``a * n2 + b`` (0-based)."""
    n1, n2 = t1.shape[0], t2.shape[0]
    _guard(n1 * n2)
    a = np.arange(n1 * n2) // n2
    b = np.arange(n1 * n2) % n2
    return (t1[a[:, None], a[None, :]] * n2 + t2[b[:, None], b[None, :]]).astype(np.int32)


def psl2(q: int) -> np.ndarray:
    """PSL(2, q) acting on the projective line, for q prime or q = 8."""
    if q == 8:
        gens = _psl2_8_gens()
    else:
        if not all(q % p for p in range(2, int(q ** 0.5) + 1)) or q < 2:
            raise ValueError("psl2 supports prime q and q = 8")
        inf = q
        # x -> x + 1 and x -> -1/x on {0..q-1, inf}
        t = [(x + 1) % q for x in range(q)] + [inf]
        s = []
        for x in range(q + 1):
            if x == inf:
                s.append(0)
            elif x == 0:
                s.append(inf)
            else:
                s.append((-pow(x, -1, q)) % q)
        # x -> a^2 x for a generator of squares
        sq = next(a for a in range(2, q) if _is_primitive(a, q)) if q > 3 else 1
        d = [(sq * sq * x) % q for x in range(q)] + [inf]
        gens = [t, s, d]
    return perm_group(gens)


def _is_primitive(a: int, p: int) -> bool:
    return len({pow(a, k, p) for k in range(1, p)}) == p - 1


def _psl2_8_gens() -> list[list[int]]:
    # GF(8) with x^3 = x + 1; elements are 3-bit integers, point 8 is infinity
    def mul(a, b):
        r = 0
        for i in range(3):
            if b >> i & 1:
                r ^= a << i
        for i in (4, 3):
            if r >> i & 1:
                r ^= 0b1011 << (i - 3)
        return r

    inv = {a: next(b for b in range(1, 8) if mul(a, b) == 1) for a in range(1, 8)}
    inf = 8
    t = [x ^ 1 for x in range(8)] + [inf]
    s = [inf if x == 0 else inv[x] for x in range(8)] + [0]
    d = [mul(2, x) for x in range(8)] + [inf]
    return [t, s, d]


def quaternion() -> np.ndarray:
    # regular representation of Q8 on {1,-1,i,-i,j,-j,k,-k}
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
            ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"}

    def mul(x, y):
        sx, ux = (x[0] == "-"), x.lstrip("-")
        sy, uy = (y[0] == "-"), y.lstrip("-")
        if ux == "1":
            r = uy
        elif uy == "1":
            r = ux
        else:
            r = base[(ux, uy)]
        neg = sx ^ sy ^ (r[0] == "-")
        r = r.lstrip("-")
        return ("-" if neg else "") + r

    right = lambda g: [names.index(mul(x, g)) for x in names]
    return perm_group([right("i"), right("j")])


@dataclass
class GenRecipe:
    kind: str
    params: list[int] = field(default_factory=list)
    text: str | None = None


KINDS = ("cyclic", "dihedral", "symmetric", "alternating", "perm-gens", "direct-product")


def gen_group(recipe: GenRecipe) -> np.ndarray:
    k, p = recipe.kind, recipe.params
    if k == "cyclic":
        return cyclic(p[0])
    if k == "dihedral":
        return dihedral(p[0])
    if k == "symmetric":
        return symmetric(p[0])
    if k == "alternating":
        return alternating(p[0])
    if k == "perm-gens":
        if recipe.text is None:
            raise ParseError("perm-gens needs a generator file")
        return perm_group(parse_perm_gens(recipe.text))
    if k == "direct-product":
        if len(p) < 2:
            raise ValueError("direct-product needs at least two cyclic orders")
        for x in p:
            _guard(x)
        _guard(int(np.prod(p)))
        t = cyclic(p[0])
        for x in p[1:]:
            t = direct_product(t, cyclic(x))
        return t
    raise ValueError(f"unknown kind {k!r}; choose from {', '.join(KINDS)}")


def table_text(table: np.ndarray) -> str:
    n = table.shape[0]
    rows = [" ".join(map(str, r)) for r in (np.asarray(table) + 1).tolist()]
    return f"{n}\n" + "\n".join(rows) + "\n"


def corpus() -> dict[str, np.ndarray]:
    """The named groups used for end-to-end checks."""
    out: dict[str, np.ndarray] = {}
    for n in range(2, 65):
        out[f"Z{n}"] = cyclic(n)
    for k in range(7, 12):
        out[f"Z{2 ** k}"] = cyclic(2 ** k)
    for m in range(1, 65):
        out[f"D{2 * m}"] = dihedral(m)
    for m in range(2, 41):
        out[f"Z{m}xZ{m}"] = direct_product(cyclic(m), cyclic(m))
    for m in range(3, 7):
        out[f"S{m}"] = symmetric(m)
    for m in range(4, 8):
        out[f"A{m}"] = alternating(m)
    for q in (7, 8, 11):
        out[f"PSL2_{q}"] = psl2(q)
    out["S4xZ5"] = direct_product(symmetric(4), cyclic(5))
    out["Q8xZ3"] = direct_product(quaternion(), cyclic(3))
    return out


def as_group(table: np.ndarray, **kw) -> CayleyGroup:
    return CayleyGroup(table, **kw)
