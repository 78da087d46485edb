"""Composition series, Sylow subgroups and the two-step subgroup chain search."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import CayleyGroup, GroupError, Subgroup, closure, normalizer


class ChainNotFound(GroupError):
    def __init__(self, message: str, best: list[tuple[int, int, int]] | None = None):
        super().__init__(message)
        self.best = best or []


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def _class_order(G: CayleyGroup, seed: int | None) -> list[np.ndarray]:
    classes = [c for c in G.conjugacy_classes() if not (c.size == 1 and c[0] == G.identity)]
    orders = G.element_orders()
    if seed is None:
        tie = [0] * len(classes)
    else:
        tie = np.random.default_rng(seed).permutation(len(classes)).tolist()
    keyed = sorted(range(len(classes)),
                   key=lambda i: (int(orders[classes[i][0]]), classes[i].size, tie[i],
                                  int(classes[i][0])))
    return [classes[i] for i in keyed]


def normal_closure(G: CayleyGroup, xs, *, base: Subgroup | None = None,
                   limit: int | None = None) -> Subgroup | None:
    gens = np.unique(np.concatenate([G.conjugacy_class(int(x)) for x in xs])) \
        if len(xs) else np.array([], dtype=np.int32)
    return closure(G, gens, base=base, limit=limit)


def maximal_normal_subgroup(G: CayleyGroup, seed: int | None = None) -> Subgroup:
    """A maximal proper normal subgroup of ``G`` (``G`` nontrivial).

    Conjugacy classes are absorbed one at a time, smallest element order
    first, whenever the normal subgroup they generate together with the
    current one stays proper. After one pass nothing more can be absorbed,
    which is exactly maximality. ``seed`` perturbs tie-breaking only.
    """
    n = G.order
    if n == 1:
        raise GroupError("the trivial group has no proper normal subgroup")
    N = G.trivial_subgroup()
    if is_prime(n):
        return N
    limit = n // 2
    for c in _class_order(G, seed):
        if N.membership[c[0]]:
            continue
        M = closure(G, c, base=N, limit=limit)
        if M is not None:
            N = M
            if is_prime(n // N.order):
                break
    return N


def is_simple(G: CayleyGroup) -> bool:
    n = G.order
    if n < 2:
        return False
    if is_prime(n):
        return True
    if G.is_abelian:
        return False
    limit = n // 2
    for c in _class_order(G, None):
        if closure(G, c, limit=limit) is not None:
            return False
    return True


@dataclass
class CompositionSeries:
    chain: list[Subgroup]
    factor_orders: list[int] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.chain) - 1

    @property
    def orders(self) -> list[int]:
        return [H.order for H in self.chain]

    def is_solvable(self) -> bool:
        return all(is_prime(f) for f in self.factor_orders)


def composition_series(G: CayleyGroup, seed: int | None = None) -> CompositionSeries:
    H = G.whole()
    chain = [H]
    while H.order > 1:
        sub = G.restrict(H)
        s = None if seed is None else seed + len(chain)
        M = maximal_normal_subgroup(sub, seed=s)
        H = Subgroup(G, H.elements[M.elements], check=False)
        chain.append(H)
    factors = [a.order // b.order for a, b in zip(chain, chain[1:])]
    return CompositionSeries(chain, factors)


def sylow_subgroup(G: CayleyGroup, p: int) -> Subgroup:
    n = G.order
    if p < 2 or n % p:
        raise GroupError(f"{p} does not divide the group order {n}")
    target = p_part(n, p)
    orders = G.element_orders()
    # order is a power of p and > 1
    ppow = np.array([o > 1 and p_part(int(o), p) == o for o in orders])
    if target == 1 or not ppow.any():
        return G.trivial_subgroup()
    x = int(np.flatnonzero(ppow)[0])
    P = closure(G, [x])
    while P.order < target:
        N = normalizer(G, P)
        cand = N.elements[~P.membership[N.elements]]
        ok = P.membership[G.power(cand, p)]
        y = int(cand[np.flatnonzero(ok)[0]])
        P = closure(G, [y], base=P)
    return P


def index_p_chain(G: CayleyGroup, P: Subgroup, bound_sq: int) -> Subgroup:
    """Walk down a p-group through index-p normal subgroups until ``|P|^2 <= bound_sq``."""
    while P.order * P.order > bound_sq:
        sub = G.restrict(P)
        M = maximal_normal_subgroup(sub)
        P = Subgroup(G, P.elements[M.elements], check=False)
    return P


@dataclass
class ChainCandidate:
    H2: Subgroup
    H1: Subgroup
    indices: tuple[int, int]
    method_tag: str

    def predicates(self, b1, b2) -> dict[str, bool]:
        return chain_predicates(self.H1.parent.order, self.H1.order, self.H2.order, b1, b2)


def chain_predicates(h: int, h1: int, h2: int, b1, b2) -> dict[str, bool]:
    """The squared-integer form of the chain bounds, shared with the audit."""
    b1, b2 = Fraction(b1), Fraction(b2)
    i1, i2 = Fraction(h, h1), Fraction(h1, h2)
    return {
        "H2_sq_le_H": h2 * h2 <= h,
        "index1_sq_le": i1 * i1 <= b1 * b1 * h,
        "index2_sq_le": i2 * i2 <= b2 * b2 * h,
        "divisibility": h1 % h2 == 0 and h % h1 == 0,
    }


def _ok(h, H1, H2, b1, b2) -> bool:
    return all(chain_predicates(h, H1.order, H2.order, b1, b2).values())


def find_chain(H: CayleyGroup, b1=5, b2=5, *, seed: int = 0,
               attempts: int = 512) -> ChainCandidate:
    """Find ``1 <= H2 <= H1 <= H`` with ``|H2| <= sqrt|H|`` and both indices small.

    Tries normalizers of Sylow subgroups first, then randomly generated
    subgroups, then every nested pair in the pooled candidates.
    """
    n = H.order
    if H.is_abelian or not is_simple(H):
        raise GroupError("find_chain needs a nonabelian simple group")
    pool: dict[bytes, Subgroup] = {}
    best: list[tuple[int, int, int]] = []

    def make(H2, H1, tag):
        return ChainCandidate(H2, H1, (n // H1.order, H1.order // H2.order), tag)

    for p in prime_factors(n):
        P = sylow_subgroup(H, p)
        H1 = normalizer(H, P)
        H2 = index_p_chain(H, P, n)
        pool.setdefault(H1.key(), H1)
        pool.setdefault(H2.key(), H2)
        best.append((n // H1.order, H1.order // H2.order, H2.order))
        if _ok(n, H1, H2, b1, b2):
            return make(H2, H1, "method1")

    rng = np.random.default_rng(seed)
    limit = n // 2
    for _ in range(attempts):
        k = int(rng.integers(1, 4))
        S = closure(H, rng.integers(0, n, size=k).tolist(), limit=limit)
        if S is None or S.key() in pool:
            continue
        pool[S.key()] = S
        sub = H.restrict(S)
        for p in prime_factors(S.order):
            Ps = sylow_subgroup(sub, p)
            P = Subgroup(H, S.elements[Ps.elements], check=False)
            P = index_p_chain(H, P, n)
            pool.setdefault(P.key(), P)
            best.append((n // S.order, S.order // P.order, P.order))
            if _ok(n, S, P, b1, b2):
                return make(P, S, "method2")

    members = sorted(pool.values(), key=lambda s: -s.order)
    for H1 in members:
        for H2 in members:
            if H2.order <= H1.order and H2 <= H1 and _ok(n, H1, H2, b1, b2):
                return make(H2, H1, "search")
    best.sort()
    raise ChainNotFound(
        f"no chain satisfies the bounds with b1={b1}, b2={b2} "
        f"(best [H:H1],[H1:H2],|H2| = {best[:5]})", best)
