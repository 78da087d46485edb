"""Choose a subgroup chain for a group and assemble the layered structure."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import structure as st
from .core import CayleyGroup, GroupError, Subgroup, lift, quotient
from .series import ChainNotFound, CompositionSeries, composition_series, find_chain, is_prime

MAX_RESTARTS = 8


@dataclass
class Layer:
    kind: str              # coset | cyclic
    group_order: int
    subgroup_order: int

    @property
    def index(self) -> int:
        return self.group_order // self.subgroup_order


@dataclass
class BuildPlan:
    """The subgroup chain ``chain[0] = G > ... > chain[-1]`` and one layer per step.

    ``layers[j]`` extends ``chain[j + 1]`` to ``chain[j]``; the last chain
    member is stored as a plain table.
    """
    case_tag: str
    pivot_index: int
    chain: list[Subgroup]
    layers: list[Layer]
    series: CompositionSeries
    inserted: tuple[Subgroup, Subgroup] | None = None
    b1: float = 5
    b2: float = 5
    trace: list[str] = field(default_factory=list)
    seed: int = 0


@dataclass
class SpaceReport:
    n: int
    total_words: int
    words_per_n: float
    lookup_bound: int
    layers: list[dict]
    build_seconds: float
    case_tag: str = ""
    plan: BuildPlan | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "n": self.n, "total_words": self.total_words, "words_per_n": self.words_per_n,
            "lookup_bound": self.lookup_bound, "layers": self.layers,
            "build_seconds": self.build_seconds, "case_tag": self.case_tag,
        }


def _case1_pivot(orders: list[int], n: int) -> int | None:
    # sqrt(n)/2 <= |G_i| <= sqrt(n), with the largest such order preferred
    hits = [i for i, o in enumerate(orders) if 4 * o * o >= n and o * o <= n]
    return min(hits, key=lambda i: (-orders[i], i)) if hits else None


def _layers_for(chain: list[Subgroup], kinds: list[str]) -> list[Layer]:
    return [Layer(k, a.order, b.order) for k, a, b in zip(kinds, chain, chain[1:])]


def plan(G: CayleyGroup, b1=5, b2=5, *, seed: int = 0) -> BuildPlan:
    if b1 < 1 or b2 < 1:
        raise ValueError("b1 and b2 must be at least 1")
    n = G.order
    trace = ["composition_series"]
    cs = composition_series(G)
    orders = cs.orders
    i = _case1_pivot(orders, n)
    if i is not None:
        chain = [cs.chain[0], cs.chain[i]]
        return BuildPlan("case1", i, chain, _layers_for(chain, ["coset"]), cs,
                         b1=b1, b2=b2, trace=trace, seed=seed)
    i = max(j for j, o in enumerate(orders) if o * o > n)
    Gi, Gn = cs.chain[i], cs.chain[i + 1]
    assert 4 * Gn.order * Gn.order < n
    if is_prime(Gi.order // Gn.order):
        chain = [cs.chain[0], Gi, Gn]
        return BuildPlan("case2-cyclic", i, chain, _layers_for(chain, ["coset", "cyclic"]),
                         cs, b1=b1, b2=b2, trace=trace, seed=seed)

    sub = G.restrict(Gi)
    local_n = Subgroup(sub, np.searchsorted(Gi.elements, Gn.elements), check=False)
    Q = quotient(sub, local_n)
    last: ChainNotFound | None = None
    for attempt in range(MAX_RESTARTS + 1):
        s = seed + attempt
        trace.append("find_chain")
        try:
            cand = find_chain(Q.base, b1, b2, seed=s)
        except ChainNotFound as exc:
            last = exc
            continue
        H1 = Subgroup(G, Gi.elements[lift(Q, cand.H1).elements], check=False)
        H2 = Subgroup(G, Gi.elements[lift(Q, cand.H2).elements], check=False)
        chain = [cs.chain[0], Gi, H1, H2, Gn]
        p = BuildPlan("case2-simple", i, chain, _layers_for(chain, ["coset"] * 4), cs,
                      inserted=(H2, H1), b1=b1, b2=b2, trace=trace, seed=s)
        if _index_bounds_ok(p, n):
            return p
    raise last or ChainNotFound("no chain within the index bounds after restarts")


def _index_bounds_ok(p: BuildPlan, n: int) -> bool:
    b = Fraction(max(p.b1, p.b2, 1))
    return all(Fraction(layer.index) ** 2 <= b * b * n for layer in p.layers)


def build(G: CayleyGroup, p: BuildPlan):
    """Build the structure for ``p``; returns ``(ds, SpaceReport)``."""
    t0 = time.perf_counter()
    n = G.order
    if p.case_tag == "case2-simple" and not _index_bounds_ok(p, n):
        raise GroupError("a planned layer exceeds the index bound")
    bottom = p.chain[-1]
    ds = st.build_base(G.restrict(bottom))
    for j in range(len(p.layers) - 1, -1, -1):
        upper, lower, layer = p.chain[j], p.chain[j + 1], p.layers[j]
        K = G.restrict(upper)
        local = Subgroup(K, np.searchsorted(upper.elements, lower.elements), check=False)
        try:
            if layer.kind == "coset":
                ds = st.build_coset_node(K, local, ds)
            else:
                ds = st.build_cyclic_node(K, local, ds)
        except GroupError as exc:
            raise GroupError(f"layer {j} ({layer.kind}, order {layer.group_order}): {exc}") from exc
    elapsed = time.perf_counter() - t0
    total = st.word_count(ds)
    detail = []
    for node in st.layers(ds):
        d = {"kind": node.kind, "group_order": node.group_order, "words": st.node_words(node)}
        if node.kind != "base":
            d["index"] = node.index
        detail.append(d)
    report = SpaceReport(n, total, total / n, st.lookup_count(ds), detail, elapsed,
                         p.case_tag, plan=p)
    return ds, report


def build_auto(G: CayleyGroup, b1=5, b2=5, *, seed: int = 0):
    return build(G, plan(G, b1, b2, seed=seed))
