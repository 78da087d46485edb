from __future__ import annotations

import numpy as np
import pytest

from conftest import built, group
from groupds import structure as st
from groupds.builder import MAX_RESTARTS, build, build_auto, plan
from groupds.series import ChainNotFound


def oracle(ds, G):
    n = G.order
    a, b = np.divmod(np.arange(n * n), n)
    return np.array_equal(st.multiply_many(ds, a, b), G.table[a, b])


def test_z16_case1():
    p = plan(group("Z16"))
    assert p.case_tag == "case1"
    assert [H.order for H in p.chain] == [16, 4]


def test_s4_case1():
    G = group("S4")
    p = plan(G)
    assert p.case_tag == "case1" and p.pivot_index == 2
    assert p.chain[1].order == 4
    ds, rep = build(G, p)
    assert st.node_words(st.layers(ds)[-1]) == 16 + 4
    assert rep.total_words == 16 + 4 + 7 * 24 + 2 * 36
    assert rep.lookup_bound == 15
    assert oracle(ds, G)


def test_a5_case2_simple():
    G = group("A5")
    ds, rep = built("A5")
    p = rep.plan
    assert p.case_tag == "case2-simple" and p.pivot_index == 0
    assert [H.order for H in p.chain] == [60, 60, 12, 4, 1]
    assert [layer.kind for layer in p.layers] == ["coset"] * 4
    assert p.trace == ["composition_series", "find_chain"]
    assert rep.lookup_bound == 183
    assert oracle(ds, G)


@pytest.mark.parametrize("name, tag", [
    ("Z40xZ40", "case2-cyclic"), ("D16", "case1"), ("PSL2_7", "case2-simple"),
    ("PSL2_8", "case2-simple"), ("A7", "case2-simple"), ("S5", "case2-simple"), ("Z2", "case1"),
])
def test_case_tags(name, tag):
    assert built(name)[1].case_tag == tag


def test_case2_cyclic_shape():
    ds, rep = built("Z40xZ40")
    p = rep.plan
    assert [layer.kind for layer in p.layers] == ["coset", "cyclic"]
    n = rep.n
    Gi, Gn = p.chain[1], p.chain[2]
    assert Gi.order ** 2 > n and 4 * Gn.order ** 2 < n
    assert rep.lookup_bound == 9 + 2 * (8 + 2 * 3) == 37


def test_s6_uses_the_a6_factor():
    _, rep = built("S6")
    # S6 > A6 > 1: |A6|^2 > 720 and A6 is simple, so the chain is refined inside A6
    assert rep.case_tag == "case2-simple"
    assert rep.plan.chain[1].order == 360
    assert oracle(built("S6")[0], group("S6"))


def test_solvable_groups_skip_chain_finder(corpus):
    from groupds.series import composition_series
    for name in ("S4", "D128", "Q8xZ3", "Z33xZ33", "S4xZ5", "A4", "Z2048"):
        _, rep = built(name)
        assert composition_series(group(name)).is_solvable()
        assert "find_chain" not in rep.plan.trace
        assert rep.case_tag != "case2-simple"


def test_bad_bounds():
    with pytest.raises(ValueError):
        plan(group("S4"), 0.5, 5)


def test_unit_bounds_still_feasible_for_a5():
    # [A5:A4] = 5, [A4:V4] = 3 and |V4| = 4 all fit under sqrt(60)
    assert plan(group("A5"), 1, 1).case_tag == "case2-simple"


def test_restarts_then_fail(monkeypatch):
    import groupds.builder as bmod
    seeds = []

    def never(H, b1, b2, *, seed):
        seeds.append(seed)
        raise ChainNotFound("forced", [])

    monkeypatch.setattr(bmod, "find_chain", never)
    with pytest.raises(ChainNotFound):
        plan(group("A5"), seed=10)
    assert seeds == list(range(10, 10 + MAX_RESTARTS + 1))


def test_report_fields():
    ds, rep = built("D24")
    d = rep.as_dict()
    assert d["n"] == 24 and d["total_words"] == st.word_count(ds)
    assert sum(layer["words"] for layer in d["layers"]) == d["total_words"]
    assert d["words_per_n"] == pytest.approx(d["total_words"] / 24)


def test_deterministic_build():
    G = group("A6")
    a, _ = build_auto(G, seed=3)
    b, _ = build_auto(G, seed=3)
    assert st.serialize(a) == st.serialize(b)


@pytest.mark.parametrize("name", [f"Z{n}" for n in range(15, 65)] + ["S4", "D40", "Z6xZ6"])
def test_words_below_full_table(name):
    rep = built(name)[1]
    assert rep.total_words < rep.n ** 2


def test_small_orders_exceed_full_table():
    # fixed per-node arrays dominate tiny groups
    assert built("Z2")[1].total_words == 24
    assert all(built(f"Z{n}")[1].total_words >= n * n for n in range(2, 15))
