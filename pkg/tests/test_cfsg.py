from __future__ import annotations

import ast
import operator
import time
from fractions import Fraction
from math import factorial, gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from groupds import cfsg
from groupds.cfsg import FamilySpec, InvalidSpec
from groupds.series import chain_predicates


_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: Fraction, ast.Pow: operator.pow}


def evaluate(text: str) -> Fraction:
    """Independent evaluator for the factored order strings."""
    src = text.replace("^", "**")
    while "!" in src:
        i = src.index("!")
        j = i
        while j > 0 and src[j - 1].isdigit():
            j -= 1
        src = f"{src[:j]}fact({src[j:i]}){src[i + 1:]}"

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            return Fraction(node.value)
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Pow):
                return a ** int(b)
            return Fraction(_OPS[type(node.op)](a, b))
        if isinstance(node, ast.Call):
            args = [int(ev(a)) for a in node.args]
            return Fraction({"gcd": gcd, "fact": factorial}[node.func.id](*args))
        raise ValueError(ast.dump(node))

    return ev(ast.parse(src, mode="eval"))


def test_prime_powers():
    assert cfsg.prime_powers(32) == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]


def test_monster_baby_constants():
    assert cfsg.T1 == 808017424794512875886459904961710757005754368000000000
    assert cfsg.T3 == 4154781481226426191177580544000000
    assert cfsg.eval_product(cfsg.T1_FACTORED) == cfsg.T1
    assert cfsg.eval_product(cfsg.T3_FACTORED) == cfsg.T3
    assert cfsg.T2 == 2 * cfsg.T3  # 2.B
    assert cfsg.T4 == 918389756205298247270400


@pytest.mark.parametrize("args, msg", [
    (("2B2", None, 4), "2B2"), (("B", 2, 3), "m >= 3"), (("2F4", None, 2), "Tits"),
    (("A", 0, 2), "m >= 1"), (("A", 1, 6), "prime power"), (("Alt", 4), "m >= 5"),
    (("Sporadic", None, None, "XX"), "unknown"), (("Q", 1, 2), "family"),
])
def test_invalid_specs(args, msg):
    with pytest.raises(InvalidSpec, match=msg):
        FamilySpec(*args)


def test_psl2_4_is_a5():
    row = cfsg.audit(FamilySpec("A", 1, 4))
    assert (row.H_order, row.H1_order, row.H2_order) == (60, 12, 4)
    assert row.passed and row.spec.branch == "q>2"


@pytest.mark.parametrize("args, order", [
    (("A", 1, 7), 168), (("A", 1, 8), 504), (("A", 1, 11), 660), (("A", 2, 2), 168),
    (("A", 3, 2), 20160), (("2A", 2, 3), 6048), (("C", 2, 3), 25920), (("G2", None, 3), 4245696),
    (("2B2", None, 8), 29120), (("3D4", None, 2), 211341312), (("2G2", None, 27), 10073444472),
    (("B", 3, 3), 4585351680), (("D", 4, 2), 174182400), (("2D", 4, 2), 197406720),
    (("F4", None, 2), 3311126603366400), (("E6", None, 2), 214841575522005575270400),
    (("2E6", None, 2), 76532479683774853939200),
])
def test_known_simple_orders(args, order):
    assert cfsg.order_formulas(FamilySpec(*args)).H == order


def test_tits_row():
    row = cfsg.audit(FamilySpec("Tits"))
    assert (row.H_order, row.H1_order, row.H2_order) == (17971200, 11232, 32)
    assert row.passed


def test_sweep_all_pass_fast():
    t0 = time.perf_counter()
    rows = cfsg.sweep(12, 32)
    assert time.perf_counter() - t0 < 30
    assert len(rows) == 1255
    assert all(r.passed for r in rows)
    assert max(max(r.b1, r.b2) for r in rows) <= 5
    assert all(r.min_b1 <= r.b1 and r.min_b2 <= r.b2 for r in rows)


def test_sweep_ordering_deterministic():
    a = [r.spec.label for r in cfsg.sweep(4, 9)]
    assert a == [r.spec.label for r in cfsg.sweep(4, 9)]
    keys = [s.sort_key() for s in cfsg.enumerate_specs(4, 9)]
    assert keys == sorted(keys)


def test_printed_values_fail_where_corrected():
    bad = [r for r in cfsg.sweep(printed=True) if not r.passed]
    spor = sorted(r.spec.name for r in bad if r.spec.family == "Sporadic")
    assert spor == sorted(cfsg.SPORADIC_CORRECTIONS)
    assert {r.spec.family for r in bad} == {"2D", "Sporadic"}
    assert sum(r.spec.family == "2D" for r in bad) == 43


def test_sporadic_table():
    rows = cfsg.sporadic_rows()
    assert len(rows) == 26
    for name, h, h2, h1, b1, b2 in rows:
        checks = chain_predicates(h, h1, h2, b1, b2)
        assert all(checks.values()), name
    assert [r for r in rows if r[0] == "Ly"][0][4:] == (1, 5)


def test_ly_needs_b2_five():
    row = cfsg.audit(FamilySpec("Sporadic", name="Ly"))
    assert row.passed and row.b2 == 5
    # the index [H1:H2] alone would already pass with b2 = 1
    assert row.min_b2 == 1


def test_report_strings():
    d = cfsg.report([cfsg.audit(FamilySpec("Sporadic", name="M"))])[0]
    assert d["H"] == str(cfsg.T1)
    assert d["factored"]["H"] == cfsg.T1_FACTORED
    assert d["pass"] is True


def test_min_b():
    assert cfsg.min_b(Fraction(5), Fraction(60)) == 1
    assert cfsg.min_b(Fraction(16), Fraction(60)) == 3  # 256 <= 9*60
    assert cfsg.min_b(Fraction(1), Fraction(1)) == 1


# alternating groups -----------------------------------------------------

def test_alternating_k_small():
    assert cfsg.alternating_chain(5)[0] == 3
    assert cfsg.alternating_chain(6)[0] == 4


@pytest.mark.parametrize("m", range(5, 41))
def test_alternating_chain_checks(m):
    k, checks = cfsg.alternating_chain(m)
    assert all(checks.values()), checks
    h = factorial(m) // 2
    assert (factorial(k) // 2) ** 2 <= h < (factorial(k + 1) // 2) ** 2


def test_alternating_rejects_small():
    with pytest.raises(InvalidSpec):
        cfsg.alternating_k(4)


# auxiliary inequalities --------------------------------------------------

def test_remark_checks():
    r = cfsg.remark_checks(32)
    assert r["pass"]
    assert cfsg.alternating_sign_product(4, 3) == (248625, 262144)


def test_remark_needs_q3():
    with pytest.raises(ValueError):
        cfsg.remark_checks(2)


@settings(max_examples=60, deadline=None)
@given(q=hst.integers(2, 200), m=hst.integers(1, 15))
def test_sign_product_below_power(q, m):
    lhs, rhs = cfsg.alternating_sign_product(q, m)
    assert 0 < lhs < rhs


@settings(max_examples=80, deadline=None)
@given(data=hst.data())
def test_any_valid_spec_is_consistent(data):
    spec = data.draw(hst.sampled_from(cfsg.enumerate_specs(12, 32)))
    o = cfsg.order_formulas(spec)
    for x in (o.H, o.H1, o.H2):
        assert x.denominator == 1 and x > 0
    assert o.H % o.H1 == 0 and o.H1 % o.H2 == 0
    # the factored strings evaluate to the same numbers
    for key, val in (("H", o.H), ("H1", o.H1), ("H2", o.H2)):
        assert evaluate(o.factored[key]) == val


def test_all_factored_strings_evaluate():
    for spec in cfsg.enumerate_specs(12, 32):
        for printed in (False, True):
            o = cfsg.order_formulas(spec, printed=printed)
            assert evaluate(o.factored["H"]) == o.H, spec.label
            assert evaluate(o.factored["H1"]) == o.H1, spec.label
            assert evaluate(o.factored["H2"]) == o.H2, spec.label
