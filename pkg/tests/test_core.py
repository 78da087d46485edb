from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from conftest import group, relabel
from groupds import gen
from groupds.core import (
    AxiomError, CayleyGroup, GroupError, NotNormalError, ParseError, Subgroup, closure,
    is_normal, lift, load_group, normalizer, parse_table, quotient, subgroup_from_ids,
    transversal,
)

Z3_TEXT = "3\n1 2 3\n2 3 1\n3 1 2\n"


def test_z3_from_text():
    G = load_group(Z3_TEXT)
    assert G.order == 3
    assert G.identity == 0
    assert (G.inverses + 1).tolist() == [1, 3, 2]
    assert G.is_abelian


def test_missing_inverse_reported():
    with pytest.raises(AxiomError, match="no inverse for element 2") as ei:
        load_group("2\n1 2\n2 2\n")
    assert ei.value.law == "inverse"


def test_s3_nonabelian():
    G = CayleyGroup(gen.gen_group(gen.GenRecipe("symmetric", [3])))
    assert G.order == 6 and not G.is_abelian


def test_comments_crlf_and_bytes():
    text = "# Z3\r\n3\r\n1 2 3\r\n# middle\r\n2 3 1\r\n3 1 2\r\n"
    assert load_group(text.encode()).order == 3


@pytest.mark.parametrize("text, msg", [
    ("", "empty"),
    ("x\n", "first line"),
    ("2\n1 2\n", "expected 2 rows"),
    ("2\n1 2\n2\n", "row 2 has 1"),
    ("2\n1 a\n2 1\n", "non-integer"),
])
def test_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_table(text)


def test_out_of_range_entry():
    with pytest.raises(AxiomError, match="outside"):
        load_group("2\n1 3\n2 1\n")


def test_non_associative_rejected():
    # a Latin square with identity and inverses that is not associative
    t = np.array([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3],
                  [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]])
    with pytest.raises(AxiomError) as ei:
        CayleyGroup(t)
    assert ei.value.law == "associativity"
    a, b, c = ei.value.witness
    assert t[t[a, b], c] != t[a, t[b, c]]


def test_identity_detected_when_not_first():
    t = relabel(gen.cyclic(5), np.array([3, 0, 1, 2, 4]))
    G = CayleyGroup(t)
    assert G.identity == 3
    assert all(G.mul(g, G.inv(g)) == 3 for g in range(5))


def test_identity_missing():
    with pytest.raises(AxiomError, match="identity"):
        load_group("2\n1 2\n1 1\n")


def test_element_orders_s4(S4):
    counts = np.bincount(S4.element_orders()).tolist()
    assert counts == [0, 1, 9, 8, 6]


def test_conjugacy_class_sizes_s4(S4):
    assert sorted(len(c) for c in S4.conjugacy_classes()) == [1, 3, 6, 6, 8]


def test_round_trip_text(S4):
    assert np.array_equal(load_group(S4.to_text()).table, S4.table)


# closure -------------------------------------------------------------------

def test_closure_order_two_in_z6():
    G = group("Z6")
    sq_e = [g for g in range(6) if g != G.identity and G.mul(g, g) == G.identity]
    assert closure(G, sq_e).order == 2


def test_closure_empty_is_trivial(S4):
    H = closure(S4, [])
    assert H.elements.tolist() == [S4.identity]


def test_two_transpositions_generate_s3(S3):
    transp = [g for g in range(6) if S3.element_orders()[g] == 2]
    assert closure(S3, transp[:2]).order == 6


def test_closure_limit(S4):
    assert closure(S4, S4.generators(), limit=12) is None
    assert closure(S4, [1], limit=12).order == 2


def test_subgroup_certificate(S4):
    with pytest.raises(GroupError):
        subgroup_from_ids(S4, [0, 1, 2])
    assert subgroup_from_ids(S4, closure(S4, [5]).elements).order in (2, 3, 4)


# transversals -------------------------------------------------------------

def test_transversal_extremes(S4):
    whole = transversal(S4, S4.whole())
    assert whole.reps.tolist() == [S4.identity] and not whole.coset_of.any()
    triv = transversal(S4, S4.trivial_subgroup())
    assert sorted(triv.reps.tolist()) == list(range(24))


@pytest.mark.parametrize("side", ["left", "right"])
def test_transversal_s3_three_cycle(S3, side):
    c = [g for g in range(6) if S3.element_orders()[g] == 3][0]
    H = closure(S3, [c])
    tr = transversal(S3, H, side)
    assert tr.index == 2
    for g in range(6):
        r = tr.reps[tr.coset_of[g]]
        x = S3.mul(g, S3.inv(r)) if side == "right" else S3.mul(S3.inv(r), g)
        assert x in H


@settings(max_examples=40, deadline=None)
@given(name=hst.sampled_from(["S4", "D16", "Q8xZ3", "A5", "Z4xZ4"]), seed=hst.integers(0, 10**6),
       side=hst.sampled_from(["left", "right"]))
def test_transversal_bijection(name, seed, side):
    G = group(name)
    rng = np.random.default_rng(seed)
    H = closure(G, rng.integers(0, G.order, size=2).tolist())
    tr = transversal(G, H, side)
    assert tr.index * H.order == G.order
    if side == "right":
        prods = G.table[np.ix_(H.elements, tr.reps)]
    else:
        prods = G.table[np.ix_(tr.reps, H.elements)]
    assert np.unique(prods).size == G.order
    assert tr.reps[0] == G.identity


# normality, quotients -----------------------------------------------------

def test_abelian_everything_normal():
    G = group("Z4xZ4")
    H = closure(G, [5])
    assert is_normal(G, H) and normalizer(G, H).order == 16


def test_s3_normalizers(S3):
    t = [g for g in range(6) if S3.element_orders()[g] == 2][0]
    c = [g for g in range(6) if S3.element_orders()[g] == 3][0]
    T, C = closure(S3, [t]), closure(S3, [c])
    assert normalizer(S3, T) == T
    assert not is_normal(S3, T)
    assert is_normal(S3, C) and normalizer(S3, C).order == 6


def test_quotient_basic(S3, S4):
    assert quotient(S4, S4.whole()).base.order == 1
    Q = quotient(S4, S4.trivial_subgroup())
    assert Q.base.order == 24
    # canonical map is an isomorphism here
    m = Q.canonical_map
    assert np.array_equal(m[S4.table], Q.base.table[np.ix_(m, m)])
    c = [g for g in range(6) if S3.element_orders()[g] == 3][0]
    assert quotient(S3, closure(S3, [c])).base.order == 2


def test_quotient_not_normal(S3):
    t = [g for g in range(6) if S3.element_orders()[g] == 2][0]
    with pytest.raises(NotNormalError) as ei:
        quotient(S3, closure(S3, [t]))
    assert ei.value.witness is not None


@settings(max_examples=25, deadline=None)
@given(name=hst.sampled_from(["S4", "D24", "Q8xZ3", "Z6xZ6", "S4xZ5"]), k=hst.integers(0, 10))
def test_quotient_map_is_homomorphism(name, k):
    from groupds.series import composition_series
    G = group(name)
    cs = composition_series(G)
    j = k % cs.length
    top, low = cs.chain[j], cs.chain[j + 1]
    G = G.restrict(top)
    N = Subgroup(G, np.searchsorted(top.elements, low.elements))
    Q = quotient(G, N)
    m = Q.canonical_map
    assert Q.base.order * N.order == G.order
    assert np.array_equal(m[G.table], Q.base.table[np.ix_(m, m)])


def test_lift_s4_mod_v4(S4):
    from groupds.series import composition_series
    V4 = composition_series(S4).chain[2]
    assert V4.order == 4
    Q = quotient(S4, V4)
    assert Q.base.order == 6 and not Q.base.is_abelian
    assert lift(Q, Q.base.whole()).order == 24
    assert lift(Q, Q.base.trivial_subgroup()) == V4
    c = [g for g in range(6) if Q.base.element_orders()[g] == 3][0]
    A = lift(Q, closure(Q.base, [c]))
    assert A.order == 12
    Subgroup(S4, A.elements)  # certificate passes
    assert set(np.bincount(S4.element_orders()[A.elements]).tolist()) <= {0, 1, 3, 8}


# properties ---------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(m=hst.integers(1, 12), data=hst.data())
def test_relabel_invariance(m, data):
    t = gen.dihedral(m)
    perm = np.array(data.draw(hst.permutations(range(2 * m))))
    G, H = CayleyGroup(t), CayleyGroup(relabel(t, perm))
    assert H.identity == perm[G.identity]
    assert sorted(H.element_orders().tolist()) == sorted(G.element_orders().tolist())
    assert np.array_equal(H.inverses[perm], perm[G.inverses])


@settings(max_examples=40, deadline=None)
@given(name=hst.sampled_from(["S4", "A5", "D32", "Z8xZ8", "PSL2_7"]),
       gens=hst.lists(hst.integers(0, 10**6), max_size=3))
def test_closure_is_subgroup(name, gens):
    G = group(name)
    H = closure(G, [g % G.order for g in gens])
    Subgroup(G, H.elements)  # raises on failure
    assert G.order % H.order == 0
    assert closure(G, H.gens) == H
