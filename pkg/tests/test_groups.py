import numpy as np
import pytest
from hypothesis import given, strategies as st

from wcomm.catalog import Catalog, cyclic, perm_group, quaternion
from wcomm.groups import (FiniteGroup, GroupError, Homomorphism, Subgroup, all_subgroups,
                          generate_subgroup, homomorphisms, identity_hom, image, is_normal, join,
                          kernel, normal_closure, pullback, subgroups_equal, trivial_hom)

from conftest import parity

CATALOG = Catalog.builtin()
SMALL = CATALOG.select(max_order=12)


def sign_map(G):
    return Homomorphism(G, cyclic(2), [parity(tuple(p)) for p in G.permutations.tolist()])


# -- FiniteGroup -----------------------------------------------------------

def test_trivial_cayley_table():
    G = FiniteGroup([[0]])
    assert G.order == 1 and G.is_abelian


def test_perm_generators_close_to_s3():
    G = perm_group(3, [[1, 0, 2], [1, 2, 0]], "S3")
    # naive orbit enumeration on tuples, without any table
    seen, todo = {(0, 1, 2)}, [(0, 1, 2)]
    gens = [(1, 0, 2), (1, 2, 0)]
    while todo:
        p = todo.pop()
        for g in gens:
            q = tuple(p[g[i]] for i in range(3))
            if q not in seen:
                seen.add(q)
                todo.append(q)
    assert G.order == len(seen) == 6
    assert not G.is_abelian


def test_cyclic_four():
    G = cyclic(4)
    assert G.order == 4 and G.is_abelian
    assert all(G.power(g, 4) == 0 for g in range(4))


@pytest.mark.parametrize("table, msg", [
    ([[0, 1], [1, 1]], "permutation"),
    ([[1, 0], [0, 1]], "identity"),
    # a Latin square with identity 0 that is not associative (order 5 loop)
    ([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]],
     "associative"),
])
def test_bad_tables_rejected(table, msg):
    with pytest.raises(GroupError, match=msg):
        FiniteGroup(table)


def test_order_cap():
    with pytest.raises(GroupError, match="cap"):
        perm_group(5, [[1, 0, 2, 3, 4], [1, 2, 3, 4, 0]], order_cap=100)


@pytest.mark.parametrize("G", CATALOG, ids=lambda G: G.label)
def test_group_laws(G):
    t = G.table
    # t[t][a, b, c] = (ab)c and t[:, t][a, b, c] = a(bc), over every triple
    assert np.array_equal(t[t], t[:, t])
    g = np.arange(G.order)
    assert np.array_equal(t[0], g) and np.array_equal(t[:, 0], g)
    assert np.all(t[g, G.inverse] == 0)


def test_catalog_orders():
    want = {"C1": 1, "C16": 16, "D3": 6, "D6": 12, "Q8": 8, "S3": 6, "S4": 24, "A4": 12, "V4": 4}
    for label, n in want.items():
        assert CATALOG[label].order == n


def test_quaternion_has_one_involution():
    Q = quaternion()
    assert sum(Q.element_order(g) == 2 for g in range(8)) == 1


# -- subgroups -------------------------------------------------------------

def test_generate_empty_is_trivial(S3):
    assert generate_subgroup(S3, []).members == (0,)


def test_generate_in_s3(S3, s3_parts):
    even, odd = s3_parts
    assert generate_subgroup(S3, [odd[0]]).order == 2
    three_cycle = [g for g in even if g != 0][0]
    assert generate_subgroup(S3, [odd[0], three_cycle]).order == 6


def test_generate_rejects_bad_index(S3):
    with pytest.raises(GroupError):
        generate_subgroup(S3, [6])


def test_subgroup_validation(S3):
    with pytest.raises(GroupError):
        Subgroup(S3, [0, 1, 2])
    with pytest.raises(GroupError):
        Subgroup(S3, [1])


def test_normal_closure_of_transposition(S3, s3_parts):
    _, odd = s3_parts
    assert normal_closure(S3, [odd[0]]) == S3.whole
    assert normal_closure(S3, []) == S3.trivial


def test_normality_in_s3(S3, s3_parts):
    even, odd = s3_parts
    A3 = Subgroup(S3, even)
    assert is_normal(A3) and is_normal(S3.whole) and is_normal(S3.trivial)
    assert not is_normal(generate_subgroup(S3, [odd[0]]))


def test_join(S3, s3_parts):
    even, odd = s3_parts
    T = generate_subgroup(S3, [odd[0]])
    A3 = Subgroup(S3, even)
    assert join(T, S3.trivial) == T
    assert join(T, T) == T
    assert join(T, A3) == S3.whole


def test_join_needs_same_parent(S3):
    with pytest.raises(GroupError):
        join(S3.whole, cyclic(3).whole)
    with pytest.raises(GroupError):
        subgroups_equal(S3.whole, cyclic(6).whole)


@pytest.mark.parametrize("label, count", [("S3", 6), ("D4", 10), ("Q8", 6), ("A4", 10),
                                          ("D6", 16), ("S4", 30), ("C12", 6), ("V4", 5)])
def test_subgroup_counts(label, count):
    assert len(all_subgroups(CATALOG[label])) == count


def _elems(G):
    return st.lists(st.integers(0, G.order - 1), max_size=4)


@given(st.sampled_from(SMALL).flatmap(lambda G: st.tuples(st.just(G), _elems(G), _elems(G))))
def test_closure_monotone_and_idempotent(case):
    G, S, T = case
    H = generate_subgroup(G, S)
    assert generate_subgroup(G, H.members) == H
    assert H <= generate_subgroup(G, S + T)
    N = normal_closure(G, S)
    assert H <= N and is_normal(N)
    if G.is_abelian:
        assert N == H


# -- homomorphisms ---------------------------------------------------------

def test_hom_validation(S3):
    with pytest.raises(GroupError):
        Homomorphism(cyclic(2), cyclic(3), [0, 1])
    with pytest.raises(GroupError):
        Homomorphism(cyclic(2), cyclic(3), [0])


def test_identity_and_trivial_maps(S3):
    assert kernel(identity_hom(S3)) == S3.trivial
    assert image(identity_hom(S3)) == S3.whole
    z = trivial_hom(S3, cyclic(4))
    assert kernel(z) == S3.whole and image(z).is_trivial()


def test_sign_map(S3, s3_parts):
    even, _ = s3_parts
    sgn = sign_map(S3)
    assert kernel(sgn).members == tuple(even)
    assert image(sgn).order == 2


@pytest.mark.parametrize("src, tgt, count", [("S3", "S3", 10), ("D4", "D4", 36),
                                             ("C4", "C6", 2), ("V4", "S3", 10), ("Q8", "C2", 4)])
def test_hom_counts(src, tgt, count):
    assert len(homomorphisms(CATALOG[src], CATALOG[tgt])) == count


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.label)
def test_kernels_are_normal(G):
    for h in homomorphisms(G, CATALOG["C2"]) + homomorphisms(G, CATALOG["S3"]):
        assert is_normal(kernel(h))


# -- pullbacks -------------------------------------------------------------

def test_pullback_along_identity(S3):
    f = sign_map(S3)
    P = pullback(f, identity_hom(f.target))
    assert P.carrier.order == S3.order
    assert P.pi1.images.tolist() == list(range(6))


def test_pullback_over_trivial_is_product(S3):
    B = cyclic(1)
    P = pullback(trivial_hom(S3, B), trivial_hom(cyclic(4), B))
    assert P.carrier.order == 24
    # lexicographic numbering of the pairs
    assert P.pairs.tolist() == [[a, c] for a in range(6) for c in range(4)]


def test_sign_pullback_order(S3):
    f = sign_map(S3)
    P = pullback(f, f)
    assert P.carrier.order == 18


def test_pullback_errors(S3):
    f = sign_map(S3)
    with pytest.raises(GroupError):
        pullback(f, identity_hom(cyclic(3)))
    bad = Homomorphism(cyclic(2), S3, [0, 0])
    with pytest.raises(GroupError):
        pullback(f, f, bad, bad)


def _split_pairs(A, B):
    return [(f, r) for f in homomorphisms(A, B) for r in homomorphisms(B, A)
            if f.after(r).is_identity()]


@pytest.mark.parametrize("A, C, B", [("S3", "S3", "C2"), ("D4", "C4", "C2"), ("C6", "S3", "C2"),
                                     ("D4", "Q8", "C1"), ("V4", "D4", "C2")])
def test_pullback_generation_identity(A, C, B):
    A, C, B = CATALOG[A], CATALOG[C], CATALOG[B]
    for f, r in _split_pairs(A, B)[:4]:
        for g, s in _split_pairs(C, B)[:4]:
            P = pullback(f, g, r, s)
            G = P.carrier
            assert P.pi1.after(P.e1).is_identity() and P.pi2.after(P.e2).is_identity()
            for k, (a, c) in enumerate(P.pairs.tolist()):
                rest = C.mul(C.inv(s(f(a))), c)
                assert G.mul(P.e1(a), P.e2(rest)) == k
