import random
from itertools import product
from math import gcd

from hypothesis import given, strategies as st

from quarticcm.linalg import (Lattice, det, group_structure, hnf, kernel_mod_p, lattice_index,
                              lattice_intersect, lattice_sum, mat_mul, rational_inverse,
                              short_vectors, snf, subgroup_quotient, xgcd)

from suites import hnf_mod_oracle, hnf_oracle, lll_oracle, rand_matrix, snf_oracle


def test_xgcd_identity():
    for a, b in [(12, 18), (-7, 5), (0, 4), (9, 0)]:
        g, x, y = xgcd(a, b)
        assert g == gcd(a, b) and a * x + b * y == g


def test_hnf_small_example():
    H, U = hnf([[2, 4, 6], [0, 3, 9]])
    assert H == [[0, 2, 0], [0, 0, 3]]
    assert mat_mul([[2, 4, 6], [0, 3, 9]], U) == H


def test_snf_small_example():
    assert snf([[2, 4], [6, 8]]) == [2, 4]


def test_short_vectors_match_box_enumeration():
    rng = random.Random(14)
    for _ in range(25):
        while True:
            B = rand_matrix(rng, 3, 3, -3, 3)
            if det(B) != 0:
                break
        G = [[sum(B[k][i] * B[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
        bound = rng.randint(5, 30)
        got = set(tuple(v) for v in short_vectors(G, bound))
        # box: |x_i| <= sqrt(bound * (G^-1)_ii)
        Gi = rational_inverse(G)
        r = [int((bound * Gi[i][i]) ** 0.5) + 1 for i in range(3)]
        want = set()
        for x in product(*[range(-ri, ri + 1) for ri in r]):
            if any(x):
                q = sum(x[i] * G[i][j] * x[j] for i in range(3) for j in range(3))
                if q <= bound:
                    want.add(x)
        assert got == want


@given(st.lists(st.lists(st.integers(-8, 8), min_size=3, max_size=3), min_size=1, max_size=5))
def test_lattice_sum_intersection_index(vs):
    L1 = Lattice.from_vectors(vs + [[5, 0, 0], [0, 7, 0], [0, 0, 3]], 3)
    L2 = Lattice.from_vectors([[2, 1, 0], [0, 3, 1], [1, 0, 4]], 3)
    S, I = lattice_sum(L1, L2), lattice_intersect(L1, L2)
    assert L1 <= S and L2 <= S and I <= L1 and I <= L2
    # [S : L1] = [L2 : I]
    assert lattice_index(S, L1) == lattice_index(L2, I)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=4))
def test_dual_is_involution(vs):
    L = Lattice.from_vectors(vs, 3)
    if L.rank < 3:
        return
    assert L.dual().dual() == L
    assert lattice_index(L.dual(), L.dual()) == 1


def test_kernel_mod_p():
    rows = [[1, 2, 3], [2, 4, 6]]
    ker = kernel_mod_p(rows, 7)
    assert len(ker) == 2
    for v in ker:
        assert all(sum(r[i] * v[i] for i in range(3)) % 7 == 0 for r in rows)


def test_group_structure_units_mod_8():
    G = group_structure([3, 5], lambda a, b: a * b % 8, lambda x: x == 1,
                        identity=1, key=lambda x: x)
    assert sorted(G.invariants) == [2, 2]


def test_group_structure_cyclic_dlog():
    G = group_structure([2], lambda a, b: a * b % 101, lambda x: x == 1,
                        identity=1, key=lambda x: x)
    assert G.invariants == [100]
    k = G.dlog(3)[0]
    assert pow(G.gens[0], k, 101) == 3


@given(st.lists(st.integers(1, 60), min_size=1, max_size=3))
def test_group_structure_order_matches_enumeration(gens):
    n = 63
    gens = [g for g in gens if gcd(g, n) == 1] or [1]
    G = group_structure(gens, lambda a, b: a * b % n, lambda x: x == 1,
                        identity=1, key=lambda x: x)
    span = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % n
            if y not in span:
                span.add(y)
                frontier.append(y)
    assert G.order == len(span)
    for a, b in zip(G.invariants, G.invariants[1:]):
        assert b % a == 0


def test_subgroup_quotient():
    # Z/4 x Z/6 modulo the subgroup generated by (2, 0)
    q = subgroup_quotient([4, 6], [[1, 0], [0, 1]], [[2, 0]])
    prod = 1
    for d in q:
        prod *= d
    assert prod == 12


def test_hnf_oracle_suite():
    assert hnf_oracle() == 260


def test_snf_oracle_suite():
    assert snf_oracle() == 260


def test_lll_oracle_suite():
    assert lll_oracle() == 200


def test_hnf_mod_determinant_matches_plain():
    assert hnf_mod_oracle() == 300
