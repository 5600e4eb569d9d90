from hypothesis import given, settings, strategies as st

from quarticcm import CMFieldQuartic, FracIdeal, maximal_order
from quarticcm.ideals import (colon, contract, coprime_split, extend, ideal_mul, is_invertible,
                              prime_decomposition_ok, primes_above)
from quarticcm.orders import equation_order

ints = st.integers(-6, 6)
elem = st.tuples(ints, ints, ints, ints).filter(any)


def test_zeta5_splitting(zeta5_field):
    OK = maximal_order(zeta5_field)
    dec = {p: sorted((e, f) for _, e, f in prime_decomposition_ok(p, OK)) for p in (2, 5, 11)}
    assert dec[2] == [(1, 4)]
    assert dec[5] == [(4, 1)]
    assert dec[11] == [(1, 1)] * 4


def test_degree_formula():
    for K in (CMFieldQuartic(13, 13), CMFieldQuartic(4, 2), CMFieldQuartic(6, 7)):
        OK = maximal_order(K)
        for p in (2, 3, 5, 7, 13, 17):
            assert sum(e * f for _, e, f in prime_decomposition_ok(p, OK)) == 4
            for P, e, f in prime_decomposition_ok(p, OK):
                assert P.norm() == p ** f


def test_equation_order_has_non_invertible_prime(zeta5_field):
    O = equation_order(zeta5_field)
    assert any(not is_invertible(P) for P in primes_above(2, O))


@settings(max_examples=40)
@given(elem, elem)
def test_principal_ideal_arithmetic(a, b):
    K = CMFieldQuartic(13, 13)
    OK = maximal_order(K)
    x, y = OK.element_from_coords(a), OK.element_from_coords(b)
    I, J = FracIdeal.principal(OK, x), FracIdeal.principal(OK, y)
    assert ideal_mul(I, J) == FracIdeal.principal(OK, x * y)
    assert I.norm() == abs(x.norm())
    assert (I * J).norm() == I.norm() * J.norm()
    assert I.conjugate() == FracIdeal.principal(OK, x.conjugate())
    assert ideal_mul(I, I.inverse()) == FracIdeal.unit(OK)
    assert colon(ideal_mul(I, J), J) == I


def test_extend_contract_coprime(zeta5_orders):
    O4, _ = zeta5_orders
    K = O4.field
    OK = maximal_order(K)
    for P in primes_above(11, OK):
        a = contract(P, O4)
        assert a.is_coprime_to(4)
        assert extend(a, OK) == P
        assert a.norm() == P.norm()


def test_coprime_split():
    K = CMFieldQuartic(4, 2)
    OK = maximal_order(K)
    a = FracIdeal.principal(OK, 9)
    b = primes_above(2, OK)[0] ** 3
    x, y = coprime_split(a, b)
    assert a.contains(x) and b.contains(y) and x + y == K.one
