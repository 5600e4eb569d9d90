from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quarticcm.field import (BIQUADRATIC, CYCLIC, NONGALOIS, CMFieldQuartic, FieldError,
                             fundamental_discriminant, is_square, squarefree_part)
from quarticcm.orders import roots_in_field

CYCLIC_FIELDS = [(5, 5), (4, 2), (13, 13), (10, 20), (37, 333), (17, 68)]

coords = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                  min_size=4, max_size=4)


@pytest.fixture(scope="module", params=CYCLIC_FIELDS)
def K(request):
    return CMFieldQuartic(*request.param)


def test_galois_types():
    assert CMFieldQuartic(5, 5).galois_type == CYCLIC
    assert CMFieldQuartic(6, 7).galois_type == NONGALOIS


def test_reducible_polynomials_rejected():
    with pytest.raises(FieldError):
        CMFieldQuartic(5, 4)  # (x^2+1)(x^2+4)
    with pytest.raises(FieldError):
        CMFieldQuartic(2, 1)  # A^2 - 4B = 0


def test_biquadratic_detected():
    assert CMFieldQuartic(3, 1).galois_type == BIQUADRATIC  # Q(i, sqrt5)... x^4+3x^2+1


def test_discriminant_cross_check():
    CMFieldQuartic(4, 2, 8)
    with pytest.raises(FieldError):
        CMFieldQuartic(4, 2, 5)


def test_real_subfield_discriminants():
    assert CMFieldQuartic(5, 5).D == 5
    assert CMFieldQuartic(6, 7).D == 8
    assert CMFieldQuartic(30, 50).D == 28


def test_square_helpers():
    assert is_square(49) and not is_square(50) and not is_square(-4)
    assert squarefree_part(72) == (2, 6) and squarefree_part(45) == (5, 3)
    assert fundamental_discriminant(7) == 28 and fundamental_discriminant(5) == 5


def test_sigma_matches_root_search(K):
    """sigma(x) is a root of the minimal polynomial; all four roots arise as
    sigma^k(x), and sigma^2 is complex conjugation."""
    x = K.gen
    roots = set(roots_in_field(K, (1, 0, K.A, 0, K.B)))
    images = {K.sigma(x, k) for k in range(4)}
    assert images == roots
    assert K.sigma(x, 2) == x.conjugate()


@given(coords, coords)
def test_field_axioms(a, b):
    K = CMFieldQuartic(13, 13)
    x, y = K.element(a), K.element(b)
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert x.sigma(1) * y.sigma(1) == (x * y).sigma(1)
    if x:
        assert x * x.inverse() == K.one


@given(coords)
def test_relative_norm_and_t2(a):
    K = CMFieldQuartic(37, 333)
    x = K.element(a)
    rn = x.rel_norm()
    assert rn.to_field() == x * x.conjugate()
    assert x.t2() == rn.to_field().trace()
    assert x.norm() == rn.norm()
    assert x.t2() >= 0


@given(coords)
def test_charpoly_annihilates(a):
    K = CMFieldQuartic(10, 20)
    x = K.element(a)
    c = x.charpoly()
    val = K.zero
    for coef in c:
        val = val * x + K.element((coef, 0, 0, 0))
    assert not val


def test_fundamental_units():
    for A, B, eps in [(5, 5, (Fraction(1, 2), Fraction(1, 2))), (4, 2, None)]:
        K = CMFieldQuartic(A, B)
        e = K.fundamental_unit
        assert abs(e.norm()) == 1
        assert e.signs()[0] > 0
    K = CMFieldQuartic(5, 5)
    e = K.fundamental_unit
    # the golden ratio (1 + sqrt5)/2 with sqrt5 = 2w + 5
    assert e.trace() == 1 and e.norm() == -1


def test_parse_element():
    K = CMFieldQuartic(5, 5)
    assert K.parse_element("1/2, 0, -3, 1") == K.element((Fraction(1, 2), 0, -3, 1))
    with pytest.raises(FieldError):
        K.parse_element("1,2")
