

from quarticcm import CMFieldQuartic, Order, equation_order, maximal_order, rel_disc_norm
from quarticcm.linalg import lattice_index
from quarticcm.orders import (conductor, order_intersect, order_sum, orders_containing,
                              orders_with_conductor_dividing, roots_in_field, suborders)
from quarticcm.workbench.tables import all_rows, field_of


def test_zeta5_maximal_order(zeta5_field):
    K = zeta5_field
    OK = maximal_order(K)
    assert OK.discriminant() == 125
    assert equation_order(K).index() == 4
    assert rel_disc_norm(K) == 5
    assert OK.mu_order() == 10


def test_monogenic_field():
    assert equation_order(CMFieldQuartic(6, 7)).index() == 1


def test_table_discriminants():
    """disc(O_K) = D^2 N(disc(K/K0)) on every table field."""
    seen = set()
    for row in all_rows():
        K = field_of(row)
        d = maximal_order(K).discriminant()
        assert d == row.D ** 2 * rel_disc_norm(K)
        seen.add(d)
    assert len(seen) == 20


def test_example52_field():
    assert rel_disc_norm(CMFieldQuartic(30, 50)) == 800


def test_roots_of_unity_of_index4_order(zeta5_orders):
    O4, O5 = zeta5_orders
    assert O4.index() == 4 and O5.index() == 5
    assert O4.mu_order() == 2


def test_example53_real_suborder(example53):
    K, make = example53
    O, Op = make(3)
    b = K.gen
    assert O.real_suborder().lattice == Order.from_elements(K, [1, 9 * b, 9 * b ** 2, 9 * b ** 3]) \
        .real_suborder().lattice
    assert O.real_suborder().index() == 9 and Op.real_suborder().index() == 3


def test_z_2zeta_not_cc_stable(zeta5_field, zeta):
    z = zeta
    O = Order.from_elements(zeta5_field, [1, 2 * z, 4 * z ** 2, 8 * z ** 3])
    assert not O.is_cc_stable()
    assert maximal_order(zeta5_field).is_cc_stable()


def test_table1_second_index_examples():
    K = CMFieldQuartic(13, 13)
    r = roots_in_field(K, (1, -1, 2, 4, 3))[0]
    O1 = Order.from_elements(K, [r ** i for i in range(4)])
    assert O1.index() == 3
    assert order_sum(O1, O1.conjugate()).index() == 1


def test_trace_dual_index_suite(zeta5_field):
    """[O* : O_K*] = [O_K : O] on many suborders."""
    K = zeta5_field
    OK = maximal_order(K)
    orders = [O for n in (4, 5, 9, 16, 25, 32, 64, 81) for O in suborders(K, n)]
    assert len(orders) >= 50
    for O in orders:
        assert lattice_index(O.trace_dual(), OK.trace_dual()) == O.index()


def test_sum_with_conjugate_is_cc_stable(zeta5_field):
    for O in suborders(zeta5_field, 8):
        S = order_sum(O, O.conjugate())
        assert S.is_cc_stable()


def test_index_multiplicativity_and_conductor(field_842):
    K = field_842
    for O in orders_with_conductor_dividing(K, 6, cc_stable=True):
        f = conductor(O)
        assert O.conductor_contains(f)
        assert all(O.conductor_contains(f * k) for k in (1, 2))
        assert order_intersect(O, O.conjugate()).conductor_contains(f)
        for P in orders_containing(K, O):
            assert O.index() == P.index() * (O.index() // P.index())
            assert lattice_index(P.lattice, O.lattice) * P.index() == O.index()


def test_suborders_are_rings(field_842):
    for O in suborders(field_842, 4):
        b = O.basis
        assert all(O.contains(x * y) for x in b for y in b)


def test_sum_intersect_trivial(zeta5_orders):
    O4, _ = zeta5_orders
    assert order_sum(O4, O4) == O4 and order_intersect(O4, O4) == O4
