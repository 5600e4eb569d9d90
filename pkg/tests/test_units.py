from quarticcm import CMFieldQuartic, maximal_order
from quarticcm.units import (ResidueRing, UnitData, fundamental_unit_ok, hasse_index,
                             ok_residue_unit_generators, unit_log_power)
from quarticcm.linalg import group_structure


def test_unit_data_maximal(zeta5_field):
    U = UnitData(maximal_order(zeta5_field))
    assert len(U.mu) == 10 and U.k == 1
    assert abs(U.eta.norm()) == 1


def test_unit_data_suborder(zeta5_orders):
    O4, O5 = zeta5_orders
    for O in (O4, O5):
        U = UnitData(O)
        assert O.contains(U.eta)
        assert abs(U.eta.norm()) == 1
        # the smaller power does not lie in O up to roots of unity
        for j in range(1, U.k):
            assert not any(O.contains(z * U.eta_K ** j) for z in U.mu_K)
        assert U.nu.is_real()


def test_hasse_index_and_unit():
    for A, B in [(5, 5), (4, 2), (13, 13), (6, 7)]:
        K = CMFieldQuartic(A, B)
        eta = fundamental_unit_ok(K)
        assert abs(eta.norm()) == 1
        assert hasse_index(K) in (1, 2)


def test_unit_log_power():
    K = CMFieldQuartic(5, 5)
    e = K.fundamental_unit
    nu = e * e
    assert unit_log_power(nu ** 3, nu) == 3
    assert unit_log_power(nu.inverse() ** 2, nu) == -2
    assert unit_log_power(K.real(1), nu) == 0
    assert unit_log_power(nu * 4, nu) is None


def test_residue_unit_generators_generate():
    """(O_K/fO_K)^x has the order given by norms of the prime powers."""
    for (A, B), f in [((5, 5), 2), ((5, 5), 4), ((4, 2), 6), ((13, 13), 9)]:
        K = CMFieldQuartic(A, B)
        R = ResidueRing(K, f)
        gens = [R.from_element(t) for t in ok_residue_unit_generators(K, f)]
        G = group_structure(gens, R.mul, lambda x: x == R.one, identity=R.one, key=lambda x: x)
        count = sum(1 for a in range(f) for b in range(f) for c in range(f) for d in range(f)
                    if R.is_unit((a, b, c, d)))
        assert G.order == count
