import pytest
from hypothesis import HealthCheck, settings

from quarticcm import CMFieldQuartic, Order
from quarticcm.orders import roots_of_unity_in_field

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def zeta5_field():
    return CMFieldQuartic(5, 5, 5)


@pytest.fixture(scope="session")
def zeta(zeta5_field):
    """A primitive fifth root of unity."""
    for z in roots_of_unity_in_field(zeta5_field):
        if z ** 5 == 1 and z != 1:
            return z
    raise AssertionError


@pytest.fixture(scope="session")
def zeta5_orders(zeta5_field, zeta):
    """The index-4 and index-5 orders of Q(zeta_5) with full reflex norm image."""
    K, z = zeta5_field, zeta
    O4 = Order.from_elements(K, [1, 2 * z, z ** 2 + z ** 3, 2 * z ** 3])
    O5 = Order.from_elements(K, [1, z + 3 * z ** 3, z ** 2 + z ** 3, 5 * z ** 3])
    return O4, O5


@pytest.fixture(scope="session")
def field_842():
    return CMFieldQuartic(4, 2, 8)


@pytest.fixture(scope="session")
def example53():
    """The two orders Z + F^2 b Z + F^2 b^2 Z + F^2 b^3 Z and
    Z + F^2 b Z + F b^2 Z + F^2 b^3 Z in Q[b]/(b^4 + 6 b^2 + 7)."""
    K = CMFieldQuartic(6, 7)
    b = K.gen

    def make(F):
        O = Order.from_elements(K, [1, b * F ** 2, b ** 2 * F ** 2, b ** 3 * F ** 2])
        Op = Order.from_elements(K, [1, b * F ** 2, b ** 2 * F, b ** 3 * F ** 2])
        return O, Op
    return K, make


@pytest.fixture(scope="session")
def example52():
    """Z[5 sqrt7] + sqrt(5(-3+sqrt7)) Z[sqrt7] in Q[b]/(b^4 + 30 b^2 + 50)."""
    K = CMFieldQuartic(30, 50, 28)
    b = K.gen
    # sqrt7 = (b^2 + 15)/5, so 5 sqrt7 = b^2 + 15 and b sqrt7 = (b^3 + 15 b)/5
    return K, Order.from_elements(K, [1, b ** 2, b, (b ** 3 + 15 * b) / 5])


# -- one verdict line per acceptance criterion, repeated in the terminal summary

_AC_LINES: list = []


@pytest.fixture
def verdict_line():
    def record(tag: str, ok: bool, detail: str) -> bool:
        line = f"{tag} {'PASS' if ok else 'FAIL'}: {detail}"
        print(line)
        _AC_LINES.append(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _AC_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_AC_LINES):
            terminalreporter.write_line(line)
