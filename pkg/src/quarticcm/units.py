"""Unit groups of orders and residue arithmetic modulo n O_K."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .field import CMFieldQuartic, FieldElement, RealElement, _sign_surd
from .orders import Order, elements_of_t2, maximal_order, roots_of_unity_in_field


class ResidueRing:
    """O_K / n O_K with elements as integer coordinate tuples on the O_K basis."""

    def __init__(self, field: CMFieldQuartic, n: int):
        self.field = field
        self.n = n
        self.OK = maximal_order(field)
        self.c = self.OK.structure_constants()
        self.one = (1 % n, 0, 0, 0)

    def from_element(self, x) -> tuple[int, ...]:
        co = self.OK.coords(self.field.element(x))
        return tuple(v % self.n for v in co)

    def to_element(self, a) -> FieldElement:
        return self.OK.element_from_coords(a)

    def mul(self, x, y):
        c = self.c
        out = [0, 0, 0, 0]
        for a in range(4):
            xa = x[a]
            if xa:
                for b in range(4):
                    yb = y[b]
                    if yb:
                        w = xa * yb
                        cab = c[a][b]
                        out[0] += w * cab[0]
                        out[1] += w * cab[1]
                        out[2] += w * cab[2]
                        out[3] += w * cab[3]
        n = self.n
        return (out[0] % n, out[1] % n, out[2] % n, out[3] % n)

    def power(self, x, e: int):
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def norm(self, x) -> int:
        return int(self.to_element(x).norm())

    def is_unit(self, x) -> bool:
        return gcd(self.norm(x), self.n) == 1

    def inverse(self, x):
        """Inverse of a unit residue (via x^{-1} = conj-type cofactor / norm)."""
        N = self.norm(x)
        e = self.to_element(x)
        cof = e.inverse() * N  # integral: the adjugate-type cofactor
        inv_n = pow(N % self.n, -1, self.n)
        y = self.from_element(cof)
        return tuple((v * inv_n) % self.n for v in y)


@lru_cache(maxsize=None)
def torsion_generator(field: CMFieldQuartic) -> FieldElement:
    """A generator of the roots of unity of K."""
    mu = roots_of_unity_in_field(field)
    w = len(mu)
    for z in mu:
        if all(z ** (w // q) != 1 for q in _prime_divisors(w)):
            return z
    raise AssertionError("no torsion generator")  # pragma: no cover


def _prime_divisors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def real_embedding_bound(x: RealElement) -> Fraction:
    """A rational upper bound for max(|x_1|, |x_2|) over both real embeddings."""
    a, b = x.surd()
    m = x.field.m
    # |a| + |b| sqrt(m), sqrt(m) <= isqrt(m) + 1
    return abs(a) + abs(b) * (isqrt(m) + 1)


@lru_cache(maxsize=None)
def fundamental_unit_ok(field: CMFieldQuartic) -> FieldElement:
    """A unit eta of O_K generating O_K^x modulo roots of unity."""
    eps = field.fundamental_unit
    if eps.norm() == -1:
        return eps.to_field()
    mu = roots_of_unity_in_field(field)
    OK = maximal_order(field)
    for s in (1, -1):
        e = eps * s
        if not e.is_totally_positive():
            continue
        target = 2 * e.trace()
        for y in elements_of_t2(OK.lattice, field, target, exact=True):
            sq = y * y
            for z in mu:
                if sq == z * eps.to_field():
                    return y
    return eps.to_field()


def hasse_index(field: CMFieldQuartic) -> int:
    return 1 if fundamental_unit_ok(field).is_real() else 2


class UnitData:
    """O^x = mu_O x <eta_O> for an order O."""

    def __init__(self, O: Order):
        self.order = O
        K = O.field
        self.field = K
        self.mu = O.roots_of_unity()
        self.mu_K = list(roots_of_unity_in_field(K))
        eta = fundamental_unit_ok(K)
        f = O.index()
        R = ResidueRing(K, f) if f > 1 else None
        self.eta_K = eta
        if f == 1:
            self.k = 1
            self.eta = eta
        else:
            e_res = R.from_element(eta)
            zres = [R.from_element(z) for z in self.mu_K]
            p = R.one
            k = 0
            found = None
            while found is None:
                k += 1
                p = R.mul(p, e_res)
                for z, zr in zip(self.mu_K, zres):
                    if O.contains(R.to_element(R.mul(p, zr))):
                        found = (k, z)
                        break
            self.k = found[0]
            self.eta = found[1] * eta ** found[0]
        self.nu = self.eta * self.eta.conjugate()  # totally positive generator of N(O^x)
        self.coset_reps = [z * eta ** j for j in range(self.k) for z in self.mu_K]

    def real_unit_generator(self) -> RealElement:
        """Generator of the totally positive units of O0 = O cap K0."""
        eps = self.field.fundamental_unit
        O = self.order
        k = 1
        e = eps
        while not O.contains(e.to_field()):
            k += 1
            e = e * eps
        if e.norm() == -1:
            e = e * e
        if not e.is_totally_positive():
            e = -e
        return e


def _gt_one(x: RealElement) -> int:
    a, b = (x - 1).surd()
    return _sign_surd(a, b, x.field.m)


def unit_log_power(rho: RealElement, nu: RealElement) -> int | None:
    """k with rho = nu^k, or None.  nu must be a unit other than +-1."""
    if not rho or not rho.is_totally_positive() or rho.norm() != 1:
        return None
    sign = 1
    if _gt_one(nu) < 0:
        nu, sign = nu.inverse(), -1
    k = 0
    x = rho
    step, inv = (nu.inverse(), 1) if _gt_one(x) > 0 else (nu, -1)
    while True:
        if x == 1:
            return sign * k
        before = _gt_one(x)
        x = x * step
        k += inv
        if x != 1 and _gt_one(x) != before:
            return None


def _primes_of(n: int) -> dict[int, int]:
    from .orders import factorize
    return factorize(n)


def primitive_root_mod_prime(P) -> FieldElement:
    """An element of O_K whose class generates (O_K / P)^x."""
    from itertools import product
    K = P.field
    OK = maximal_order(K)
    q = int(P.norm())
    p = _prime_divisors(q)[0]
    R = ResidueRing(K, p)
    ell = _prime_divisors(q - 1)
    for rng in range(1, 50):
        for c in product(range(-rng, rng + 1), repeat=4):
            if max(abs(x) for x in c) != rng and rng > 1:
                continue
            x = OK.element_from_coords(c)
            if P.contains(x):
                continue
            xr = R.from_element(x)
            ok = True
            for l in ell:
                y = R.power(xr, (q - 1) // l)
                if P.contains(R.to_element(y) - 1):
                    ok = False
                    break
            if ok:
                return x
    raise RuntimeError("no primitive root found")  # pragma: no cover


@lru_cache(maxsize=None)
def ok_residue_unit_generators(field: CMFieldQuartic, f: int) -> tuple[FieldElement, ...]:
    """Elements of O_K coprime to f whose classes generate (O_K / f O_K)^x."""
    from .ideals import FracIdeal, coprime_split, ideal_mul, prime_decomposition_ok
    if f == 1:
        return ()
    OK = maximal_order(field)
    fac = _primes_of(f)
    gens = []
    for p, v in fac.items():
        dec = prime_decomposition_ok(p, OK)
        rest = f // p ** v
        for idx, (P, e, _) in enumerate(dec):
            n = e * v
            Q = P ** n
            R = FracIdeal.principal(OK, rest)
            for jdx, (P2, e2, _) in enumerate(dec):
                if jdx != idx:
                    R = ideal_mul(R, P2 ** (e2 * v))
            if R.lattice == OK.lattice:
                E = field.one
            else:
                _, E = coprime_split(Q, R)
            local = [primitive_root_mod_prime(P)]
            Pj = P
            for j in range(1, n):
                local += [field.one + b for b in Pj.basis]
                Pj = ideal_mul(Pj, P)
            for u in local:
                gens.append(field.one + (u - 1) * E)
    return tuple(gens)
