"""Fractional ideals of orders in quartic CM-fields."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .field import CMFieldQuartic, FieldElement
from .linalg import (Lattice, hnf, kernel_mod_p, lattice_index, lattice_intersect, lattice_sum,
                     rational_inverse)
from .orders import Order, mult_matrix, _apply


class IdealError(ValueError):
    pass


class FracIdeal:
    """A fractional ideal of ``order`` given by its lattice on the power basis."""

    __slots__ = ("order", "lattice")

    def __init__(self, order: Order, lattice: Lattice):
        if lattice.rank != 4:
            raise IdealError("the zero ideal is not allowed")
        self.order = order
        self.lattice = lattice

    @property
    def field(self) -> CMFieldQuartic:
        return self.order.field

    @classmethod
    def from_generators(cls, order: Order, gens: Iterable) -> "FracIdeal":
        K = order.field
        b = order.basis
        vecs = [(K.element(g) * x).coords for g in gens for x in b]
        if not vecs:
            raise IdealError("the zero ideal is not allowed")
        return cls(order, Lattice.from_vectors(vecs, 4))

    @classmethod
    def principal(cls, order: Order, x) -> "FracIdeal":
        return cls.from_generators(order, [x])

    @classmethod
    def unit(cls, order: Order) -> "FracIdeal":
        return cls(order, order.lattice)

    # -- basics
    @property
    def basis(self) -> list[FieldElement]:
        return [self.field.element(v) for v in self.lattice.vectors()]

    def __eq__(self, other):
        return isinstance(other, FracIdeal) and self.order == other.order and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def __repr__(self):
        return f"FracIdeal(norm={self.norm()}, basis={self.basis})"

    def contains(self, x) -> bool:
        return self.lattice.contains(self.field.element(x).coords)

    __contains__ = contains

    def is_integral(self) -> bool:
        return self.lattice.is_sublattice_of(self.order.lattice)

    def to_json(self) -> dict:
        d = self.lattice.to_json()
        d["order"] = self.order.to_json()
        return d

    # -- arithmetic
    def __mul__(self, other):
        if isinstance(other, FracIdeal):
            return ideal_mul(self, other)
        x = self.field.element(other)
        return FracIdeal(self.order, Lattice.from_vectors([(x * b).coords for b in self.basis], 4))

    __rmul__ = __mul__

    def __add__(self, other: "FracIdeal") -> "FracIdeal":
        return FracIdeal(self.order, lattice_sum(self.lattice, other.lattice))

    def __pow__(self, k: int) -> "FracIdeal":
        if k < 0:
            return self.inverse() ** (-k)
        r = FracIdeal.unit(self.order)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def intersect(self, other: "FracIdeal") -> "FracIdeal":
        return FracIdeal(self.order, lattice_intersect(self.lattice, other.lattice))

    def conjugate(self) -> "FracIdeal":
        return ideal_conj(self)

    def norm(self) -> Fraction:
        return ideal_norm(self)

    def inverse(self) -> "FracIdeal":
        inv = colon(FracIdeal.unit(self.order), self)
        if ideal_mul(self, inv).lattice != self.order.lattice:
            raise IdealError("ideal is not invertible")
        return inv

    def is_invertible(self) -> bool:
        return is_invertible(self)

    def is_coprime_to(self, f: int) -> bool:
        """For an integral ideal: a + f O = O."""
        O = self.order
        s = lattice_sum(self.lattice, O.lattice.scale(f))
        return s == O.lattice

    def with_order(self, order: Order) -> "FracIdeal":
        return FracIdeal(order, self.lattice)


def ideal_mul(a: FracIdeal, b: FracIdeal) -> FracIdeal:
    K = a.field
    A = a.basis
    B = b.basis
    vecs = [K.mul_coords(x.coords, y.coords) for x in A for y in B]
    return FracIdeal(a.order, Lattice.from_vectors(vecs, 4))


def ideal_conj(a: FracIdeal) -> FracIdeal:
    return FracIdeal(a.order, Lattice.from_vectors([x.conjugate().coords for x in a.basis], 4))


def ideal_norm(a: FracIdeal) -> Fraction:
    """[O : a] as a rational number."""
    return lattice_index(a.order.lattice, a.lattice)


def colon(a: FracIdeal, b: FracIdeal) -> FracIdeal:
    """(a : b) = {x in K : x b in a}."""
    return FracIdeal(a.order, lattice_colon(a.field, a.lattice, b.lattice))


def lattice_colon(K: CMFieldQuartic, La: Lattice, Lb: Lattice) -> Lattice:
    result = None
    vecs = La.vectors()
    for g in Lb.vectors():
        Minv = rational_inverse(mult_matrix(K.element(g)))
        pre = Lattice.from_vectors([_apply(Minv, v) for v in vecs], 4)
        result = pre if result is None else lattice_intersect(result, pre)
    return result


def is_invertible(a: FracIdeal) -> bool:
    inv = colon(FracIdeal.unit(a.order), a)
    return ideal_mul(a, inv).lattice == a.order.lattice


def extend(a: FracIdeal, big: Order) -> FracIdeal:
    """a * big as an ideal of the larger order."""
    if not a.order.lattice.is_sublattice_of(big.lattice):
        raise IdealError("target order does not contain the ideal's order")
    return ideal_mul(a.with_order(big), FracIdeal.unit(big))


def contract(a: FracIdeal, small: Order) -> FracIdeal:
    """a intersected with the smaller order (for integral a)."""
    return FracIdeal(small, lattice_intersect(a.lattice, small.lattice))


def extend_checked(a: FracIdeal, big: Order, f: int) -> FracIdeal:
    if not a.is_coprime_to(f):
        raise IdealError("ideal is not coprime to f")
    return extend(a, big)


def contract_checked(a: FracIdeal, small: Order, f: int) -> FracIdeal:
    if not a.is_coprime_to(f):
        raise IdealError("ideal is not coprime to f")
    return contract(a, small)


# --------------------------------------------------------------------------
# Linear algebra helpers in order coordinates


def solve_integer(cols, target) -> Optional[list[int]]:
    """Integer u with sum u_j cols[j] = target, or None."""
    m = len(target)
    n = len(cols)
    M = [[cols[j][i] for j in range(n)] for i in range(m)]
    H, U = hnf(M)
    w = list(target)
    coeff = [0] * n
    for j in range(n - 1, -1, -1):
        col = [H[i][j] for i in range(m)]
        piv = max((i for i in range(m) if col[i]), default=None)
        if piv is None:
            continue
        q, r = divmod(w[piv], col[piv])
        if r:
            return None
        coeff[j] = q
        if q:
            w = [a - q * b for a, b in zip(w, col)]
    if any(w):
        return None
    return [sum(U[i][j] * coeff[j] for j in range(n)) for i in range(n)]


def coprime_split(a: FracIdeal, b: FracIdeal) -> tuple[FieldElement, FieldElement]:
    """x in a, y in b with x + y = 1 (a + b must be the unit ideal)."""
    K = a.field
    den = 1
    for L in (a.lattice, b.lattice):
        den = den * L.denom
    va = [[int(x * den) for x in v] for v in a.lattice.vectors()]
    vb = [[int(x * den) for x in v] for v in b.lattice.vectors()]
    u = solve_integer(va + vb, [den, 0, 0, 0])
    if u is None:
        raise IdealError("ideals are not coprime")
    x = K.element(tuple(Fraction(sum(u[j] * va[j][k] for j in range(4)), den) for k in range(4)))
    return x, K.one - x


def _rank_mod_p(vectors, p) -> int:
    if not vectors:
        return 0
    n = len(vectors[0])
    rows = [list(v) for v in vectors]
    # rank = n - dim kernel of the matrix whose rows are the vectors
    return n - len(kernel_mod_p(rows, p))


def _order_mod_p_tools(O: Order, p: int):
    c = O.structure_constants()

    def mul(x, y):
        out = [0, 0, 0, 0]
        for a in range(4):
            if x[a]:
                for b in range(4):
                    if y[b]:
                        xy = x[a] * y[b]
                        cab = c[a][b]
                        for k in range(4):
                            out[k] += xy * cab[k]
        return [v % p for v in out]

    def power(x, e):
        r = [1, 0, 0, 0]
        while e:
            if e & 1:
                r = mul(r, x)
            x = mul(x, x)
            e >>= 1
        return r

    return mul, power


def primes_above(p: int, O: Order) -> list[FracIdeal]:
    """Maximal ideals of O containing p, each as a FracIdeal of O."""
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise IdealError(f"{p} is not prime")
    mul, power = _order_mod_p_tools(O, p)
    q = p
    while q < 4:
        q *= p
    units = [[int(i == k) for k in range(4)] for i in range(4)]
    frob = [power(e, q) for e in units]
    rad = kernel_mod_p([[frob[j][i] for j in range(4)] for i in range(4)], p)

    def ideal_from(vecs) -> Lattice:
        # lattice in order coordinates: given vectors plus p Z^4
        return Lattice.from_integer(4, 1, [list(v) for v in vecs] + [[p * int(i == k) for k in range(4)] for i in range(4)])

    def split(W: Lattice) -> list[Lattice]:
        Wv = [[x % p for x in col] for col in W.cols]
        dimW = _rank_mod_p(Wv, p)
        # Berlekamp subalgebra of O / W: x^p - x in W
        F = []
        for e in units:
            y = power(e, p)
            F.append([(a - b) % p for a, b in zip(y, e)])
        # kernel of [F | -W] on (x, y)
        M = [[F[j][i] for j in range(4)] + [(-w[i]) % p for w in Wv] for i in range(4)]
        ker = kernel_mod_p(M, p)
        Bvecs = [v[:4] for v in ker]
        dimB = _rank_mod_p(Bvecs + Wv, p)
        r = dimB - dimW
        if r <= 1:
            return [W]
        one = [1, 0, 0, 0]
        z = None
        for v in Bvecs:
            if _rank_mod_p(Wv + [one, v], p) > _rank_mod_p(Wv + [one], p):
                z = v
                break
        assert z is not None
        out = []
        for cval in range(p):
            zc = [(z[0] - cval) % p] + [x % p for x in z[1:]]
            gens = [mul(zc, e) for e in units]
            I = Lattice.from_integer(4, 1, [list(col) for col in W.cols] + gens)
            if I.covolume() != 1:
                out.extend(split(I))
        return out

    J = ideal_from(rad)
    maxl = split(J)
    # convert from order coordinates to the power basis
    b = O.lattice.vectors()
    result = []
    seen = set()
    for L in maxl:
        vecs = [tuple(sum(v[i] * b[i][k] for i in range(4)) for k in range(4)) for v in L.vectors()]
        P = FracIdeal(O, Lattice.from_vectors(vecs, 4))
        if P.lattice not in seen:
            seen.add(P.lattice)
            result.append(P)
    result.sort(key=lambda P: (P.norm(), P.lattice.cols))
    return result


def prime_decomposition_ok(p: int, OK: Order) -> list[tuple[FracIdeal, int, int]]:
    """(P, e, f) for the primes of O_K above p."""
    out = []
    pO = FracIdeal.principal(OK, p)
    for P in primes_above(p, OK):
        fdeg = 0
        n = P.norm()
        while n > 1:
            n /= p
            fdeg += 1
        e = 0
        Q = FracIdeal.unit(OK)
        while True:
            Q2 = ideal_mul(Q, P)
            if not pO.lattice.is_sublattice_of(Q2.lattice):
                break
            Q = Q2
            e += 1
        out.append((P, e, fdeg))
    return out
