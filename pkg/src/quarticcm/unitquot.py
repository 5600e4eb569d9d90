"""Residue-ring unit groups (O / f O_K)^x and the relative norm map psi."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .field import CMFieldQuartic, FieldElement
from .linalg import Lattice, group_structure, subgroup_quotient
from .orders import Order, RealOrder, factorize, maximal_order


class ResidueError(ValueError):
    pass


def _int_det(M) -> int:
    n = len(M)
    A = [row[:] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


class Ambient:
    """A maximal order (of K or of K0) with integer structure constants."""

    def __init__(self, field: CMFieldQuartic, basis: list[FieldElement]):
        self.field = field
        self.basis = basis
        self.n = len(basis)
        self.lattice = Lattice.from_vectors([b.coords for b in basis], 4)
        # coordinates with respect to ``basis`` (which need not be in HNF)
        self._B = [[b.coords[k] for b in basis] for k in range(4)]
        self.sc = [[self.coords(x * y) for y in basis] for x in basis]
        self.conj = [self.coords(b.conjugate()) for b in basis]

    def coords(self, x: FieldElement) -> list[int]:
        d = self.lattice.denom
        cols = [[int(v * d) for v in b.coords] for b in self.basis]
        tgt = [x.coords[k] * d for k in range(4)]
        if any(t.denominator != 1 for t in tgt):
            raise ResidueError("element is not in the maximal order")
        sol = _solve_rank(cols, [int(t) for t in tgt])
        if sol is None:
            raise ResidueError("element is not in the maximal order")
        return sol

    def element(self, c) -> FieldElement:
        out = [Fraction(0)] * 4
        for ci, b in zip(c, self.basis):
            if ci:
                for k in range(4):
                    out[k] += ci * b.coords[k]
        return self.field.element(out)

    def sublattice(self, elems) -> Lattice:
        """Lattice (in ambient coordinates) spanned by the given elements."""
        return Lattice.from_vectors([tuple(self.coords(e)) for e in elems], self.n)


def _solve_rank(cols, target):
    """Solve sum u_j cols[j] = target for linearly independent integer columns."""
    from .ideals import solve_integer
    return solve_integer(cols, target)


def ambient_k(field: CMFieldQuartic) -> Ambient:
    return Ambient(field, maximal_order(field).basis)


def ambient_k0(field: CMFieldQuartic) -> Ambient:
    return Ambient(field, [r.to_field() for r in maximal_order(field).real_suborder().basis])


_amb_cache: dict = {}


def _ambient(field, real: bool) -> Ambient:
    key = (field, real)
    if key not in _amb_cache:
        _amb_cache[key] = ambient_k0(field) if real else ambient_k(field)
    return _amb_cache[key]


def quotient_representatives(big: Lattice, small: Lattice):
    """Integer vectors representing big / small (small a full sublattice of big)."""
    n = big.n
    bv = big.vectors()
    # coordinates of small in the big basis
    from .linalg import rational_inverse
    Bm = [[bv[j][i] for j in range(n)] for i in range(n)]
    Binv = rational_inverse(Bm)
    cols = []
    for v in small.vectors():
        c = [sum(Binv[i][k] * v[k] for k in range(n)) for i in range(n)]
        if any(x.denominator != 1 for x in c):
            raise ResidueError("not a sublattice")
        cols.append([int(x) for x in c])
    S = Lattice.from_integer(n, 1, cols)
    ranges = [range(S.cols[i][S.pivots[i]]) for i in range(n)]
    for c in product(*ranges):
        yield tuple(sum(c[j] * bv[j][k] for j in range(n)) for k in range(n))


class ResidueUnitGroup:
    """(O / f M)^x where M is the maximal order of K (or of K0 when ``real``)."""

    def __init__(self, field: CMFieldQuartic, order_lattice: Lattice, f: int, *, real: bool = False,
                 cap: int = 2 * 10 ** 6):
        self.field = field
        self.f = f
        self.real = real
        amb = _ambient(field, real)
        self.amb = amb
        n = amb.n
        self.n = n
        fM = Lattice.from_integer(n, 1, [[f * int(i == j) for j in range(n)] for i in range(n)])
        if not fM.is_sublattice_of(order_lattice):
            raise ResidueError("f times the maximal order is not contained in the order")
        self.order_lattice = order_lattice
        size = int(fM.covolume() / order_lattice.covolume())
        if size > cap:
            raise ResidueError(f"residue ring too large ({size} elements)")
        self.ring_size = size
        one = self._reduce(amb.coords(field.one))
        self.one = one
        units = []
        for v in quotient_representatives(order_lattice, fM):
            r = tuple(int(x) % f for x in v)
            if self.is_unit(r):
                units.append(r)
        self.units = units
        self.group = group_structure(units, self.mul, lambda x: x == one, identity=one,
                                     key=lambda x: x, skip_redundant=True, cap=cap)

    # -- arithmetic
    def _reduce(self, c):
        return tuple(int(x) % self.f for x in c)

    def residue(self, x: FieldElement):
        return self._reduce(self.amb.coords(x))

    def element(self, r) -> FieldElement:
        return self.amb.element(r)

    def mul(self, x, y):
        sc = self.amb.sc
        n = self.n
        out = [0] * n
        for a in range(n):
            xa = x[a]
            if xa:
                for b in range(n):
                    yb = y[b]
                    if yb:
                        w = xa * yb
                        cab = sc[a][b]
                        for k in range(n):
                            out[k] += w * cab[k]
        f = self.f
        return tuple(v % f for v in out)

    def conjugate(self, x):
        cj = self.amb.conj
        n = self.n
        out = [0] * n
        for a in range(n):
            if x[a]:
                for k in range(n):
                    out[k] += x[a] * cj[a][k]
        return tuple(v % self.f for v in out)

    def norm_int(self, x) -> int:
        sc = self.amb.sc
        n = self.n
        M = [[sum(x[a] * sc[a][b][k] for a in range(n)) for b in range(n)] for k in range(n)]
        return _int_det(M)

    def is_unit(self, x) -> bool:
        return gcd(self.norm_int(x), self.f) == 1

    def in_lattice(self, x, L: Lattice) -> bool:
        return L.contains(x)

    # -- group data
    @property
    def order(self) -> int:
        return self.group.order

    @property
    def invariants(self):
        return self.group.invariants

    def dlog(self, x):
        return self.group.dlog(x)

    def subgroup_dlogs(self, elems):
        out = []
        for e in elems:
            d = self.dlog(e)
            if d is None:
                raise ResidueError("element is not a unit of this residue ring")
            out.append(d)
        return out

    def quotient_invariants(self, sub_elems) -> list[int]:
        r = len(self.invariants)
        eye = [[int(i == j) for j in range(r)] for i in range(r)]
        return subgroup_quotient(self.invariants, eye, self.subgroup_dlogs(sub_elems))


def residue_units(O: Order, f: int, cap: int = 2 * 10 ** 6) -> ResidueUnitGroup:
    """(O / f O_K)^x."""
    amb = _ambient(O.field, False)
    return ResidueUnitGroup(O.field, amb.sublattice(O.basis), f, cap=cap)


def residue_units_real(O0: RealOrder, f: int, cap: int = 2 * 10 ** 6) -> ResidueUnitGroup:
    """(O0 / f O_{K0})^x."""
    amb = _ambient(O0.field, True)
    return ResidueUnitGroup(O0.field, amb.sublattice([b.to_field() for b in O0.basis]), f,
                            real=True, cap=cap)


def local_unit_counts(O: Order, f: int) -> dict[int, int]:
    """|(O / (p^v O + f O_K))^x| for each prime power p^v exactly dividing f."""
    K = O.field
    amb = _ambient(K, False)
    OL = amb.sublattice(O.basis)
    out = {}
    for p, v in factorize(f).items():
        q = p ** v
        fM = Lattice.from_integer(4, 1, [[f * int(i == j) for j in range(4)] for i in range(4)])
        I = Lattice.from_integer(4, 1, [[q * x for x in c] for c in OL.cols] + [list(c) for c in fM.cols])
        cnt = 0
        R = ResidueUnitGroup.__new__(ResidueUnitGroup)
        R.amb, R.n, R.f = amb, 4, f
        for vec in quotient_representatives(OL, I):
            r = tuple(int(x) % f for x in vec)
            if gcd(R.norm_int(r), p) == 1:
                cnt += 1
        out[p] = cnt
    return out


# --------------------------------------------------------------------------
# The map psi


@dataclass
class PsiReport:
    f: int
    domain_factors: list
    codomain_factors: list
    kernel_factors: list
    kernel_exponent: int
    domain_size: int
    kernel_size: int

    def to_json(self) -> dict:
        return {"f": self.f, "domain_factors": self.domain_factors,
                "codomain_factors": self.codomain_factors,
                "kernel_factors": self.kernel_factors,
                "kernel_exponent": self.kernel_exponent}


def _exponent(factors) -> int:
    return factors[-1] if factors else 1


def psi(O: Order, O_circ: Order, f: int) -> PsiReport:
    """Relative norm map on (O/fO_K)^x / ((O°/fO_K)^x mu_O) for an order
    O° inside O (both cc-stable)."""
    if not O_circ.conductor_contains(f):
        raise ResidueError("f O_K must be contained in O°")
    if not O.contains_order(O_circ):
        raise ResidueError("O° must be contained in O")
    G = residue_units(O, f)
    Gc = residue_units(O_circ, f)
    amb = G.amb
    Lc = amb.sublattice(O_circ.basis)
    mu = [G.residue(z) for z in O.roots_of_unity()]
    denom = [G.residue(Gc.element(g)) for g in Gc.group.gens] + mu
    # kernel: x with x conj(x) in O°
    ker_elems = [x for x in G.units if Lc.contains(G.mul(x, G.conjugate(x)))]
    one = G.one
    Kgrp = group_structure(ker_elems, G.mul, lambda x: x == one, identity=one, key=lambda x: x,
                           skip_redundant=True)
    r = len(G.invariants)
    kernel = subgroup_quotient(G.invariants, G.subgroup_dlogs(Kgrp.gens), G.subgroup_dlogs(denom)) if r else []
    domain = G.quotient_invariants(denom) if r else []
    O0 = O.real_suborder()
    Oc0 = O_circ.real_suborder()
    H = residue_units_real(O0, f)
    Hc = residue_units_real(Oc0, f)
    codomain = H.quotient_invariants([H.residue(Hc.element(g)) for g in Hc.group.gens]) if H.invariants else []
    ks = 1
    for d in kernel:
        ks *= d
    ds = 1
    for d in domain:
        ds *= d
    return PsiReport(f, domain, codomain, kernel, _exponent(kernel), ds, ks)


def psi_kernel(O: Order, O_prime: Order, f: int) -> PsiReport:
    """psi for the pair (O, O ∩ O')."""
    from .orders import order_intersect
    return psi(O, order_intersect(O, O_prime), f)


def kernel_exponent(O: Order, O_circ: Order, f: int) -> int:
    return psi(O, O_circ, f).kernel_exponent


# --------------------------------------------------------------------------
# Counting bounds


def prop41_bounds(O: Order, O_circ: Order, f: int, n: int = 4):
    """(lower, actual, upper) for |(O/fO_K)^x| / |(O°/fO_K)^x| against
    [O:O°] prod_{p|f} (1-1/p)^{+-n}."""
    G = residue_units(O, f)
    Gc = residue_units(O_circ, f)
    actual = Fraction(G.order, Gc.order)
    idx = Fraction(O_circ.index(), O.index())
    c = Fraction(1)
    for p in factorize(f):
        c *= (1 - Fraction(1, p)) ** n
    lower, upper = idx * c, idx / c
    return lower, actual, upper


def lemma42_bounds(p: int, v: int, mu_order: int) -> bool:
    """Whether valuation v at p is permitted: p^(v-6)(p-1)^6 <= 8 #mu_O, and
    p < 10 #mu_O whenever v >= 1."""
    if v < 0:
        return False
    if v == 0:
        return True
    if p >= 10 * mu_order:
        return False
    return Fraction(p) ** (v - 6) * (p - 1) ** 6 <= 8 * mu_order
