"""Principality, Picard groups and the polarised ideal class group of an order."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Optional

from .field import CMFieldQuartic, FieldElement, RealElement, CYCLIC
from .ideals import FracIdeal, contract, extend, ideal_mul, primes_above
from .linalg import AbelianGroup, Lattice, _lll_gram, group_structure
from .orders import Order, conductor, elements_of_t2, maximal_order
from .units import (UnitData, ok_residue_unit_generators, real_embedding_bound, unit_log_power)


class ClassGroupError(ValueError):
    pass


_unit_cache: dict = {}


def unit_data(O: Order) -> UnitData:
    key = (O.field, O.lattice)
    if key not in _unit_cache:
        _unit_cache[key] = UnitData(O)
    return _unit_cache[key]


def _sqrt_upper(x: Fraction) -> Fraction:
    """A rational number >= sqrt(x) (x >= 0), within 1/1000 relative error."""
    scale = 10 ** 6
    n = x.numerator * scale * scale
    r = isqrt(n // x.denominator) + 1
    return Fraction(r, scale)


def generator_bound(field: CMFieldQuartic, norm: Fraction) -> Fraction:
    """T2 bound within which a principal O_K-ideal of the given norm has a generator."""
    eps = field.fundamental_unit
    e1 = real_embedding_bound(eps)
    return 2 * _sqrt_upper(Fraction(norm)) * (e1 + 1)


def ok_generator(b: FracIdeal) -> Optional[FieldElement]:
    """A generator of the O_K-ideal ``b`` or None when b is not principal."""
    K = b.field
    d = b.lattice.denom
    N = b.norm() * d ** 4
    L = b.lattice.scale(d)
    bound = generator_bound(K, N)
    for x in elements_of_t2(L, K, bound):
        if abs(x.norm()) == N:
            return x / d
    return None


def is_principal(a: FracIdeal) -> Optional[FieldElement]:
    """A generator x with x O = a, or None.  ``a`` must be invertible."""
    O = a.order
    OK = maximal_order(O.field)
    if O == OK:
        return ok_generator(FracIdeal(OK, a.lattice))
    b = extend(a, OK)
    x0 = ok_generator(b)
    if x0 is None:
        return None
    if abs(x0.norm()) != a.norm():
        return None
    for u in unit_data(O).coset_reps:
        y = u * x0
        if a.contains(y):
            return y
    return None


def minkowski_bound(field: CMFieldQuartic) -> int:
    """Integer upper bound of 3/(2 pi^2) sqrt|disc(O_K)|."""
    d = abs(maximal_order(field).discriminant())
    # 3/(2 pi^2) < 0.15199
    return int(Fraction(15199, 100000) * _sqrt_upper(Fraction(d))) + 1


def _small_primes(bound: int):
    for p in range(2, bound + 1):
        if all(p % q for q in range(2, isqrt(p) + 1)):
            yield p


@lru_cache(maxsize=None)
def _ok_prime_ideals(field: CMFieldQuartic, bound: int):
    OK = maximal_order(field)
    out = []
    for p in _small_primes(bound):
        for P in primes_above(p, OK):
            if P.norm() <= bound:
                out.append(P)
    return out


def _short_element(b: FracIdeal) -> FieldElement:
    """First vector of an LLL basis of b for the form T2."""
    K = b.field
    basis = [K.element(v) for v in b.lattice.vectors()]
    G = [[(x * y.conjugate()).trace() for y in basis] for x in basis]
    _, T = _lll_gram(G)
    x = K.zero
    for c, y in zip(T[0], basis):
        x = x + y * c
    return x


def reducer(a: FracIdeal, a_inv: Optional[FracIdeal] = None) -> FieldElement:
    """A short x in a^-1, so that x a is an integral ideal of small norm in
    the class of a."""
    return _short_element(a_inv if a_inv is not None else a.inverse())


def reduce_ideal(a: FracIdeal) -> FracIdeal:
    return a * reducer(a)


def _ideal_group(gens, O: Order, cap: int = 10 ** 5) -> AbelianGroup:
    # every element is a product of invertible generators, so inverses are
    # carried along instead of recomputed
    inv_cache: dict = {}

    def inverse(x):
        if x.lattice not in inv_cache:
            inv_cache[x.lattice] = x.inverse()
        return inv_cache[x.lattice]

    def compose(x, y):
        z_inv = ideal_mul(inverse(x), inverse(y))
        t = _short_element(z_inv)
        z = ideal_mul(x, y) * t
        inv_cache.setdefault(z.lattice, z_inv * t.inverse())
        return z

    return group_structure(gens, compose, lambda x: is_principal(x) is not None,
                           inverse=inverse, identity=FracIdeal.unit(O), cap=cap)


@lru_cache(maxsize=None)
def class_group_ok(field: CMFieldQuartic) -> AbelianGroup:
    """Class group of O_K generated by primes of norm up to the Minkowski bound."""
    return _ideal_group(_ok_prime_ideals(field, minkowski_bound(field)), maximal_order(field))


def class_number_ok(field: CMFieldQuartic) -> int:
    return class_group_ok(field).order


def ok_class_generators_coprime(field: CMFieldQuartic, f: int) -> list[FracIdeal]:
    """Prime ideals of O_K coprime to f whose classes generate Cl(O_K)."""
    h = class_number_ok(field)
    if h == 1:
        return []
    OK = maximal_order(field)
    chosen = []
    p = 1
    while True:
        p += 1
        if any(p % q == 0 for q in range(2, isqrt(p) + 1)) or f % p == 0:
            continue
        for P in primes_above(p, OK):
            chosen.append(P)
            if _ideal_group(chosen, OK).order == h:
                return _prune(chosen, OK, h)


def _prune(gens, O, h):
    out = list(gens)
    i = 0
    while i < len(out):
        trial = out[:i] + out[i + 1:]
        if trial and _ideal_group(trial, O).order == h:
            out = trial
        else:
            i += 1
    return out


def picard_generators(O: Order, f: int) -> list[FracIdeal]:
    """Invertible O-ideals coprime to f generating Pic(O)."""
    K = O.field
    OK = maximal_order(K)
    if not O.conductor_contains(f):
        raise ClassGroupError("f O_K must be contained in O")
    gens = [contract(P, O) for P in ok_class_generators_coprime(K, f)]
    if O != OK:
        for t in ok_residue_unit_generators(K, f):
            gens.append(contract(FracIdeal.principal(OK, t), O))
    return gens


def class_group(O: Order, f: Optional[int] = None, cap: int = 10 ** 5) -> AbelianGroup:
    """Pic(O) = invertible ideals coprime to f modulo principal ones."""
    if f is None:
        f = conductor(O)
    return _ideal_group(picard_generators(O, f), O, cap=cap)


def group_elements(G: AbelianGroup) -> list:
    """All elements of a group produced by group_structure, as ambient objects."""
    return [x for x, _ in group_elements_with_exponents(G)]


def group_elements_with_exponents(G: AbelianGroup) -> list:
    """Pairs (x, e) with x = prod gens[i]^e[i], over the whole group."""
    elems = [(G.identity, ())]
    for g, d in zip(G.gens, G.invariants):
        new = []
        for e, v in elems:
            x = e
            for k in range(d):
                new.append((x, v + (k,)))
                x = G.compose(x, g)
        elems = new
    return elems


def subgroup_generators(G: AbelianGroup, members: dict) -> list:
    """Generators (at most rank many) of the subgroup whose elements are the
    keys of ``members`` (exponent tuples); returns the mapped values."""
    r = len(G.invariants)
    if r == 0 or not members:
        return []
    diag = [[d if i == j else 0 for i in range(r)] for j, d in enumerate(G.invariants)]
    L = Lattice.from_integer(r, 1, [list(v) for v in members] + diag)
    out = []
    for c in L.cols:
        v = tuple(x % d for x, d in zip(c, G.invariants))
        if any(v):
            out.append(members[v])
    return out


# --------------------------------------------------------------------------
# Polarised pairs


@dataclass(frozen=True)
class PolarisedPair:
    a: FracIdeal
    alpha: RealElement

    def compose(self, other: "PolarisedPair") -> "PolarisedPair":
        return PolarisedPair(ideal_mul(self.a, other.a), self.alpha * other.alpha)

    def inverse(self) -> "PolarisedPair":
        return PolarisedPair(self.a.conjugate(), self.alpha)

    def reduced(self) -> "PolarisedPair":
        """The equivalent pair (x a, x conj(x) alpha) with x a small."""
        # a conj(a) = alpha O, so conj(a) / alpha is the inverse of a
        x = _short_element(self.a.conjugate()) / self.alpha.to_field()
        return PolarisedPair(self.a * x, self.alpha * (x * x.conjugate()).to_real())

    def check(self) -> bool:
        O = self.a.order
        lhs = ideal_mul(self.a, self.a.conjugate())
        rhs = FracIdeal.principal(O, self.alpha.to_field())
        return lhs == rhs and self.alpha.is_totally_positive()

    def to_json(self) -> dict:
        return {"ideal": self.a.lattice.to_json(), "alpha": self.alpha.serialize()}


def is_polarised_trivial(a: FracIdeal, alpha: RealElement) -> Optional[FieldElement]:
    """y with a = yO and alpha = y conj(y), or None."""
    y0 = is_principal(a)
    if y0 is None:
        return None
    n0 = (y0 * y0.conjugate()).to_real()
    rho = alpha / n0
    U = unit_data(a.order)
    k = unit_log_power(rho, U.nu.to_real())
    if k is None:
        return None
    return y0 * U.eta ** k


def find_totally_positive_generator(c: FracIdeal) -> Optional[RealElement]:
    """Totally positive alpha in K0 with c = alpha O, or None."""
    g = is_principal(c)
    if g is None:
        return None
    U = unit_data(c.order)
    for k in range(4):
        ek = U.eta ** k
        for z in U.mu:
            cand = g * ek * z
            if cand.is_real():
                r = cand.to_real()
                if r.is_totally_positive():
                    return r
    return None


class PolarisedClassGroup:
    """The group of pairs (a, alpha) modulo pairs (xO, x conj(x))."""

    def __init__(self, O: Order, f: int, group: AbelianGroup, pic: AbelianGroup):
        self.order = O
        self.f = f
        self.group = group
        self.pic = pic

    @property
    def invariants(self):
        return self.group.invariants

    @property
    def size(self) -> int:
        return self.group.order

    def representatives(self) -> list[PolarisedPair]:
        return group_elements(self.group)

    def is_trivial_pair(self, pair: PolarisedPair) -> bool:
        return is_polarised_trivial(pair.a, pair.alpha) is not None

    def dlog(self, pair: PolarisedPair):
        return self.group.dlog(pair)

    def to_json(self) -> dict:
        return {"order": self.order.to_json(), "f": self.f,
                "invariant_factors": self.invariants,
                "representatives": [p.to_json() for p in self.group.gens]}


def _pair_identity(O: Order) -> PolarisedPair:
    return PolarisedPair(FracIdeal.unit(O), O.field.real(1))


def polarised_class_group(O: Order, f: Optional[int] = None, cap: int = 10 ** 5) -> PolarisedClassGroup:
    if f is None:
        f = conductor(O)
    pic = class_group(O, f, cap=cap)
    admissible = {}
    for a, v in group_elements_with_exponents(pic):
        alpha = find_totally_positive_generator(ideal_mul(a, a.conjugate()))
        if alpha is not None:
            admissible[v] = PolarisedPair(a, alpha)
    gens = subgroup_generators(pic, admissible)
    U = unit_data(O)
    eps = U.real_unit_generator()
    gens.append(PolarisedPair(FracIdeal.unit(O), eps))

    def is_id(p: PolarisedPair) -> bool:
        return is_polarised_trivial(p.a, p.alpha) is not None

    G = group_structure(gens, lambda p, q: p.compose(q).reduced(), is_id, inverse=PolarisedPair.inverse,
                        identity=_pair_identity(O), cap=cap)
    return PolarisedClassGroup(O, f, G, pic)


# --------------------------------------------------------------------------
# The morphism c(O°) -> c(O)


@dataclass
class MorphismKernel:
    size: int
    elements: list
    source_size: int


def morphism_kernel(O_circ: Order, O: Order, f: Optional[int] = None) -> MorphismKernel:
    """Kernel of (a, alpha) -> (aO, alpha) from c(O°) to c(O)."""
    if not O.contains_order(O_circ):
        raise ClassGroupError("O° must be contained in O")
    if f is None:
        f = conductor(O_circ)
    C = polarised_class_group(O_circ, f)
    ker = []
    for pair in C.representatives():
        if is_polarised_trivial(extend(pair.a, O), pair.alpha) is not None:
            ker.append(pair)
    return MorphismKernel(len(ker), ker, C.size)


# --------------------------------------------------------------------------
# Principally polarised classes


@dataclass(frozen=True)
class PPAVClass:
    """(a, xi) with xi purely imaginary, positive for the CM-type and
    xi a conj(a) equal to the trace dual of O."""

    a: FracIdeal
    xi: FieldElement

    def check(self, phi) -> bool:
        O = self.a.order
        if not (self.xi.is_imaginary() and phi.is_positive(self.xi)):
            return False
        lhs = ideal_mul(self.a, self.a.conjugate()) * self.xi
        return lhs.lattice == O.trace_dual()

    def to_json(self) -> dict:
        return {"ideal": self.a.lattice.to_json(), "xi": self.xi.serialize()}


def _xi_candidates(O: Order, xi0: FieldElement, phi) -> list[FieldElement]:
    U = unit_data(O)
    out = []
    for j in range(2):
        ej = U.eta ** j
        for z in U.mu:
            xi = xi0 * z * ej
            if xi.is_imaginary() and phi.is_positive(xi):
                out.append(xi)
    return out


def _same_polarisation(O: Order, xi1: FieldElement, xi2: FieldElement) -> bool:
    rho = (xi1 / xi2)
    if not rho.is_real():
        return False
    return unit_log_power(rho.to_real(), unit_data(O).nu.to_real()) is not None


def ppav_classes(O: Order, f: Optional[int] = None, phi=None) -> list[PPAVClass]:
    """Principally polarised classes of O up to (a, xi) ~ (mu a, xi / (mu conj(mu)))."""
    from .cmtypes import CMTypeCyclic
    K = O.field
    if K.galois_type != CYCLIC:
        raise ClassGroupError("principal polarisations are enumerated on cyclic fields")
    phi = phi if phi is not None else CMTypeCyclic(K, 1)
    if not O.is_cc_stable():
        raise ClassGroupError("order is not stable under complex conjugation")
    if f is None:
        f = conductor(O)
    dual = FracIdeal(O, O.trace_dual())
    if not dual.is_invertible():
        return []
    out = []
    for a in group_elements(class_group(O, f)):
        c = ideal_mul(a, a.conjugate())
        T = ideal_mul(dual, c.inverse())
        xi0 = is_principal(T)
        if xi0 is None:
            continue
        kept: list[FieldElement] = []
        for xi in _xi_candidates(O, xi0, phi):
            if not any(_same_polarisation(O, xi, k) for k in kept):
                kept.append(xi)
        out.extend(PPAVClass(a, xi) for xi in kept)
    return out
