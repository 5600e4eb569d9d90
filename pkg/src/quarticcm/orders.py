"""Orders in quartic CM-fields and their real suborders."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .field import CMFieldQuartic, FieldElement, RealElement
from .linalg import (Lattice, det, hnf, kernel_mod_p, lattice_index, lattice_intersect,
                     lattice_sum, rational_inverse, short_vectors)


class OrderError(ValueError):
    pass


def factorize(n: int) -> dict[int, int]:
    """Trial division factorisation of a nonzero integer."""
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mult_matrix(x: FieldElement):
    """Matrix (rows) of multiplication by x on the power basis."""
    K = x.field
    cols = [K.mul_coords(x.coords, tuple(int(i == j) for i in range(4))) for j in range(4)]
    return [[cols[j][i] for j in range(4)] for i in range(4)]


def _apply(M, v):
    return tuple(sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M)))


class Order:
    """A full-rank subring of the maximal order, stored as a canonical lattice
    on the power basis."""

    def __init__(self, field: CMFieldQuartic, lattice: Lattice, *, check: bool = True):
        self.field = field
        self.lattice = lattice
        if check:
            if lattice.rank != 4:
                raise OrderError("an order must have rank 4")
            if not lattice.contains((1, 0, 0, 0)):
                raise OrderError("lattice does not contain 1")
            b = self.basis
            for i in range(4):
                for j in range(i, 4):
                    if not self.contains(b[i] * b[j]):
                        raise OrderError("lattice is not closed under multiplication")

    # -- basics
    @classmethod
    def from_elements(cls, field, elems, check=True) -> "Order":
        return cls(field, Lattice.from_vectors([field.element(e).coords for e in elems], 4),
                   check=check)

    @property
    def basis(self) -> list[FieldElement]:
        return [self.field.element(v) for v in self.lattice.vectors()]

    def __eq__(self, other):
        return isinstance(other, Order) and self.field == other.field and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def __repr__(self):
        return f"Order(index={self.index()}, basis={self.basis})"

    def __contains__(self, x):
        return self.contains(x)

    def contains(self, x) -> bool:
        x = self.field.element(x)
        return self.lattice.contains(x.coords)

    def contains_order(self, other: "Order") -> bool:
        return other.lattice.is_sublattice_of(self.lattice)

    def __le__(self, other: "Order"):
        return other.contains_order(self)

    def coords(self, x) -> list[int]:
        return self.lattice.coords(self.field.element(x).coords)

    def to_json(self) -> dict:
        return self.lattice.to_json()

    # -- invariants
    def discriminant(self) -> int:
        b = self.basis
        M = [[(x * y).trace() for y in b] for x in b]
        d = det(M)
        assert d.denominator == 1
        return int(d)

    def index(self) -> int:
        """[O_K : O]."""
        return int(lattice_index(maximal_order(self.field).lattice, self.lattice))

    conductor_index = index

    def conjugate(self) -> "Order":
        L = Lattice.from_vectors([x.conjugate().coords for x in self.basis], 4)
        return Order(self.field, L, check=False)

    def is_cc_stable(self) -> bool:
        return all(self.contains(x.conjugate()) for x in self.basis)

    def real_suborder(self) -> "RealOrder":
        return RealOrder(self.field, _real_part_lattice(self.lattice))

    def trace_dual(self) -> Lattice:
        """{x : Tr(x O) in Z} as a lattice on the power basis."""
        T = self.field.trace_matrix
        Tinv = rational_inverse(T)
        dual = self.lattice.dual()
        vecs = [_apply(Tinv, v) for v in dual.vectors()]
        return Lattice.from_vectors(vecs, 4)

    def structure_constants(self):
        """c[i][j] = coordinates of b_i b_j in the basis b (integers)."""
        b = self.basis
        return [[self.coords(x * y) for y in b] for x in b]

    def roots_of_unity(self) -> list[FieldElement]:
        return [z for z in roots_of_unity_in_field(self.field) if self.contains(z)]

    def mu_order(self) -> int:
        return len(self.roots_of_unity())

    def conductor_contains(self, f: int) -> bool:
        """Whether f O_K is contained in this order."""
        OK = maximal_order(self.field)
        return all(self.contains(x * f) for x in OK.basis)

    def element_from_coords(self, c) -> FieldElement:
        b = self.lattice.vectors()
        return self.field.element(tuple(sum(ci * v[k] for ci, v in zip(c, b)) for k in range(4)))


class RealOrder:
    """A rank-2 order of the real subfield on the basis (1, w)."""

    def __init__(self, field: CMFieldQuartic, lattice: Lattice):
        self.field = field
        self.lattice = lattice

    @property
    def basis(self) -> list[RealElement]:
        return [RealElement(self.field, *v) for v in self.lattice.vectors()]

    def __eq__(self, other):
        return isinstance(other, RealOrder) and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def contains(self, x: RealElement) -> bool:
        return self.lattice.contains((x.p, x.q))

    def index(self) -> int:
        """[O_{K0} : O0]."""
        return int(lattice_index(maximal_order(self.field).real_suborder().lattice, self.lattice))

    def to_json(self) -> dict:
        return self.lattice.to_json()

    def __repr__(self):
        return f"RealOrder(index={self.index()}, basis={self.basis})"


def _real_part_lattice(L: Lattice) -> Lattice:
    """L intersected with the even-coordinate plane, as a rank-2 lattice on (1, w)."""
    cols = L.cols
    M = [[c[1] for c in cols], [c[3] for c in cols]]
    H, U = hnf(M)
    kernel = [j for j in range(4) if H[0][j] == 0 and H[1][j] == 0]
    vecs = []
    for j in kernel:
        v = [sum(U[i][j] * cols[i][k] for i in range(4)) for k in range(4)]
        vecs.append((Fraction(v[0], L.denom), Fraction(v[2], L.denom)))
    return Lattice.from_vectors(vecs, 2)


# --------------------------------------------------------------------------
# Constructions


def equation_order(field: CMFieldQuartic) -> Order:
    return Order(field, Lattice.from_vectors([tuple(int(i == j) for j in range(4)) for i in range(4)]),
                 check=False)


def order_from_generators(field: CMFieldQuartic, elems: Iterable, *, require_full_rank=False,
                          extra: Optional[Lattice] = None):
    """Smallest ring containing Z, the given integral elements and (optionally)
    the lattice ``extra``.  Returns an Order when of rank 4, else the Lattice."""
    elems = [field.element(e) for e in elems]
    for e in elems:
        if not e.is_integral():
            raise OrderError(f"{e} is not integral")
    vecs = [(1, 0, 0, 0)] + [e.coords for e in elems]
    if extra is not None:
        vecs += extra.vectors()
    L = Lattice.from_vectors(vecs, 4)
    while True:
        b = [field.element(v) for v in L.vectors()]
        prods = [(b[i] * b[j]).coords for i in range(len(b)) for j in range(i, len(b))]
        new = lattice_sum(L, Lattice.from_vectors(prods, 4)) if prods else L
        if new == L:
            break
        L = new
    if L.rank == 4:
        return Order(field, L, check=False)
    if require_full_rank:
        raise OrderError("generated ring does not have rank 4")
    return L


def order_sum(O1: Order, O2: Order) -> Order:
    """Smallest order containing both (the lattice sum is already a ring)."""
    L = lattice_sum(O1.lattice, O2.lattice)
    return order_from_generators(O1.field, [], extra=L)


def order_intersect(O1: Order, O2: Order) -> Order:
    return Order(O1.field, lattice_intersect(O1.lattice, O2.lattice), check=False)


def order_index(O1: Order, O2: Order) -> Fraction:
    """[O1 : O2]."""
    return lattice_index(O1.lattice, O2.lattice)


def order_plus_conductor(O: Order, f: int) -> Order:
    """O + f O_K."""
    OK = maximal_order(O.field)
    return order_from_generators(O.field, [], extra=lattice_sum(O.lattice, OK.lattice.scale(f)))


# --------------------------------------------------------------------------
# Maximal order


def _p_radical(O: Order, p: int) -> Lattice:
    c = O.structure_constants()
    j = 1
    q = p
    while q < 4:
        q *= p
        j += 1

    def mul(x, y):
        out = [0] * 4
        for a in range(4):
            if x[a]:
                for b in range(4):
                    if y[b]:
                        xy = x[a] * y[b]
                        cab = c[a][b]
                        for k in range(4):
                            out[k] += xy * cab[k]
        return [v % p for v in out]

    def powmod(x, e):
        r = [1, 0, 0, 0]  # first basis vector is 1
        while e:
            if e & 1:
                r = mul(r, x)
            x = mul(x, x)
            e >>= 1
        return r

    images = [powmod([int(i == k) for k in range(4)], q) for i in range(4)]
    M = [[images[j][i] for j in range(4)] for i in range(4)]
    ker = kernel_mod_p(M, p)
    b = O.lattice.vectors()
    vecs = [tuple(sum(k[i] * b[i][t] for i in range(4)) for t in range(4)) for k in ker]
    vecs += [tuple(p * x for x in v) for v in b]
    return Lattice.from_vectors(vecs, 4)


def _multiplier_ring(field, I: Lattice) -> Lattice:
    """{x : x I in I}."""
    result = None
    for g in I.vectors():
        M = mult_matrix(field.element(g))
        Minv = rational_inverse(M)
        pre = Lattice.from_vectors([_apply(Minv, v) for v in I.vectors()], 4)
        result = pre if result is None else lattice_intersect(result, pre)
    return result


@lru_cache(maxsize=None)
def maximal_order(field: CMFieldQuartic) -> Order:
    O = equation_order(field)
    for p, e in factorize(field.poly_disc).items():
        if e < 2:
            continue
        while True:
            I = _p_radical(O, p)
            L = _multiplier_ring(field, I)
            if L == O.lattice:
                break
            O = Order(field, L, check=False)
    return O


def rel_disc_norm(field: CMFieldQuartic) -> int:
    """N_{K0/Q} of the relative discriminant, disc(O_K) / D^2."""
    d = maximal_order(field).discriminant()
    q, r = divmod(d, field.D ** 2)
    if r:
        raise OrderError("discriminant tower inconsistency")
    return q


@lru_cache(maxsize=None)
def roots_of_unity_in_field(field: CMFieldQuartic) -> tuple[FieldElement, ...]:
    """All roots of unity of K (algebraic integers with Tr(x conj x) = 4)."""
    OK = maximal_order(field)
    b = OK.basis
    G = [[(x * y.conjugate()).trace() for y in b] for x in b]
    out = []
    for v in short_vectors(G, 4):
        x = OK.element_from_coords(v)
        if x.t2() == 4:
            out.append(x)
    out.sort(key=lambda z: z.coords)
    return tuple(out)


def ok_t2_gram(field: CMFieldQuartic):
    OK = maximal_order(field)
    b = OK.basis
    return [[(x * y.conjugate()).trace() for y in b] for x in b]


def elements_of_t2(lattice: Lattice, field: CMFieldQuartic, bound, exact=False):
    """Elements x of the lattice with Tr(x conj x) <= bound (== bound if exact)."""
    vecs = lattice.vectors()
    b = [field.element(v) for v in vecs]
    G = [[(x * y.conjugate()).trace() for y in b] for x in b]
    out = []
    for c in short_vectors(G, bound):
        x = field.element(tuple(sum(ci * v[k] for ci, v in zip(c, vecs)) for k in range(4)))
        if exact and x.t2() != bound:
            continue
        out.append(x)
    return out


def _root_t2_guess(poly) -> Optional[int]:
    import numpy as np
    r = np.roots([float(c) for c in poly])
    v = float(np.sum(np.abs(r) ** 2))
    n = round(v)
    return n if abs(v - n) < 1e-6 * max(1.0, v) else None


def roots_in_field(field: CMFieldQuartic, poly: tuple[int, ...]) -> list[FieldElement]:
    """Roots in K of a monic integer quartic (coefficients highest degree first).

    Every root has the same T2 (the sum of squared moduli of the complex roots),
    so the search enumerates that single shell exactly; the full Fujiwara box is
    the fallback when the numerical shell value is not an integer.
    """
    poly = tuple(int(c) for c in poly)
    OK = maximal_order(field)
    t2 = _root_t2_guess(poly)
    if t2 is not None:
        out = [x for x in elements_of_t2(OK.lattice, field, t2, exact=True)
               if tuple(int(c) for c in x.charpoly()) == poly]
        if out:
            return out
    n = len(poly) - 1
    r = 0
    for k in range(1, n + 1):
        c = abs(poly[k])
        if c:
            rk = 1
            while rk ** k < c:
                rk += 1
            r = max(r, rk)
    bound = 4 * (2 * r) ** 2
    return [x for x in elements_of_t2(OK.lattice, field, bound)
            if tuple(int(c) for c in x.charpoly()) == poly]


# --------------------------------------------------------------------------
# Enumeration of suborders


def _sublattices_z3(index: int) -> Iterator[list[list[int]]]:
    """Column HNF bases (as columns) of all sublattices of Z^3 of given index."""
    for a in _divisors(index):
        for b in _divisors(index // a):
            c = index // (a * b)
            for x in range(a):
                for y in range(a):
                    for z in range(b):
                        yield [[a, 0, 0], [x, b, 0], [y, z, c]]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def suborders(field: CMFieldQuartic, index: int, *, cc_stable: bool = False) -> list[Order]:
    """All orders of index exactly ``index`` in O_K (optionally cc-stable)."""
    OK = maximal_order(field)
    b = OK.basis
    c = OK.structure_constants()
    conj = [OK.coords(x.conjugate()) for x in b]
    out = []
    for cols in _sublattices_z3(index):
        L = Lattice.from_integer(4, 1, [[1, 0, 0, 0]] + [[0] + col for col in cols])
        vecs = [tuple(v) for v in L.cols]
        ok = True
        for i in range(4):
            for j in range(i, 4):
                vi, vj = vecs[i], vecs[j]
                prod_ = [0, 0, 0, 0]
                for s in range(4):
                    if vi[s]:
                        for t in range(4):
                            if vj[t]:
                                w = vi[s] * vj[t]
                                cst = c[s][t]
                                for k in range(4):
                                    prod_[k] += w * cst[k]
                if any(L.reduce_int(prod_)):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if cc_stable:
            for v in vecs:
                w = [sum(v[s] * conj[s][k] for s in range(4)) for k in range(4)]
                if any(L.reduce_int(w)):
                    ok = False
                    break
            if not ok:
                continue
        out.append(order_from_ok_coords(field, L))
    return out


def order_from_ok_coords(field: CMFieldQuartic, L: Lattice) -> Order:
    """Order whose lattice is given in coordinates on the O_K basis."""
    OK = maximal_order(field)
    b = OK.lattice.vectors()
    vecs = [tuple(sum(v[i] * b[i][k] for i in range(4)) for k in range(4)) for v in L.vectors()]
    return Order(field, Lattice.from_vectors(vecs, 4), check=False)


def orders_containing(field: CMFieldQuartic, O: Order, *, cc_stable: bool = False) -> list[Order]:
    """All orders O' with O in O' in O_K."""
    N = O.index()
    out = []
    for d in _divisors(N):
        for O2 in suborders(field, d, cc_stable=cc_stable):
            if O2.contains_order(O):
                out.append(O2)
    return out


def conductor(O: Order) -> int:
    """Smallest f > 0 with f O_K inside O (the exponent of O_K / O)."""
    N = O.index()
    for d in _divisors(N):
        if O.conductor_contains(d):
            return d
    return N  # pragma: no cover


def orders_with_conductor_dividing(field: CMFieldQuartic, f: int, *,
                                   cc_stable: bool = False) -> list[Order]:
    """All orders containing f O_K, assembled prime by prime.

    An order containing f O_K is the intersection of its localisations
    O + (f / p^v) O_K, so the local lists are enumerated separately and then
    intersected; the local lists only need indices dividing p^(3v).
    """
    OK = maximal_order(field)
    local_lists = []
    for p, v in factorize(f).items():
        q = p ** v
        loc = []
        for d in _divisors(q ** 3):
            for O in suborders(field, d, cc_stable=cc_stable):
                if O.conductor_contains(q):
                    loc.append(O)
        local_lists.append(loc)
    out = [OK]
    for loc in local_lists:
        out = [order_intersect(A, B) for A in out for B in loc]
    return out
