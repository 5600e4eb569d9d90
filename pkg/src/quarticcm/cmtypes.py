"""CM-types and reflex type norms of cyclic quartic fields; the groups S_O and
the minimal orders O_min,f."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .field import CMFieldQuartic, FieldElement, CYCLIC
from .ideals import FracIdeal, ideal_mul
from .linalg import Lattice
from .orders import (Order, conductor, elements_of_t2, maximal_order, order_from_generators,
                     roots_of_unity_in_field)
from .classgroups import is_principal, ok_class_generators_coprime
from .units import ok_residue_unit_generators


class CMTypeError(ValueError):
    pass


@dataclass(frozen=True)
class CMTypeCyclic:
    """Phi = {id, sigma^k} with k in {1, 3}."""

    field: CMFieldQuartic
    k: int = 1

    def __post_init__(self):
        if self.field.galois_type != CYCLIC:
            raise CMTypeError("CM-types are only realised for cyclic fields")
        if self.k not in (1, 3):
            raise CMTypeError("the second embedding must be sigma or sigma^3")

    @property
    def reflex_k(self) -> int:
        return 4 - self.k

    def other(self) -> "CMTypeCyclic":
        return CMTypeCyclic(self.field, self.reflex_k)

    def type_norm(self, x):
        if isinstance(x, FracIdeal):
            return ideal_mul(x, sigma_ideal(x, self.k))
        x = self.field.element(x)
        return x * x.sigma(self.k)

    def reflex_type_norm(self, y):
        if isinstance(y, FracIdeal):
            return ideal_mul(y, sigma_ideal(y, self.reflex_k))
        y = self.field.element(y)
        return y * y.sigma(self.reflex_k)

    def is_positive(self, xi: FieldElement) -> bool:
        """Whether the purely imaginary xi has positive imaginary part under
        both embeddings of the type."""
        if not xi.is_imaginary() or not xi:
            return False
        K = self.field
        r = (xi / K.gen).to_real()
        t = (K.sigma(K.gen, self.k) / K.gen).to_real()
        s1, s2 = r.signs()
        t1, _ = t.signs()
        return s1 > 0 and t1 * s2 > 0


def sigma_ideal(a: FracIdeal, k: int = 1) -> FracIdeal:
    vecs = [x.sigma(k).coords for x in a.basis]
    return FracIdeal(a.order, Lattice.from_vectors(vecs, 4))


def _default_type(K: CMFieldQuartic, phi: Optional[CMTypeCyclic]) -> CMTypeCyclic:
    return phi if phi is not None else CMTypeCyclic(K, 1)


# --------------------------------------------------------------------------
# Ray class generators and S_O


def ray_class_generators(field: CMFieldQuartic, f: int) -> list[FracIdeal]:
    """Ideals of O_K coprime to f generating the ray class group modulo f."""
    if field.galois_type != CYCLIC:
        raise CMTypeError("reflex field only realised for cyclic fields")
    OK = maximal_order(field)
    gens = list(ok_class_generators_coprime(field, f))
    for t in ok_residue_unit_generators(field, f):
        gens.append(FracIdeal.principal(OK, t))
    return gens


def _principal_generator(a: FracIdeal) -> Optional[FieldElement]:
    # cheap path: ideals built as tO_K remember nothing, so test small bases
    return is_principal(a)


def reflex_norm_candidates(a: FracIdeal, phi: CMTypeCyclic) -> list[FieldElement]:
    """All mu with mu O_K = N_{Phi^r}(a) and mu conj(mu) = N(a)."""
    K = a.field
    N = a.norm()
    g = is_principal(a)
    if g is not None:
        mu0 = phi.reflex_type_norm(g)
        n0 = mu0 * mu0.conjugate()
        if n0 == N:
            return [z * mu0 for z in roots_of_unity_in_field(K)]
    B = phi.reflex_type_norm(a)
    d = B.lattice.denom
    out = []
    for x in elements_of_t2(B.lattice.scale(d), K, 4 * N * d * d, exact=True):
        mu = x / d
        if mu * mu.conjugate() == N:
            out.append(mu)
    return out


def s_member(a: FracIdeal, O: Order, f: int, phi: Optional[CMTypeCyclic] = None,
             witness: bool = False):
    """Whether the pair (N_{Phi^r}(a), N(a)) is trivial in the polarised class
    group of O (a an integral O_K-ideal coprime to f)."""
    K = O.field
    phi = _default_type(K, phi)
    if not a.is_coprime_to(f):
        raise CMTypeError("ideal is not coprime to f")
    for mu in reflex_norm_candidates(a, phi):
        if O.contains(mu):
            return (True, mu) if witness else True
    return (False, None) if witness else False


def is_s_full(O: Order, f: Optional[int] = None, phi: Optional[CMTypeCyclic] = None) -> bool:
    K = O.field
    if f is None:
        f = conductor(O)
    return all(s_member(a, O, f, phi) for a in ray_class_generators(K, f))


# --------------------------------------------------------------------------
# Minimal orders


def omin_generators(field: CMFieldQuartic, f: int, phi: Optional[CMTypeCyclic] = None):
    """For each ray class generator, the list of admissible mu (one per root of unity)."""
    phi = _default_type(field, phi)
    out = []
    for a in ray_class_generators(field, f):
        cands = reflex_norm_candidates(a, phi)
        if not cands:
            raise CMTypeError("S_{O_K} is not the full ideal group: no admissible mu")
        out.append(cands)
    return out


def _fok(field: CMFieldQuartic, f: int) -> Lattice:
    return maximal_order(field).lattice.scale(f)


def omin(field: CMFieldQuartic, f: int, phi: Optional[CMTypeCyclic] = None) -> Order:
    """Z[mu_i] + f O_K (the mu_i are unique up to sign outside Q(zeta_5))."""
    if len(roots_of_unity_in_field(field)) > 2:
        raise CMTypeError("for Q(zeta_5) use omin_zeta5")
    if f == 1:
        return maximal_order(field)
    mus = [c[0] for c in omin_generators(field, f, phi)]
    return order_from_generators(field, mus, extra=_fok(field, f), require_full_rank=True)


def omin_stabilize(field: CMFieldQuartic, p: int, phi: Optional[CMTypeCyclic] = None,
                   max_k: int = 12) -> tuple[int, Order, list[Order]]:
    """Smallest k with A_{k+1} = A_k for A_k = O_min,p^k; returns (k, A_k, chain)."""
    chain = [maximal_order(field)]
    for k in range(max_k):
        nxt = omin(field, p ** (k + 1), phi)
        chain.append(nxt)
        if nxt == chain[k]:
            return k, chain[k], chain
    raise CMTypeError("chain did not stabilise")


def omin_zeta5(field: CMFieldQuartic, f: int, phi: Optional[CMTypeCyclic] = None) -> list[Order]:
    """Inclusion-minimal orders Z[zeta^{e_i} mu_i] + f O_K over all choices e_i."""
    if len(roots_of_unity_in_field(field)) != 10:
        raise CMTypeError("field is not Q(zeta_5)")
    base = order_from_generators(field, [], extra=_fok(field, f), require_full_rank=True)
    rings = {base.lattice: base}
    for cands in omin_generators(field, f, phi):
        # up to sign, the ten candidates give five distinct rings
        reps = []
        for mu in cands:
            if not any(mu == -r for r in reps):
                reps.append(mu)
        new = {}
        for R in rings.values():
            if any(R.contains(mu) for mu in reps):
                new[R.lattice] = R
                continue
            for mu in reps:
                S = order_from_generators(field, [mu], extra=R.lattice, require_full_rank=True)
                new[S.lattice] = S
        rings = new
    orders = list(rings.values())
    minimal = [O for O in orders
               if not any(P != O and O.contains_order(P) for P in orders)]
    minimal.sort(key=lambda O: (O.index(), O.lattice.cols))
    return minimal
