"""Primes at which candidate endomorphism rings cannot be told apart by type norms
of principal ideals."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Optional

from ..cmtypes import CMTypeCyclic, s_member
from ..field import CYCLIC, CMFieldQuartic
from ..ideals import FracIdeal
from ..orders import (Order, factorize, maximal_order, order_intersect, order_sum,
                      orders_with_conductor_dividing, roots_of_unity_in_field)
from ..unitquot import residue_units
from .report import FAIL, PASS, VerificationReport


class FilterError(ValueError):
    pass


def _principal_norm_gens(O: Order, f: int, phi: CMTypeCyclic) -> list[FracIdeal]:
    """Type norms N_Phi(x) O_K for x running over generators of (O/fO_K)^x.

    Together with the ray group modulo f (inside every S_O) these generate
    N_Phi of the principal ideals of O coprime to f.
    """
    OK = maximal_order(O.field)
    if f == 1:
        return []
    G = residue_units(O, f)
    out = []
    for g in G.group.gens:
        x = G.element(g)
        out.append(FracIdeal.principal(OK, phi.type_norm(x)))
    return out


def _norms_inside(O: Order, O_prime: Order, f: int, phi, cache) -> bool:
    key = (O.lattice, O_prime.lattice)
    if key not in cache:
        cache[key] = all(s_member(a, O_prime, f, phi)
                         for a in _principal_norm_gens(O, f, phi))
    return cache[key]


def _val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def annoying_prime_filter(field: CMFieldQuartic, conductor: int,
                          phi: Optional[CMTypeCyclic] = None,
                          cap: int = 400) -> VerificationReport:
    """Prime support of lcm [O + O' : O cap O'] over cc-stable orders containing
    conductor * O_K whose principal type norms land in each other's S."""
    if field.galois_type != CYCLIC:
        raise FilterError("reflex type norms need a cyclic field")
    phi = phi if phi is not None else CMTypeCyclic(field, 1)
    rep = VerificationReport("prime filter", {"field": field.info(), "conductor": conductor})
    if conductor == 1:
        rep.computed = {"lcm": 1, "primes": [], "pairs": 0}
        return rep
    orders = orders_with_conductor_dividing(field, conductor, cc_stable=True)
    if len(orders) > cap:
        raise FilterError(f"{len(orders)} orders exceed the cap {cap}")
    zeta5 = len(roots_of_unity_in_field(field)) == 10
    threshold = 41 if zeta5 else 7
    cache: dict = {}
    L = 1
    pairs = 0
    bad = []
    for i, O in enumerate(orders):
        for O2 in orders[i + 1:]:
            if not (_norms_inside(O, O2, conductor, phi, cache)
                    and _norms_inside(O2, O, conductor, phi, cache)):
                continue
            pairs += 1
            Oc = order_intersect(O, O2)
            idx = Fraction(Oc.index(), order_sum(O, O2).index())
            L = lcm(L, int(idx))
            for A in (O, O2):
                a = Oc.index() // A.index()
                a0 = Oc.real_suborder().index() // A.real_suborder().index()
                for p in factorize(a * a0):
                    if p > threshold and _val(a, p) != _val(a0, p):
                        bad.append((A, Oc, p))
    rep.computed = {"lcm": L, "primes": sorted(factorize(L)), "pairs": pairs,
                    "orders": len(orders)}
    rep.expected = {"valuations agree above": threshold}
    rep.verdict = FAIL if bad else PASS
    if bad:
        rep.witnesses["disagreements"] = [(A, B, p) for A, B, p in bad]
    return rep
