"""Theorem-level checks on concrete orders and reproduction of the tables."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Optional

from ..cmtypes import (CMTypeCyclic, is_s_full, omin, omin_stabilize, omin_zeta5,
                       ray_class_generators, s_member)
from ..field import BIQUADRATIC, CYCLIC, CMFieldQuartic
from ..ideals import FracIdeal, ideal_mul
from ..linalg import group_structure
from ..orders import (Order, conductor, factorize, maximal_order, order_intersect,
                      order_sum, orders_containing, rel_disc_norm, roots_in_field,
                      roots_of_unity_in_field)
from ..unitquot import psi
from .report import FAIL, PASS, SKIP, VerificationReport
from .tables import TableRow, field_of

THM_GENERAL_BOUND = 2 ** 10 * 3 ** 4
THM_MAXIMAL_CONST = 2 ** 40 * 3 ** 16


class VerificationError(ValueError):
    pass


def _is_zeta5(K: CMFieldQuartic) -> bool:
    return len(roots_of_unity_in_field(K)) == 10


def _is_zeta5_ring(O: Order) -> bool:
    return _is_zeta5(O.field) and O == maximal_order(O.field)


def _check_field(K: CMFieldQuartic):
    if K.galois_type == BIQUADRATIC:
        raise VerificationError("biquadratic fields are excluded")


# --------------------------------------------------------------------------
# The groups S_O as subgroups of ideals coprime to f


def _reflex_class_size(O_list, f: int, phi: CMTypeCyclic, cap: int) -> int:
    """Order of the image of I(f) in the product of c(O) for O in O_list."""
    K = phi.field
    OK = maximal_order(K)

    def is_id(a):
        return all(s_member(a, O, f, phi) for O in O_list)

    def inverse(a):
        # n O_K lies in every S_O, so N(a) a^-1 represents the inverse class
        return a.inverse() * a.norm()

    G = group_structure(ray_class_generators(K, f), ideal_mul, is_id, inverse=inverse,
                        identity=FracIdeal.unit(OK), cap=cap)
    return G.order


def s_contained(O: Order, O_prime: Order, f: Optional[int] = None,
                phi: Optional[CMTypeCyclic] = None, cap: int = 2000) -> bool:
    """Whether S_O is contained in S_O' (cyclic fields; exact)."""
    K = O.field
    if K.galois_type != CYCLIC:
        raise VerificationError("reflex type norms need a cyclic field")
    phi = phi if phi is not None else CMTypeCyclic(K, 1)
    if f is None:
        f = conductor(order_intersect(O, O_prime))
    if O_prime.contains_order(O):
        return True
    a = _reflex_class_size([O], f, phi, cap)
    b = _reflex_class_size([O, O_prime], f, phi, cap)
    return a == b


def _s_condition(O: Order, O_prime: Order, f: int, phi) -> tuple[Optional[bool], str]:
    """(holds, how) for S_O inside S_O'; holds is None when undecidable here."""
    K = O.field
    if O_prime.contains_order(O):
        return True, "inclusion of orders"
    if K.galois_type == CYCLIC:
        return s_contained(O, O_prime, f, phi), "reflex norm comparison"
    if O.contains_order(O_prime):
        # trivial kernel of c(O') -> c(O) forces S_O inside S_O'
        if psi(O, O_prime, f).kernel_size == 1:
            return True, "trivial kernel of the relative norm map"
    return None, "undecided"


def _divides(a: Fraction, n: int) -> bool:
    return a.denominator == 1 and n % a.numerator == 0


def verify_thm_general(O: Order, O_prime: Order, f: Optional[int] = None,
                       phi: Optional[CMTypeCyclic] = None) -> VerificationReport:
    """If S_O lies in S_O', then [O:O°]/[O_0:O°_0] divides 2^10 3^4."""
    K = O.field
    _check_field(K)
    if _is_zeta5_ring(O):
        raise VerificationError("O is Z[zeta_5]")
    Oc = order_intersect(O, O_prime)
    if f is None:
        f = conductor(Oc)
    holds, how = _s_condition(O, O_prime, f, phi)
    q = Fraction(Oc.index(), O.index()) / Fraction(Oc.real_suborder().index(),
                                                  O.real_suborder().index())
    rep = VerificationReport("relative index quotient",
                             {"O": O, "O_prime": O_prime, "f": f},
                             {"q": q, "s_condition": holds, "s_oracle": how})
    rep.expected = {"q divides": THM_GENERAL_BOUND}
    if not Oc.index() == O.index() and K.galois_type != BIQUADRATIC:
        rep.computed["kernel_exponent"] = psi(O, Oc, f).kernel_exponent
    if holds is None:
        rep.verdict = SKIP
    elif holds:
        rep.verdict = PASS if _divides(q, THM_GENERAL_BOUND) else FAIL
        if rep.verdict == FAIL:
            rep.witnesses["q"] = q
    else:
        rep.verdict = PASS  # hypothesis fails: nothing to check
    return rep


def verify_thm_maximal(K: CMFieldQuartic, O_prime: Order,
                       phi: Optional[CMTypeCyclic] = None) -> VerificationReport:
    """If S_{O_K} lies in S_O', then [O_K:O']^2 divides 2^40 3^16 N(disc(K/K0))."""
    _check_field(K)
    if _is_zeta5(K):
        raise VerificationError("field is Q(zeta_5)")
    OK = maximal_order(K)
    holds, how = _s_condition(OK, O_prime, conductor(O_prime), phi)
    idx = O_prime.index()
    target = THM_MAXIMAL_CONST * rel_disc_norm(K)
    rep = VerificationReport("squared index bound", {"field": K.info(), "O_prime": O_prime},
                             {"index": idx, "s_condition": holds, "s_oracle": how,
                              "rel_disc_norm": rel_disc_norm(K)},
                             {"index^2 divides": target})
    if holds is None:
        rep.verdict = SKIP
    elif holds:
        rep.verdict = PASS if target % (idx * idx) == 0 else FAIL
    return rep


def verify_lemma_relindex(K: CMFieldQuartic, O_circ: Order) -> VerificationReport:
    """[O_K0:O°_0]^(2n) divides N(disc(K/K0)) [O_K:O°]^2 with n = [K:K0] = 2."""
    if not O_circ.is_cc_stable():
        raise VerificationError("order is not stable under complex conjugation")
    n = 2
    real_idx = O_circ.real_suborder().index()
    idx = O_circ.index()
    rdn = rel_disc_norm(K)
    lhs = real_idx ** (2 * n)
    rhs = rdn * idx * idx
    rep = VerificationReport("real index divisibility", {"field": K.info(), "order": O_circ},
                             {"real_index": real_idx, "index": idx, "rel_disc_norm": rdn,
                              "lhs": lhs, "rhs": rhs})
    rep.verdict = PASS if rhs % lhs == 0 else FAIL
    rep.witnesses["cofactor"] = Fraction(rhs, lhs)
    rep.witnesses["without_discriminant_divides"] = (idx * idx) % lhs == 0
    return rep


# --------------------------------------------------------------------------
# Tables


def _omin_for(K: CMFieldQuartic, f: int, phi) -> Order:
    if f == 1:
        return maximal_order(K)
    if _is_zeta5(K):
        return omin_zeta5(K, f, phi)[0]
    return omin(K, f, phi)


def table1_pipeline(row: TableRow, phi: Optional[CMTypeCyclic] = None) -> VerificationReport:
    """Recompute (i1, i2, i3) for a row with a defining polynomial chi."""
    rep = VerificationReport("table1 indices", {"row": list(row.key), "chi": row.chi})
    if not row.has_indices:
        rep.verdict = SKIP
        return rep
    K = field_of(row)
    roots = roots_in_field(K, row.chi)
    if not roots:
        raise VerificationError(f"chi has no root in the field {row}")
    r = roots[0]
    O1 = Order.from_elements(K, [r ** i for i in range(4)])
    O2 = order_sum(O1, O1.conjugate())
    i2 = O2.index()
    O3 = order_sum(O2, _omin_for(K, i2, phi))
    got = (O1.index(), i2, O3.index())
    rep.computed = {"i1": got[0], "i2": got[1], "i3": got[2], "root": r}
    rep.expected = {"i1": row.i1, "i2": row.i2, "i3": row.i3}
    rep.verdict = PASS if got == (row.i1, row.i2, row.i3) else FAIL
    rep.witnesses["O3"] = O3
    return rep


def omin_profile(K: CMFieldQuartic, phi: Optional[CMTypeCyclic] = None) -> dict[int, tuple[int, int]]:
    """p -> (k, [O_K : A_k]) for p dividing 6 N(disc(K/K0)), where A_k is the
    stable member of the chain O_min,p^k."""
    out = {}
    for p in sorted(factorize(6 * rel_disc_norm(K))):
        k, A, _ = omin_stabilize(K, p, phi)
        out[p] = (k, A.index())
    return out


# --------------------------------------------------------------------------
# Enumeration of orders with full S


def _local_minimal(K, q, phi):
    if _is_zeta5(K):
        return omin_zeta5(K, q, phi)
    return [omin(K, q, phi)]


def _stable_power(K, p, phi, max_k=8) -> int:
    prev = [maximal_order(K)]
    for k in range(1, max_k + 1):
        cur = _local_minimal(K, p ** k, phi)
        if set(O.lattice for O in cur) == set(O.lattice for O in prev):
            return k - 1
        prev = cur
    raise VerificationError(f"minimal orders at {p} did not stabilise")


def default_s_full_primes(K: CMFieldQuartic) -> list[int]:
    """Primes below 20 together with those dividing N(disc(K/K0))."""
    ps = {p for p in range(2, 20) if all(p % d for d in range(2, p))}
    return sorted(ps | set(factorize(rel_disc_norm(K))))


def enumerate_s_full_orders(K: CMFieldQuartic, conductor_bound: Optional[int] = None,
                            phi: Optional[CMTypeCyclic] = None) -> list[Order]:
    """All cc-stable orders O with S_O = S_{O_K} (full) and f O_K inside O.

    Without ``conductor_bound`` the prime powers are found by letting the
    minimal orders at each prime stabilise.
    """
    if K.galois_type != CYCLIC:
        raise VerificationError("reflex type norms need a cyclic field")
    phi = phi if phi is not None else CMTypeCyclic(K, 1)
    OK = maximal_order(K)
    if not is_s_full(OK, 1, phi):
        return []
    if conductor_bound is None:
        powers = {}
        for p in default_s_full_primes(K):
            k = _stable_power(K, p, phi)
            if k:
                powers[p] = k
    else:
        powers = factorize(conductor_bound)
    local_lists = []
    for p, v in sorted(powers.items()):
        q = p ** v
        seen = {}
        for M in _local_minimal(K, q, phi):
            for O in orders_containing(K, M, cc_stable=True):
                if O.lattice not in seen and O.conductor_contains(q) and is_s_full(O, q, phi):
                    seen[O.lattice] = O
        local_lists.append(list(seen.values()))
    out = {OK.lattice: OK}
    for combo in product(*local_lists):
        O = OK
        for A in combo:
            O = order_intersect(O, A)
        if O.lattice in out:
            continue
        if is_s_full(O, conductor(O), phi):
            out[O.lattice] = O
    return sorted(out.values(), key=lambda O: (O.index(), O.lattice.cols))
