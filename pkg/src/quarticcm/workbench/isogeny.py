"""(l,l)-isogenies between principally polarised ideal classes.

With xi a conj(a) equal to the trace dual, multiplication by mu maps a1 into
a2 with index l^2 and pulls the polarisation of a2 back to l times that of a1
exactly when mu a1 lies in a2 and mu conj(mu) xi2 = l xi1.  Then
mu conj(mu) = nu is fixed, T2(mu) = Tr(nu) and the search is one exact shell
enumeration.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from ..classgroups import PPAVClass, ppav_classes
from ..field import FieldElement
from ..ideals import lattice_colon
from ..linalg import Lattice, lattice_index
from ..orders import elements_of_t2, order_intersect, orders_containing


class IsogenyError(ValueError):
    pass


def required_norm(c1: PPAVClass, c2: PPAVClass, ell: int):
    """nu = l xi1 / xi2 as an element of K0, or None if it is not totally positive."""
    nu = c1.xi * ell / c2.xi
    if not nu.is_real():
        return None
    r = nu.to_real()
    return r if r.is_totally_positive() else None


def check_witness(c1: PPAVClass, c2: PPAVClass, ell: int, mu: FieldElement) -> bool:
    if mu * mu.conjugate() * c2.xi != ell * c1.xi:
        return False
    if not all(c2.a.contains(mu * x) for x in c1.a.basis):
        return False
    image = Lattice.from_vectors([(mu * x).coords for x in c1.a.basis], 4)
    return lattice_index(c2.a.lattice, image) == ell * ell


def isogeny_test(c1: PPAVClass, c2: PPAVClass, ell: int) -> Optional[FieldElement]:
    """A witness mu for an (l,l)-isogeny (l = 1: isomorphism), or None."""
    K = c1.a.field
    if c2.a.field != K:
        raise IsogenyError("classes live in different fields")
    nu = required_norm(c1, c2, ell)
    if nu is None:
        return None
    L = lattice_colon(K, c2.a.lattice, c1.a.lattice)
    d = L.denom
    target = nu.to_field().trace() * d * d
    for y in elements_of_t2(L.scale(d), K, target, exact=True):
        mu = y / d
        if mu * mu.conjugate() == nu.to_field():
            assert check_witness(c1, c2, ell, mu)
            return mu
    return None


def candidate_classes(c1: PPAVClass, c2: PPAVClass) -> list[PPAVClass]:
    """Classes over every cc-stable order between O1 cap O2 and O_K."""
    K = c1.a.field
    base = order_intersect(c1.a.order, c2.a.order)
    out = []
    for O in orders_containing(K, base, cc_stable=True):
        out.extend(ppav_classes(O))
    return out


def isogeny_chain(c1: PPAVClass, c2: PPAVClass, ell: int, max_steps: int = 2,
                  candidates: Optional[list[PPAVClass]] = None):
    """Shortest chain c1 -> ... -> c2 of (l,l)-isogenies with at most ``max_steps``
    steps, as a list of (class, mu) pairs; None if there is none among the
    candidate intermediate classes."""
    if candidates is None:
        candidates = candidate_classes(c1, c2)
    nodes = [c1] + [c for c in candidates if c is not c1]
    queue = deque([(c1, [])])
    seen = {id(c1)}
    while queue:
        cur, path = queue.popleft()
        if len(path) >= max_steps:
            continue
        mu = isogeny_test(cur, c2, ell)
        if mu is not None:
            return path + [(c2, mu)]
        if len(path) + 1 >= max_steps:
            continue
        for nxt in nodes:
            if id(nxt) in seen:
                continue
            m = isogeny_test(cur, nxt, ell)
            if m is not None:
                seen.add(id(nxt))
                queue.append((nxt, path + [(nxt, m)]))
    return None
