"""Exact integer/rational linear algebra used throughout the package.

Matrices are plain lists of rows of Python ints (or Fractions).  Lattices
are stored in canonical column Hermite normal form together with a common
denominator, so two lattices are equal iff their ``(denom, cols)`` agree.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Hashable, Iterable, Optional, Sequence

__all__ = [
    "xgcd", "hnf", "hnf_columns", "snf", "snf_with_transform", "lll_reduce",
    "short_vectors", "Lattice", "AbelianGroup", "group_structure",
    "kernel_mod_p", "rational_inverse", "mat_mul", "transpose", "det",
    "GroupTooLarge", "subgroup_quotient", "lattice_sum", "lattice_intersect",
    "lattice_index",
]


class GroupTooLarge(RuntimeError):
    pass


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def transpose(M):
    return [list(r) for r in zip(*M)]


def mat_mul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def det(M) -> Fraction:
    """Determinant by fraction-free Bareiss elimination (exact)."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    den = 1
    for row in M:
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
    A = [[int(x * den) for x in row] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return Fraction(sign * A[n - 1][n - 1], den ** n)


def rational_inverse(M):
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


# --------------------------------------------------------------------------
# Hermite normal form


def hnf_columns(cols: Iterable[Sequence[int]], m: int, transform: bool = False):
    """Column HNF of the matrix whose columns are ``cols`` (each of length m).

    Returns ``(H, U)`` where H is the list of *all* n columns (zero columns
    first, then an upper-triangular block) and U the unimodular n x n
    transform as a list of columns (None unless ``transform``).
    """
    C = [list(c) for c in cols]
    n = len(C)
    U = [[int(i == j) for i in range(n)] for j in range(n)] if transform else None
    k = n - 1
    for i in range(m - 1, -1, -1):
        if k < 0:
            break
        for j in range(k - 1, -1, -1):
            b = C[j][i]
            if b == 0:
                continue
            a = C[k][i]
            if a == 0:
                C[j], C[k] = C[k], C[j]
                if U is not None:
                    U[j], U[k] = U[k], U[j]
                continue
            g, s, t = xgcd(a, b)
            ag, bg = a // g, b // g
            ck, cj = C[k], C[j]
            C[k] = [s * x + t * y for x, y in zip(ck, cj)]
            C[j] = [ag * y - bg * x for x, y in zip(ck, cj)]
            if U is not None:
                uk, uj = U[k], U[j]
                U[k] = [s * x + t * y for x, y in zip(uk, uj)]
                U[j] = [ag * y - bg * x for x, y in zip(uk, uj)]
        piv = C[k][i]
        if piv == 0:
            continue
        if piv < 0:
            C[k] = [-x for x in C[k]]
            if U is not None:
                U[k] = [-x for x in U[k]]
            piv = -piv
        ck = C[k]
        for j in range(k + 1, n):
            q = C[j][i] // piv
            if q:
                C[j] = [x - q * y for x, y in zip(C[j], ck)]
                if U is not None:
                    U[j] = [x - q * y for x, y in zip(U[j], U[k])]
        k -= 1
    return C, U


def hnf_columns_mod(cols: Sequence[Sequence[int]], m: int, D: int) -> list[list[int]]:
    """HNF basis (m columns, upper triangular) of a full-rank lattice that
    contains D Z^m, keeping every entry below D during elimination."""
    C = [[x % D for x in c] for c in cols]
    n = len(C)
    if n < m:
        raise ValueError("need at least m columns")
    W = [None] * m
    R = D
    k = n - 1
    for i in range(m - 1, -1, -1):
        for j in range(k - 1, -1, -1):
            b = C[j][i]
            if b == 0:
                continue
            a = C[k][i]
            g, s, t = xgcd(a, b)
            ag, bg = a // g, b // g
            ck, cj = C[k], C[j]
            C[k] = [(s * x + t * y) % R for x, y in zip(ck, cj)]
            C[j] = [(ag * y - bg * x) % R for x, y in zip(ck, cj)]
        g, u, _ = xgcd(C[k][i], R)
        w = [(u * x) % R for x in C[k]]
        if w[i] == 0:
            w[i] = R
        W[i] = w
        R //= g
        # rows below i of the remaining columns are zero; drop row i from play
        k -= 1
        for c in C[:k + 1]:
            c[i] = 0
    H, _ = hnf_columns(W, m)
    return H


def hnf(M):
    """Canonical column HNF of an integer matrix M (list of rows).

    Returns ``(H, U)`` with ``H == M * U``, U unimodular, both as lists of
    rows.  H has the zero columns first followed by an upper triangular block
    with positive pivots and entries to the right of each pivot reduced into
    ``[0, pivot)``.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    cols = [[M[i][j] for i in range(m)] for j in range(n)]
    C, U = hnf_columns(cols, m, transform=True)
    H = [[C[j][i] for j in range(n)] for i in range(m)]
    Ur = [[U[j][i] for j in range(n)] for i in range(n)]
    return H, Ur


# --------------------------------------------------------------------------
# Smith normal form


def snf_with_transform(M):
    """Return (D, U, V) with U*M*V = D diagonal, d1 | d2 | ... (zeros last)."""
    m = len(M)
    n = len(M[0]) if m else 0
    D = [list(r) for r in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(a, b):
        D[a], D[b] = D[b], D[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in D:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            done = True
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    D[i] = [x - q * y for x, y in zip(D[i], D[t])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[t])]
                if D[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    for row in D:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
                if D[t][j]:
                    done = False
            if not done:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            D[t] = [x + y for x, y in zip(D[t], D[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return D, U, V


def snf(M) -> list[int]:
    """Invariant factors (length min(m, n)), divisibility chain, zeros last."""
    D, _, _ = snf_with_transform(M)
    k = min(len(M), len(M[0]) if M else 0)
    return [D[i][i] for i in range(k)]


# --------------------------------------------------------------------------
# LLL and enumeration


def _as_fraction_matrix(G):
    return [[Fraction(x) for x in row] for row in G]


def _gram_of(basis_cols, gram):
    G = _as_fraction_matrix(gram)
    return [[sum(bi[a] * G[a][b] * bj[b] for a in range(len(bi)) for b in range(len(bj)))
             for bj in basis_cols] for bi in basis_cols]


def _lll_gram(G, delta=Fraction(99, 100)):
    """LLL on a Gram matrix.  Returns (G_reduced, T) where T is a list of
    columns giving the new basis in terms of the old one.

    A floating-point pass first proposes a unimodular change of basis; the
    exact pass then certifies and finishes the reduction.
    """
    n = len(G)
    T1 = None
    if n > 1:
        try:
            _, T1 = _lll_core([[float(x) for x in row] for row in G], 0.75, max_swaps=50 * n * n)
        except (ValueError, OverflowError, ZeroDivisionError):
            T1 = None
    if T1 is None:
        return _lll_core(G, delta)
    G1 = [[sum(ti[a] * G[a][b] * tj[b] for a in range(n) for b in range(n)) for tj in T1]
          for ti in T1]
    G2, T2 = _lll_core(G1, delta)
    T = [[sum(t2[l] * T1[l][i] for l in range(n)) for i in range(n)] for t2 in T2]
    return G2, T


def _lll_core(G, delta, max_swaps=None):
    n = len(G)
    G = [row[:] for row in G]
    T = [[int(i == j) for i in range(n)] for j in range(n)]
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n

    def gso(k):
        for j in range(k):
            s = G[k][j] - sum(mu[j][i] * mu[k][i] * B[i] for i in range(j))
            mu[k][j] = s / B[j]
        B[k] = G[k][k] - sum(mu[k][i] ** 2 * B[i] for i in range(k))
        if B[k] <= 0:
            raise ValueError("gram matrix is not positive definite")

    def sub(k, j, q):
        # b_k -= q b_j
        T[k] = [x - q * y for x, y in zip(T[k], T[j])]
        gkj = G[k][j]
        gkk = G[k][k] - 2 * q * gkj + q * q * G[j][j]
        for i in range(n):
            G[k][i] = G[k][i] - q * G[j][i]
        for i in range(n):
            G[i][k] = G[k][i]
        G[k][k] = gkk

    def swap(k):
        T[k], T[k - 1] = T[k - 1], T[k]
        G[k], G[k - 1] = G[k - 1], G[k]
        for row in G:
            row[k], row[k - 1] = row[k - 1], row[k]

    def red(k, l):
        q = round(mu[k][l])
        if q:
            sub(k, l, q)
            mu[k][l] -= q
            for i in range(l):
                mu[k][i] -= q * mu[l][i]

    def swap_gso(k):
        # incremental Gram-Schmidt update after exchanging b_k and b_{k-1}
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        m = mu[k][k - 1]
        Bn = B[k] + m * m * B[k - 1]
        mu[k][k - 1] = m * B[k - 1] / Bn
        B[k] = B[k - 1] * B[k] / Bn
        B[k - 1] = Bn
        for i in range(k + 1, kmax + 1):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    gso(0)
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gso(k)
        red(k, k - 1)
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            if max_swaps is not None:
                max_swaps -= 1
                if max_swaps < 0:
                    break
            swap(k)
            swap_gso(k)
            k = max(k - 1, 1)
            continue
        for l in range(k - 2, -1, -1):
            red(k, l)
        k += 1
    return G, T


def lll_reduce(basis, gram=None, delta=Fraction(99, 100)):
    """LLL-reduce the columns of ``basis`` (list of rows) under ``gram``.

    ``gram`` defaults to the identity.  Exact rational arithmetic; delta=0.99.
    """
    m = len(basis)
    n = len(basis[0])
    cols = [[basis[i][j] for i in range(m)] for j in range(n)]
    if gram is None:
        gram = [[int(i == j) for j in range(m)] for i in range(m)]
    G = _gram_of(cols, gram)
    _, T = _lll_gram(G, delta)
    new_cols = [[sum(t[j] * cols[j][i] for j in range(n)) for i in range(m)] for t in T]
    return [[c[i] for c in new_cols] for i in range(m)]


def _ldl(G):
    n = len(G)
    q = [[Fraction(0)] * n for _ in range(n)]
    A = [[Fraction(x) for x in row] for row in G]
    for i in range(n):
        q[i][i] = A[i][i] - sum(q[k][k] * q[k][i] ** 2 for k in range(i))
        if q[i][i] <= 0:
            raise ValueError("gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[i][j] = (A[i][j] - sum(q[k][k] * q[k][i] * q[k][j] for k in range(i))) / q[i][i]
    return q


def short_vectors(gram, bound, *, reduce: bool = True, include_zero: bool = False):
    """All integer vectors x with x^T gram x <= bound (exact Fincke-Pohst).

    Returns a list of coordinate tuples, one of each +-pair is *not* removed.
    """
    n = len(gram)
    G = _as_fraction_matrix(gram)
    bound = Fraction(bound)
    if bound < 0:
        return []
    if reduce and n > 1:
        Gr, T = _lll_gram(G)
    else:
        Gr, T = G, [[int(i == j) for i in range(n)] for j in range(n)]
    q = _ldl(Gr)
    out = []
    x = [0] * n

    def rec(i, remaining):
        c = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        qi = q[i][i]
        s = remaining / qi
        r = isqrt(s.numerator // s.denominator) + 1
        lo = (c.numerator // c.denominator) - r
        hi = -((-c.numerator) // c.denominator) + r
        for v in range(lo, hi + 1):
            d = v - c
            used = qi * d * d
            if used > remaining:
                continue
            x[i] = v
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, bound)
    res = []
    for y in out:
        if not include_zero and not any(y):
            continue
        res.append(tuple(sum(T[j][i] * y[j] for j in range(n)) for i in range(n)))
    return res


# --------------------------------------------------------------------------
# Lattices


def _lcm(a, b):
    return a // gcd(a, b) * b


class Lattice:
    """A Z-lattice (1/denom) * span(cols) in Q^n, cols in canonical column HNF."""

    __slots__ = ("n", "denom", "cols", "pivots", "_hash")

    def __init__(self, n: int, denom: int, cols):
        self.n = n
        self.denom = denom
        self.cols = tuple(tuple(c) for c in cols)
        self.pivots = tuple(max(i for i in range(n) if c[i]) for c in self.cols)
        self._hash = None

    @classmethod
    def from_vectors(cls, vectors, n: Optional[int] = None) -> "Lattice":
        vectors = [tuple(v) for v in vectors]
        if n is None:
            n = len(vectors[0])
        den = 1
        for v in vectors:
            for x in v:
                if isinstance(x, Fraction) and x.denominator != 1:
                    den = _lcm(den, x.denominator)
        ints = [[int(x * den) if isinstance(x, Fraction) else x * den for x in v] for v in vectors]
        return cls.from_integer(n, den, ints)

    @classmethod
    def from_integer(cls, n: int, den: int, int_vectors) -> "Lattice":
        int_vectors = [list(v) for v in int_vectors]
        D = int(abs(det(int_vectors[:n]))) if len(int_vectors) > n else 0
        if D:
            C = hnf_columns_mod(int_vectors, n, D)
        else:
            C, _ = hnf_columns(int_vectors, n)
        C = [c for c in C if any(c)]
        g = den
        for c in C:
            for x in c:
                if x:
                    g = gcd(g, x)
                    if g == 1:
                        break
        if g > 1:
            den //= g
            C = [[x // g for x in c] for c in C]
        return cls(n, den, C)

    # -- basics
    @property
    def rank(self) -> int:
        return len(self.cols)

    def vectors(self):
        d = self.denom
        return [tuple(Fraction(x, d) for x in c) for c in self.cols]

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.denom == other.denom and self.cols == other.cols

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.denom, self.cols))
        return self._hash

    def __repr__(self):
        return f"Lattice(denom={self.denom}, cols={[list(c) for c in self.cols]})"

    def to_json(self):
        """Canonical serialisation: HNF matrix rows (basis vectors are columns)."""
        rows = [[c[i] for c in self.cols] for i in range(self.n)]
        return {"denom": self.denom, "hnf": rows}

    @classmethod
    def from_json(cls, obj) -> "Lattice":
        rows = obj["hnf"]
        cols = [[rows[i][j] for i in range(len(rows))] for j in range(len(rows[0]))]
        return cls.from_integer(len(rows), obj["denom"], cols)

    def covolume(self) -> Fraction:
        if self.rank != self.n:
            raise ValueError("covolume of a lattice that is not of full rank")
        p = 1
        for c, i in zip(self.cols, self.pivots):
            p *= c[i]
        return Fraction(p, self.denom ** self.n)

    # -- membership / coordinates
    def _scaled_int(self, v):
        d = self.denom
        out = []
        for x in v:
            y = Fraction(x) * d
            if y.denominator != 1:
                return None
            out.append(y.numerator)
        return out

    def reduce_int(self, w):
        """Reduce an integer vector (already scaled by denom) modulo the lattice."""
        w = list(w)
        for c, i in zip(reversed(self.cols), reversed(self.pivots)):
            q = w[i] // c[i]
            if q:
                w = [a - q * b for a, b in zip(w, c)]
        return w

    def contains(self, v) -> bool:
        w = self._scaled_int(v)
        if w is None:
            return False
        return not any(self.reduce_int(w))

    def __contains__(self, v):
        return self.contains(v)

    def coords(self, v):
        """Integer coordinates of v in the HNF basis (ValueError if v not in L)."""
        w = self._scaled_int(v)
        if w is None:
            raise ValueError("vector not in lattice")
        co = [0] * self.rank
        for k in range(self.rank - 1, -1, -1):
            c, i = self.cols[k], self.pivots[k]
            q, r = divmod(w[i], c[i])
            if r:
                raise ValueError("vector not in lattice")
            co[k] = q
            if q:
                w = [a - q * b for a, b in zip(w, c)]
        if any(w):
            raise ValueError("vector not in lattice")
        return co

    def is_sublattice_of(self, other: "Lattice") -> bool:
        return all(other.contains(v) for v in self.vectors())

    def __le__(self, other):
        return self.is_sublattice_of(other)

    # -- constructions
    def __add__(self, other: "Lattice") -> "Lattice":
        return lattice_sum(self, other)

    def scale(self, q) -> "Lattice":
        q = Fraction(q)
        return Lattice.from_integer(self.n, self.denom * q.denominator,
                                    [[x * q.numerator for x in c] for c in self.cols])

    def dual(self) -> "Lattice":
        """Dual lattice under the standard pairing."""
        B = [[Fraction(c[i], self.denom) for c in self.cols] for i in range(self.n)]
        Binv = rational_inverse(B)
        # columns of B^{-T} are the rows of B^{-1}
        return Lattice.from_vectors([tuple(r) for r in Binv], self.n)


def lattice_sum(L1: Lattice, L2: Lattice) -> Lattice:
    if L1.n != L2.n:
        raise ValueError("rank mismatch")
    d = _lcm(L1.denom, L2.denom)
    a, b = d // L1.denom, d // L2.denom
    vecs = [[x * a for x in c] for c in L1.cols] + [[x * b for x in c] for c in L2.cols]
    return Lattice.from_integer(L1.n, d, vecs)


def lattice_intersect(L1: Lattice, L2: Lattice) -> Lattice:
    if L1.n != L2.n:
        raise ValueError("rank mismatch")
    if L1.rank != L1.n or L2.rank != L2.n:
        raise ValueError("intersection needs full-rank lattices")
    return lattice_sum(L1.dual(), L2.dual()).dual()


def lattice_index(L1: Lattice, L2: Lattice) -> Fraction:
    """[L1 : L2] as a rational number (an integer when L2 is contained in L1)."""
    if L1.n != L2.n:
        raise ValueError("rank mismatch")
    return L2.covolume() / L1.covolume()


# --------------------------------------------------------------------------
# Linear algebra mod p


def kernel_mod_p(rows, p: int):
    """Basis of the right kernel {x : M x = 0 mod p} of the matrix ``rows``."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    A = [[x % p for x in r] for r in rows]
    pivcols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [(x * inv) % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivcols.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivcols]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivcols):
            v[pc] = (-A[i][fc]) % p
        basis.append(v)
    return basis


# --------------------------------------------------------------------------
# Finite abelian groups


class AbelianGroup:
    """Finite abelian group Z/d1 x ... x Z/dr (d1 | d2 | ..., all > 1).

    ``gens`` are witnesses in the ambient representation and ``dlog`` maps an
    ambient element to its exponent vector (None when not computable).
    """

    def __init__(self, invariants, gens, dlog=None, compose=None, identity=None):
        self.invariants = list(invariants)
        self.gens = list(gens)
        self._dlog = dlog
        self.compose = compose
        self.identity = identity

    @property
    def order(self) -> int:
        o = 1
        for d in self.invariants:
            o *= d
        return o

    @property
    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    def dlog(self, x):
        if self._dlog is None:
            raise NotImplementedError("no discrete logarithm available")
        return self._dlog(x)

    def __repr__(self):
        return f"AbelianGroup({self.invariants})"


def _relations_to_group(r, relations, gens, lookup, compose, identity):
    """Common tail: SNF of the relation lattice and dlog plumbing."""
    if r == 0:
        return AbelianGroup([], [], (lambda x: [] if lookup(x) is not None else None),
                            compose, identity)
    R = [[rel[i] for rel in relations] for i in range(r)]  # columns = relations
    D, U, V = snf_with_transform(R)
    diag = [D[i][i] if i < len(D[0]) else 0 for i in range(r)]
    Uinv = [[int(x) for x in row] for row in rational_inverse(U)]
    keep = [i for i in range(r) if diag[i] != 1]
    N = 1
    for rel_j, rel in enumerate(relations):
        N *= rel[rel_j]
    new_gens = []
    for i in keep:
        e = identity
        for j in range(r):
            e = compose(e, _power(gens[j], Uinv[j][i] % N, compose, identity))
        new_gens.append(e)
    inv = [diag[i] for i in keep]

    def dlog(x):
        v = lookup(x)
        if v is None:
            return None
        w = [sum(U[i][j] * v[j] for j in range(r)) for i in range(r)]
        return [w[i] % diag[i] for i in keep]

    return AbelianGroup(inv, new_gens, dlog, compose, identity)


def _power(g, k, compose, identity):
    result = identity
    while k:
        if k & 1:
            result = compose(result, g)
        g = compose(g, g)
        k >>= 1
    return result


def group_structure(gens, compose: Callable, is_identity: Callable, *,
                    inverse: Optional[Callable] = None, identity=None,
                    key: Optional[Callable[[object], Hashable]] = None,
                    cap: int = 10 ** 7, skip_redundant: bool = False) -> AbelianGroup:
    """Structure of the finite abelian group generated by ``gens``.

    With ``key`` the group is enumerated through a hash table; without it
    equality is decided by ``is_identity(compose(x, inverse(y)))``.
    With ``skip_redundant`` generators already in the span of earlier ones
    are dropped.  Raises GroupTooLarge when more than ``cap`` elements are
    produced.
    """
    gens = list(gens)
    if identity is None:
        if not gens:
            return AbelianGroup([], [], lambda x: [] if is_identity(x) else None, compose, None)
        raise ValueError("identity element required")
    elements = [(identity, ())]
    table = {key(identity): ()} if key else None

    def find_raw(x):
        if table is not None:
            return table.get(key(x))
        for e, v in elements:
            if is_identity(compose(x, inverse(e))):
                return v
        return None

    kept = []
    relations = []
    for g in gens:
        i = len(kept)
        v = find_raw(g)
        if v is not None and skip_redundant:
            continue
        power = g
        m = 1
        while v is None:
            m += 1
            power = compose(power, g)
            if m * len(elements) > cap:
                raise GroupTooLarge(f"group order exceeds cap {cap}")
            v = find_raw(power)
        kept.append(g)
        rel = [-c for c in v] + [0] * (i + 1 - len(v))
        rel[i] += m
        relations.append(rel)
        if m > 1:
            new = []
            gk = g
            for k in range(1, m):
                for e, vec in elements:
                    ve = tuple(vec) + (0,) * (i - len(vec)) + (k,)
                    x = compose(e, gk)
                    new.append((x, ve))
                    if table is not None:
                        table[key(x)] = ve
                gk = compose(gk, g)
            elements.extend(new)
    r = len(kept)
    relations = [rel + [0] * (r - len(rel)) for rel in relations]

    def find(x):
        v = find_raw(x)
        if v is None:
            return None
        return list(v) + [0] * (r - len(v))

    G = _relations_to_group(r, relations, kept, find, compose, identity)
    G.input_gens = kept
    G.elements_count = len(elements)
    return G


def subgroup_quotient(invariants, big_gens_dlogs, small_gens_dlogs) -> list[int]:
    """Invariant factors of H1/H2 for subgroups H2 <= H1 of Z/d1 x ... x Z/dr.

    Subgroups are given by exponent vectors of generators.
    """
    r = len(invariants)
    if r == 0:
        return []
    rel = [[d if i == j else 0 for i in range(r)] for j, d in enumerate(invariants)]
    L1 = Lattice.from_integer(r, 1, list(big_gens_dlogs) + rel)
    L2 = Lattice.from_integer(r, 1, list(small_gens_dlogs) + rel)
    B1 = [[Fraction(c[i]) for c in L1.cols] for i in range(r)]
    B1inv = rational_inverse(B1)
    C = []
    for c in L2.cols:
        coords = [sum(B1inv[i][j] * c[j] for j in range(r)) for i in range(r)]
        if any(x.denominator != 1 for x in coords):
            raise ValueError("second subgroup is not contained in the first")
        C.append([int(x) for x in coords])
    M = [[C[j][i] for j in range(len(C))] for i in range(r)]
    return [d for d in snf(M) if d != 1]
