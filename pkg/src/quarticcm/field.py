"""Quartic CM-fields K = Q[a]/(a^4 + A a^2 + B) with exact arithmetic.

Elements are stored on the power basis (1, a, a^2, a^3).  The real
quadratic subfield K0 = Q(w), w = a^2, is handled by :class:`RealElement`
on the basis (1, w).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt
from typing import Optional, Sequence

CYCLIC = "cyclic"
BIQUADRATIC = "biquadratic"
NONGALOIS = "nongalois"


class FieldError(ValueError):
    pass


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def squarefree_part(n: int) -> tuple[int, int]:
    """Return (d, g) with n = g^2 * d and d squarefree (n > 0)."""
    d, g = n, 1
    p = 2
    while p * p <= d:
        while d % (p * p) == 0:
            d //= p * p
            g *= p
        p += 1
    return d, g


def fundamental_discriminant(m: int) -> int:
    d, _ = squarefree_part(m)
    return d if d % 4 == 1 else 4 * d


def _mul_coords(a, b, A, B):
    c = [0] * 7
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    c[i + j] += x * y
    return (c[0] - B * c[4] + A * B * c[6],
            c[1] - B * c[5],
            c[2] - A * c[4] + (A * A - B) * c[6],
            c[3] - A * c[5])


def _sign_surd(a: Fraction, b: Fraction, m: int) -> int:
    """Sign of a + b*sqrt(m), m > 0 not a square."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with b^2 m
    d = a * a - b * b * m
    return sa if d > 0 else sb


class CMFieldQuartic:
    """The field Q[a]/(a^4 + A a^2 + B) with A, B > 0 and A^2 - 4B > 0."""

    def __init__(self, A: int, B: int, D: Optional[int] = None):
        A, B = int(A), int(B)
        if A <= 0 or B <= 0 or A * A - 4 * B <= 0:
            raise FieldError(f"x^4+{A}x^2+{B} does not define a CM-field in normal form")
        m = A * A - 4 * B
        if is_square(m):
            r = isqrt(m)
            raise FieldError(f"x^4+{A}x^2+{B} = (x^2+{(A - r) // 2})(x^2+{(A + r) // 2}) is reducible")
        if is_square(B):
            s = isqrt(B)
            if is_square(2 * s - A):
                raise FieldError(f"x^4+{A}x^2+{B} is reducible")
        # remaining possible factorisation: (x^2+cx+s)(x^2-cx+s) with c^2 = 2s+A, s=-sqrt(B)
        self.A, self.B, self.m = A, B, m
        self.D = fundamental_discriminant(m)
        if D is not None and D != self.D:
            raise FieldError(f"discriminant mismatch: expected {D}, field has {self.D}")
        if is_square(B):
            self.galois_type = BIQUADRATIC
        elif is_square(B * m):
            self.galois_type = CYCLIC
        else:
            self.galois_type = NONGALOIS

    # -- construction helpers
    def __repr__(self):
        return f"CMFieldQuartic(A={self.A}, B={self.B}, D={self.D}, {self.galois_type})"

    def __eq__(self, other):
        return isinstance(other, CMFieldQuartic) and (self.A, self.B) == (other.A, other.B)

    def __hash__(self):
        return hash((self.A, self.B))

    def __call__(self, coords) -> "FieldElement":
        return self.element(coords)

    def element(self, coords) -> "FieldElement":
        if isinstance(coords, FieldElement):
            return coords
        if isinstance(coords, (int, Fraction)):
            coords = (coords, 0, 0, 0)
        return FieldElement(self, tuple(Fraction(c) for c in coords))

    def parse_element(self, text: str) -> "FieldElement":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise FieldError("an element needs four rational coordinates")
        return self.element([Fraction(p) for p in parts])

    @property
    def one(self):
        return self.element((1, 0, 0, 0))

    @property
    def zero(self):
        return self.element((0, 0, 0, 0))

    @property
    def gen(self):
        return self.element((0, 1, 0, 0))

    def power_basis(self):
        return [self.element(tuple(int(i == j) for j in range(4))) for i in range(4)]

    # -- invariants
    @property
    def poly(self):
        return (1, 0, self.A, 0, self.B)

    @cached_property
    def poly_disc(self) -> int:
        return 16 * self.B * self.m ** 2

    def trace_power(self, k: int) -> int:
        """Tr_{K/Q}(a^k)."""
        if k % 2:
            return 0
        # power sums of the two roots of y^2 + A y + B, doubled
        s0, s1 = 2, -self.A
        j = k // 2
        if j == 0:
            return 4
        for _ in range(j - 1):
            s0, s1 = s1, -self.A * s1 - self.B * s0
        return 2 * s1

    @cached_property
    def trace_matrix(self):
        return [[self.trace_power(i + j) for j in range(4)] for i in range(4)]

    @cached_property
    def t2_matrix(self):
        """Gram matrix of the positive definite form Tr(x conj(x))."""
        return [[(-1) ** j * self.trace_power(i + j) for j in range(4)] for i in range(4)]

    def mul_coords(self, a, b):
        return _mul_coords(a, b, self.A, self.B)

    # -- Galois structure
    @cached_property
    def sqrt_m(self) -> "RealElement":
        """sqrt(A^2 - 4B) = 2w + A as an element of K0."""
        return RealElement(self, Fraction(self.A), Fraction(2))

    @cached_property
    def sigma_image(self) -> "FieldElement":
        """Image of a under the chosen generator of Gal(K/Q) (cyclic case)."""
        if self.galois_type != CYCLIC:
            raise FieldError("sigma is only available for cyclic fields")
        s = isqrt(self.B * self.m)
        # sqrt(B) = s / sqrt(m); t = w' / sqrt(B) with w' = -A - w
        wprime = RealElement(self, Fraction(-self.A), Fraction(-1))
        t = wprime * self.sqrt_m * Fraction(1, s)
        return self.gen * t.to_field()

    @cached_property
    def sigma_matrix(self):
        """Columns are sigma(a^k) on the power basis."""
        b = self.sigma_image
        cols = []
        p = self.one
        for _ in range(4):
            cols.append(p.coords)
            p = p * b
        return [[cols[j][i] for j in range(4)] for i in range(4)]

    def sigma(self, x: "FieldElement", k: int = 1) -> "FieldElement":
        k %= 4
        M = self.sigma_matrix
        c = x.coords
        for _ in range(k):
            c = tuple(sum(M[i][j] * c[j] for j in range(4)) for i in range(4))
        return FieldElement(self, c)

    # -- real subfield
    def real(self, p, q=0) -> "RealElement":
        return RealElement(self, Fraction(p), Fraction(q))

    @cached_property
    def fundamental_unit(self) -> "RealElement":
        return _fundamental_unit(self)

    @cached_property
    def delta(self) -> "RealElement":
        return RealElement(self, Fraction(self.A), Fraction(2))

    def info(self) -> dict:
        return {"A": self.A, "B": self.B, "D": self.D, "galois": self.galois_type}


class FieldElement:
    __slots__ = ("field", "coords")

    def __init__(self, field: CMFieldQuartic, coords: Sequence[Fraction]):
        self.field = field
        self.coords = tuple(coords)

    def _wrap(self, other):
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, RealElement):
            return other.to_field()
        return self.field.element(other)

    def __add__(self, other):
        o = self._wrap(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        o = self._wrap(other)
        return FieldElement(self.field, self.field.mul_coords(self.coords, o.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a / other for a in self.coords))
        return self * self._wrap(other).inverse()

    def __rtruediv__(self, other):
        return self._wrap(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = self.field.one
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coords == (other, 0, 0, 0)
        if isinstance(other, RealElement):
            other = other.to_field()
        return isinstance(other, FieldElement) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def serialize(self) -> str:
        return ",".join(str(c) for c in self.coords)

    # -- CM structure
    def conjugate(self) -> "FieldElement":
        a = self.coords
        return FieldElement(self.field, (a[0], -a[1], a[2], -a[3]))

    def split(self) -> tuple["RealElement", "RealElement"]:
        """(u, v) with self = u + a*v and u, v in K0."""
        a = self.coords
        return RealElement(self.field, a[0], a[2]), RealElement(self.field, a[1], a[3])

    def is_real(self) -> bool:
        return self.coords[1] == 0 and self.coords[3] == 0

    def is_imaginary(self) -> bool:
        return self.coords[0] == 0 and self.coords[2] == 0

    def rel_norm(self) -> "RealElement":
        u, v = self.split()
        return u * u - RealElement(self.field, Fraction(0), Fraction(1)) * v * v

    def norm(self) -> Fraction:
        return self.rel_norm().norm()

    def trace(self) -> Fraction:
        a = self.coords
        return 4 * a[0] - 2 * self.field.A * a[2]

    def t2(self) -> Fraction:
        return (self * self.conjugate()).trace()

    def inverse(self) -> "FieldElement":
        n = self.rel_norm()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return self.conjugate() * n.inverse().to_field()

    def to_real(self) -> "RealElement":
        if not self.is_real():
            raise FieldError("element is not in the real subfield")
        return RealElement(self.field, self.coords[0], self.coords[2])

    def charpoly(self) -> tuple[Fraction, ...]:
        """Characteristic polynomial over Q, monic, highest degree first."""
        u, v = self.split()
        T = u * 2
        N = self.rel_norm()
        return (Fraction(1), -T.trace(), T.norm() + N.trace(),
                -(T * N.conj()).trace(), N.norm())

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.charpoly())

    def sigma(self, k: int = 1) -> "FieldElement":
        return self.field.sigma(self, k)

    def denominator(self) -> int:
        d = 1
        for c in self.coords:
            d = d * c.denominator // gcd(d, c.denominator)
        return d


class RealElement:
    """Element p + q w of K0, w = a^2 a root of y^2 + A y + B."""

    __slots__ = ("field", "p", "q")

    def __init__(self, field: CMFieldQuartic, p, q):
        self.field = field
        self.p = Fraction(p)
        self.q = Fraction(q)

    @property
    def coords(self):
        return (self.p, self.q)

    def _wrap(self, other):
        if isinstance(other, RealElement):
            return other
        if isinstance(other, FieldElement):
            return other.to_real()
        return RealElement(self.field, Fraction(other), Fraction(0))

    def __add__(self, other):
        o = self._wrap(other)
        return RealElement(self.field, self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self):
        return RealElement(self.field, -self.p, -self.q)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RealElement(self.field, self.p * other, self.q * other)
        if isinstance(other, FieldElement):
            return self.to_field() * other
        o = self._wrap(other)
        A, B = self.field.A, self.field.B
        qq = self.q * o.q
        return RealElement(self.field, self.p * o.p - B * qq, self.p * o.q + self.q * o.p - A * qq)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RealElement(self.field, self.p / other, self.q / other)
        return self * self._wrap(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = RealElement(self.field, 1, 0)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        if isinstance(other, FieldElement):
            return other == self.to_field()
        return isinstance(other, RealElement) and (self.p, self.q) == (other.p, other.q)

    def __hash__(self):
        return hash((self.p, self.q))

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def __repr__(self):
        return f"({self.p} + {self.q}w)"

    def serialize(self) -> str:
        return f"{self.p},{self.q}"

    def conj(self) -> "RealElement":
        """The nontrivial automorphism of K0 (w -> -A - w)."""
        return RealElement(self.field, self.p - self.field.A * self.q, -self.q)

    def norm(self) -> Fraction:
        A, B = self.field.A, self.field.B
        return self.p * self.p - A * self.p * self.q + B * self.q * self.q

    def trace(self) -> Fraction:
        return 2 * self.p - self.field.A * self.q

    def inverse(self) -> "RealElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return RealElement(self.field, c.p / n, c.q / n)

    def to_field(self) -> FieldElement:
        return FieldElement(self.field, (self.p, Fraction(0), self.q, Fraction(0)))

    def surd(self) -> tuple[Fraction, Fraction]:
        """(a, b) with self = a + b sqrt(m) under the first real embedding."""
        return self.p - self.q * self.field.A / 2, self.q / 2

    def signs(self) -> tuple[int, int]:
        """Signs under the two real embeddings w -> (-A +- sqrt(m))/2."""
        a, b = self.surd()
        m = self.field.m
        return _sign_surd(a, b, m), _sign_surd(a, -b, m)

    def is_totally_positive(self) -> bool:
        if not self:
            raise FieldError("total positivity of zero is undefined")
        return self.signs() == (1, 1)

    def is_integral(self) -> bool:
        return self.trace().denominator == 1 and self.norm().denominator == 1


def _fundamental_unit(K: CMFieldQuartic) -> RealElement:
    """Fundamental unit of the maximal order of K0, larger than 1 in the first
    embedding, by continued fractions."""
    D = K.D
    d, g = squarefree_part(K.m)  # sqrt(d) = sqrt(m) / g
    if D % 4 == 1:
        P, Q = 1, 2
    else:
        P, Q = 0, 1
    r = isqrt(D if D % 4 == 1 else D // 4)
    rad = D if D % 4 == 1 else D // 4
    p0, p1 = 0, 1
    q0, q1 = 1, 0
    for _ in range(10 ** 6):
        if Q > 0:
            a = (P + r) // Q
        else:
            a = -((P + r) // (-Q) + 1)
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        P = a * Q - P
        Q = (rad - P * P) // Q
        if D % 4 == 1:
            x, y = 2 * p1 - q1, q1  # convergent of (1+sqrt D)/2
            if x * x - D * y * y in (4, -4):
                a_, b_ = Fraction(x, 2), Fraction(y, 2)
                break
        else:
            if p1 * p1 - rad * q1 * q1 in (1, -1):
                a_, b_ = Fraction(p1), Fraction(q1)
                break
    else:  # pragma: no cover
        raise RuntimeError("continued fraction expansion did not terminate")
    # a_ + b_ sqrt(d), sqrt(d) = (2w + A)/g
    eps = RealElement(K, a_ + b_ * K.A / g, 2 * b_ / g)
    s1, _ = eps.signs()
    if s1 < 0:
        eps = -eps
    a, b = eps.surd()
    # make it > 1 in the first embedding: compare with its inverse
    if _sign_surd(a - 1, b, K.m) < 0:
        eps = eps.inverse()
        if eps.signs()[0] < 0:
            eps = -eps
    return eps
