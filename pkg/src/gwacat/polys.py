"""Univariate polynomials R = k[b]/(b^t)[h], quotients R/(f), affine
automorphisms of R, and Bezout (comaximality) witnesses.

Polynomials are stored in canonical form: ascending coefficients with no
trailing zeros; elements of a quotient ring carry the representative of
degree < deg f.  Equality is coefficient comparison of canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import howell
from .errors import InvalidParameters, NonUnit, NotComaximal
from .scalars import Scalar, ScalarRing, geometric_sum


@dataclass(frozen=True)
class PolyRing:
    """k[b]/(b^t)[h], optionally modulo a monic polynomial ``modulus``."""

    scalars: ScalarRing
    modulus: "Poly | None" = None

    def __post_init__(self):
        f = self.modulus
        if f is not None:
            if f.ring.modulus is not None or f.ring.scalars != self.scalars:
                raise InvalidParameters("quotient modulus must live in the base ring")
            if f.degree < 1 or f.lead != self.scalars.one:
                raise InvalidParameters("quotient modulus must be monic of degree >= 1")

    @property
    def base(self) -> "PolyRing":
        """The ring with the quotient modulus stripped."""
        return self if self.modulus is None else PolyRing(self.scalars)

    def quotient(self, f: "Poly") -> "PolyRing":
        """R/(f); f may have any unit leading coefficient (normalised monic)."""
        f = self.base(f)
        if not f.lead.is_unit:
            raise InvalidParameters("leading coefficient of the modulus must be a unit")
        return PolyRing(self.scalars, f * f.lead.inverse())

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring.scalars != self.scalars:
                raise InvalidParameters("polynomial from a different coefficient ring")
            coeffs = value.coeffs
        elif isinstance(value, (int, np.integer, Scalar, list, tuple)):
            if isinstance(value, (list, tuple)):
                coeffs = tuple(self.scalars(c) for c in value)
            else:
                coeffs = (self.scalars(value),)
        else:
            raise InvalidParameters(f"cannot coerce {value!r} into {self}")
        return Poly(self, coeffs)._canonical()

    @property
    def zero(self) -> "Poly":
        return self(0)

    @property
    def one(self) -> "Poly":
        return self(1)

    @property
    def h(self) -> "Poly":
        return self([0, 1])

    def __repr__(self):
        q = f"/({self.modulus})" if self.modulus is not None else ""
        b = f"[b]/(b^{self.scalars.t})" if self.scalars.t > 1 else ""
        return f"(Z/{self.scalars.m}){b}[h]{q}"


@dataclass(frozen=True)
class Poly:
    """Canonical-form polynomial in h; immutable."""

    ring: PolyRing
    coeffs: tuple  # ascending degree, Scalars

    def _canonical(self) -> "Poly":
        coeffs = self.coeffs
        if self.ring.modulus is not None and len(coeffs) > self.ring.modulus.degree:
            coeffs = _reduce_mod(coeffs, self.ring.modulus)
        n = len(coeffs)
        while n > 0 and coeffs[n - 1].is_zero:
            n -= 1
        if coeffs is self.coeffs and n == len(coeffs):
            return self
        return Poly(self.ring, coeffs[:n])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Scalar:
        if not self.coeffs:
            return self.ring.scalars.zero
        return self.coeffs[-1]

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.scalars.zero

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                if other.ring.scalars != self.ring.scalars or (
                    other.ring.modulus is not None and other.ring.modulus != self.ring.modulus
                ):
                    raise InvalidParameters("mixed polynomial rings")
            return self.ring(other)
        return self.ring(other)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ring, tuple(self[i] + other[i] for i in range(n)))._canonical()

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Scalar):
            other = self.ring(other)
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return self.ring.zero
        zero = self.ring.scalars.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.ring, tuple(out))._canonical()

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InvalidParameters("negative polynomial power")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, f: "Poly"):
        """Quotient and remainder by a polynomial with unit leading coefficient."""
        f = self._coerce(f)
        if f.is_zero or not f.lead.is_unit:
            raise InvalidParameters("division requires a unit leading coefficient")
        lead_inv = f.lead.inverse()
        rem = list(self.coeffs)
        quo = [self.ring.scalars.zero] * max(0, len(rem) - f.degree)
        for i in range(len(rem) - 1, f.degree - 1, -1):
            c = rem[i] * lead_inv
            if c.is_zero:
                continue
            quo[i - f.degree] = c
            for j, fc in enumerate(f.coeffs):
                rem[i - f.degree + j] = rem[i - f.degree + j] - c * fc
        return (
            Poly(self.ring, tuple(quo))._canonical(),
            Poly(self.ring, tuple(rem[: f.degree]))._canonical(),
        )

    def __mod__(self, f):
        return self.divmod(f)[1]

    def __floordiv__(self, f):
        return self.divmod(f)[0]

    def lift(self) -> "Poly":
        """The canonical representative viewed in the base (non-quotient) ring."""
        return Poly(self.ring.base, self.coeffs)

    def reduce_into(self, ring: PolyRing) -> "Poly":
        """Re-interpret the representative in another ring over the same scalars."""
        return ring(list(self.coeffs))

    def evaluate(self, point):
        """Horner evaluation; point may be a Scalar or anything with * and +."""
        if isinstance(point, (int, np.integer)):
            point = self.ring.scalars(point)
        if not self.coeffs:
            return point * 0 if not isinstance(point, Scalar) else self.ring.scalars.zero
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * point + c
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, np.integer, Scalar)):
            other = self.ring(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring.scalars == other.ring.scalars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            cs = str(c)
            if i == 0:
                terms.append(cs if "+" not in cs else f"({cs})")
                continue
            hs = "h" if i == 1 else f"h^{i}"
            if c == self.ring.scalars.one:
                terms.append(hs)
            elif "+" in cs:
                terms.append(f"({cs})*{hs}")
            else:
                terms.append(f"{cs}*{hs}")
        return " + ".join(terms) if terms else "0"


def _reduce_mod(coeffs: tuple, f: "Poly") -> tuple:
    # remainder of coeffs (ascending) modulo monic f, as a tuple
    rem = list(coeffs)
    for i in range(len(rem) - 1, f.degree - 1, -1):
        c = rem[i]
        if c.is_zero:
            continue
        for j, fc in enumerate(f.coeffs):
            rem[i - f.degree + j] = rem[i - f.degree + j] - c * fc
    return tuple(rem[: f.degree])


@dataclass(frozen=True)
class Automorphism:
    """The affine ring automorphism h -> a*h + c (identity on scalars)."""

    a: Scalar
    c: Scalar

    def __post_init__(self):
        if not self.a.is_unit:
            raise InvalidParameters("automorphism slope must be a unit")

    @staticmethod
    def shift(ring: ScalarRing, c) -> "Automorphism":
        return Automorphism(ring.one, ring(c))

    def coefficients(self, power: int):
        """(a_k, c_k) with phi^power(h) = a_k*h + c_k, any integer power."""
        if power >= 0:
            a, c = self.a, self.c
            k = power
        else:
            a = self.a.inverse()
            c = -(a * self.c)
            k = -power
        return a**k, c * geometric_sum(a, k)

    def of(self, p: Poly, power: int = 1) -> Poly:
        """Apply phi^power to a polynomial (substitution h -> a_k h + c_k).

        Acts on the canonical representative; for quotient rings the result
        is reduced back into the quotient, which is exact whenever the
        caller respects the precision-padding rule.
        """
        ak, ck = self.coefficients(power)
        image = p.ring([ck, ak])
        acc = p.ring.zero
        for c in reversed(p.coeffs):
            acc = acc * image + p.ring(c)
        return acc

    def inverse(self) -> "Automorphism":
        a = self.a.inverse()
        return Automorphism(a, -(a * self.c))

    def __str__(self):
        ring = PolyRing(self.a.ring)
        return f"h -> {ring([self.c, self.a])}"


@dataclass(frozen=True)
class BezoutWitness:
    """alpha*a + beta*b = 1, held together with the pair it certifies."""

    alpha: Poly
    beta: Poly
    a: Poly
    b: Poly

    def verify(self) -> bool:
        one = self.alpha.ring.one
        return self.alpha * self.a + self.beta * self.b == one


def _field_xgcd(a: list, b: list, p: int):
    # extended Euclid over F_p[h]; polys as ascending int lists
    def trim(v):
        while v and v[-1] % p == 0:
            v.pop()
        return v

    def scale(v, s):
        return [(c * s) % p for c in v]

    def sub(u, v):
        out = [(x - y) % p for x, y in zip(u, v)] + [x % p for x in u[len(v) :]] + [
            (-y) % p for y in v[len(u) :]
        ]
        return trim(out)

    def mul(u, v):
        if not u or not v:
            return []
        out = [0] * (len(u) + len(v) - 1)
        for i, x in enumerate(u):
            for j, y in enumerate(v):
                out[i + j] = (out[i + j] + x * y) % p
        return trim(out)

    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        # divide r0 by r1
        q = []
        rem = list(r0)
        inv = pow(r1[-1], -1, p)
        q = [0] * max(0, len(rem) - len(r1) + 1)
        for i in range(len(rem) - 1, len(r1) - 2, -1):
            c = (rem[i] * inv) % p
            if c:
                q[i - len(r1) + 1] = c
                for j, fc in enumerate(r1):
                    rem[i - len(r1) + 1 + j] = (rem[i - len(r1) + 1 + j] - c * fc) % p
        rem = trim(rem[: len(r1) - 1] if len(r1) > 1 else [])
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    return r0, s0, t0


def bezout_witness(a: Poly, b: Poly) -> BezoutWitness:
    """Exact witness alpha*a + beta*b = 1 over (Z/p^n)[b]/(b^t)[h].

    Runs extended Euclid over the residue field F_p[h] (coefficients reduced
    modulo the maximal ideal (p, b)), then Newton-lifts the identity through
    the nilpotent ideal until it holds exactly.  Raises NotComaximal when
    the residue-field gcd is non-constant.
    """
    ring = a.ring.base
    a, b = a.lift() if a.ring.modulus else a, b.lift() if b.ring.modulus else b
    scalars = ring.scalars
    p = scalars.prime
    if p is None:
        raise InvalidParameters("Bezout lifting needs a prime-power modulus")
    abar = [c.coeffs[0] % p for c in a.coeffs]
    bbar = [c.coeffs[0] % p for c in b.coeffs]
    g, s, t = _field_xgcd(abar, bbar, p)
    if len(g) != 1:
        raise NotComaximal(f"({a}, {b}) is not the unit ideal")
    ginv = pow(g[0], -1, p)
    alpha = ring([(c * ginv) % p for c in s])
    beta = ring([(c * ginv) % p for c in t])
    one = ring.one
    for _ in range(64):
        err = one - (alpha * a + beta * b)
        if err.is_zero:
            return BezoutWitness(alpha, beta, a, b)
        correction = one + err
        alpha = alpha * correction
        beta = beta * correction
    raise NotComaximal(f"Newton lift for ({a}, {b}) did not terminate")


def unit_inverse(x: Poly) -> Poly:
    """Inverse of x in a quotient ring R/(f), via a Howell linear solve.

    Builds the multiplication-by-x matrix on the Z/mZ basis h^j * b^s and
    solves x*y = 1.  Raises NonUnit when no inverse exists.
    """
    return solve_in_quotient(x, x.ring.one)


def solve_in_quotient(x: Poly, rhs: Poly) -> Poly:
    """Some y with x*y = rhs in the quotient ring of x; NonUnit if none."""
    ring = x.ring
    if ring.modulus is None:
        raise InvalidParameters("solve_in_quotient needs a quotient ring")
    if rhs.ring != ring:
        rhs = ring(rhs)
    d = ring.modulus.degree
    t = ring.scalars.t
    m = ring.scalars.m
    dim = d * t
    M = np.zeros((dim, dim), dtype=np.int64)
    for j in range(d):
        for s in range(t):
            basis = ring([[0] * s + [1] if k == j else 0 for k in range(j + 1)])
            col = x * basis
            M[:, j * t + s] = poly_to_vector(col, d)
    y = howell.solve(M, poly_to_vector(rhs, d), m)
    if y is None:
        raise NonUnit(f"{x} does not divide {rhs} in {ring}")
    return vector_to_poly(y, ring)


def poly_to_vector(p: Poly, d: int) -> np.ndarray:
    """Flatten a representative of degree < d to ints, layout h^j*b^s."""
    t = p.ring.scalars.t
    v = np.zeros(d * t, dtype=np.int64)
    for j, c in enumerate(p.coeffs):
        v[j * t : (j + 1) * t] = c.coeffs
    return v

def vector_to_poly(v, ring: PolyRing) -> Poly:
    t = ring.scalars.t
    coeffs = [tuple(int(c) for c in v[j * t : (j + 1) * t]) for j in range(len(v) // t)]
    return ring(coeffs)
