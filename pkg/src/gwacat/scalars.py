"""Coefficient scalars: the finite ring k[b]/(b^t) with k = Z/mZ.

A scalar is a truncated polynomial c_0 + c_1*b + ... + c_{t-1}*b^{t-1} in
the central nilpotent ``b``; t = 1 gives plain Z/mZ.  All arithmetic is
exact.  Scalars are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd

import numpy as np

from . import howell
from .errors import InvalidParameters, NonUnit


def _prime_power(m: int):
    # smallest prime factor p and exponent n with m == p**n, else (None, None)
    if m < 2:
        return None, None
    p = 2
    while p * p <= m:
        if m % p == 0:
            break
        p += 1
    else:
        return m, 1
    n, q = 0, m
    while q % p == 0:
        q //= p
        n += 1
    return (p, n) if q == 1 else (None, None)


@dataclass(frozen=True)
class ScalarRing:
    """The ring (Z/mZ)[b]/(b^t)."""

    m: int
    t: int = 1

    def __post_init__(self):
        if self.m < 2 or self.t < 1:
            raise InvalidParameters(f"bad scalar ring parameters m={self.m}, t={self.t}")

    @property
    def prime(self) -> int | None:
        """p when m = p^n is a prime power, else None."""
        return _prime_power(self.m)[0]

    @property
    def is_field(self) -> bool:
        p, n = _prime_power(self.m)
        return self.t == 1 and p is not None and n == 1

    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.ring != self:
                raise InvalidParameters("scalar from a different ring")
            return value
        if isinstance(value, (int, np.integer)):
            coeffs = (int(value) % self.m,) + (0,) * (self.t - 1)
        else:
            coeffs = tuple(int(c) % self.m for c in value)
            if len(coeffs) > self.t:
                raise InvalidParameters("too many b-coefficients")
            coeffs += (0,) * (self.t - len(coeffs))
        return Scalar(self, coeffs)

    @property
    def zero(self) -> "Scalar":
        return self(0)

    @property
    def one(self) -> "Scalar":
        return self(1)

    @property
    def b(self) -> "Scalar":
        """The nilpotent generator b (zero when t = 1)."""
        if self.t == 1:
            return self.zero
        return self([0, 1])

    def elements(self):
        """Iterate over all m^t elements (small rings only)."""
        import itertools

        for coeffs in itertools.product(range(self.m), repeat=self.t):
            yield Scalar(self, coeffs)


@dataclass(frozen=True)
class Scalar:
    """Element of a :class:`ScalarRing`; immutable value semantics."""

    ring: ScalarRing
    coeffs: tuple

    def _check(self, other):
        if not isinstance(other, Scalar):
            other = self.ring(other)
        elif other.ring != self.ring:
            raise InvalidParameters("mixed scalar rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        m = self.ring.m
        return Scalar(self.ring, tuple((a + b) % m for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        m = self.ring.m
        return Scalar(self.ring, tuple((-a) % m for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        m, t = self.ring.m, self.ring.t
        out = [0] * t
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(t - i):
                out[i + j] = (out[i + j] + a * other.coeffs[j]) % m
        return Scalar(self.ring, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_unit(self) -> bool:
        return gcd(self.coeffs[0], self.ring.m) == 1

    @property
    def is_nilpotent(self) -> bool:
        k = self.nilpotency_index()
        return k is not None

    def nilpotency_index(self) -> int | None:
        """Smallest k >= 1 with self^k = 0, or None (zero has index 1)."""
        bound = self.ring.t * self.ring.m.bit_length() + 1
        power = self.ring.one
        for k in range(1, bound + 1):
            power = power * self
            if power.is_zero:
                return k
        return None

    def inverse(self) -> "Scalar":
        """Multiplicative inverse; raises NonUnit when absent."""
        if not self.is_unit:
            raise NonUnit(f"{self} is not a unit")
        m, t = self.ring.m, self.ring.t
        c0_inv = pow(self.coeffs[0], -1, m)
        inv = self.ring(c0_inv)
        # Newton refinement handles the nilpotent tail
        for _ in range(max(1, t.bit_length())):
            inv = inv * (self.ring(2) - self * inv)
        assert (self * inv) == self.ring.one
        return inv

    def divide_exact(self, d: "Scalar") -> "Scalar":
        """Some q with q * d = self; raises NonUnit when no q exists."""
        d = self._check(d)
        t, m = self.ring.t, self.ring.m
        # multiplication-by-d matrix on the b-power basis
        M = np.zeros((t, t), dtype=np.int64)
        for i in range(t):
            for j in range(i + 1):
                M[i, j] = d.coeffs[i - j]
        x = howell.solve(M, np.array(self.coeffs, dtype=np.int64), m)
        if x is None:
            raise NonUnit(f"{self} is not divisible by {d}")
        return Scalar(self.ring, tuple(int(c) for c in x))

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = self.ring(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("b" if c == 1 else f"{c}*b")
            else:
                terms.append(f"b^{i}" if c == 1 else f"{c}*b^{i}")
        return " + ".join(terms) if terms else "0"


def geometric_sum(q: Scalar, n: int) -> Scalar:
    """1 + q + ... + q^(n-1), computed term by term (division-free)."""
    if n < 0:
        raise InvalidParameters("negative length")
    return reduce(lambda acc, k: acc + q**k, range(n), q.ring.zero)
