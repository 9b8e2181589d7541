"""The generalized Weyl algebra H(R, phi, z): normal forms and multiplication.

Elements are stored as finite maps degree -> coefficient in R, with degree
d > 0 meaning coeff * y^d, d < 0 meaning coeff * x^(-d), and d = 0 the
R-part.  Multiplication contracts mixed powers through the defining
relations y*x = z, x*y = phi^{-1}(z), x*r = phi^{-1}(r)*x, y*r = phi(r)*y.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidParameters, NonUnit
from .polys import Automorphism, BezoutWitness, Poly, PolyRing, bezout_witness
from .report import Report
from .scalars import Scalar, ScalarRing
from . import howell

import numpy as np


@dataclass(frozen=True)
class GwaInstance:
    """The data (R, phi, z, b, l) with its validity witnesses.

    ``witnesses[i]`` certifies that (z, phi^i(z)) generate the unit ideal
    for 1 <= i <= l-1; ``qcert`` certifies phi^l(z) - z = b * qcert.
    """

    ring: PolyRing
    phi: Automorphism
    z: Poly
    b: Scalar
    l: int
    witnesses: dict = field(default_factory=dict, compare=False)
    qcert: Poly = None
    label: str = ""

    @property
    def scalars(self) -> ScalarRing:
        return self.ring.scalars

    @property
    def t_b(self) -> int:
        """Nilpotency index of b (1 when b = 0)."""
        if self.b.is_zero:
            return 1
        k = self.b.nilpotency_index()
        if k is None:
            raise InvalidParameters("b is not nilpotent")
        return k

    @property
    def padding(self) -> int:
        """Extra tau-precision consumed by up to l automorphism applications."""
        return self.l * (self.t_b - 1)

    def tau(self) -> Poly:
        """z * phi(z) * ... * phi^{l-1}(z)."""
        out = self.ring.one
        for i in range(self.l):
            out = out * self.phi.of(self.z, i)
        return out

    def big_phi(self) -> Poly:
        """phi(z) * ... * phi^{l-1}(z), so tau = z * big_phi."""
        out = self.ring.one
        for i in range(1, self.l):
            out = out * self.phi.of(self.z, i)
        return out

    def tau_k(self, k: int) -> Poly:
        """y^k x^k = z * phi(z) * ... * phi^{k-1}(z)."""
        out = self.ring.one
        for i in range(k):
            out = out * self.phi.of(self.z, i)
        return out

    def sigma_k(self, k: int) -> Poly:
        """x^k y^k = phi^{-1}(z) * ... * phi^{-k}(z)."""
        out = self.ring.one
        for i in range(1, k + 1):
            out = out * self.phi.of(self.z, -i)
        return out

    def element(self, parts: dict) -> "GwaElement":
        coeffs = {int(d): self.ring(c) for d, c in parts.items()}
        return GwaElement(self, {d: c for d, c in coeffs.items() if not c.is_zero})

    @property
    def x(self) -> "GwaElement":
        return self.element({-1: 1})

    @property
    def y(self) -> "GwaElement":
        return self.element({1: 1})

    @property
    def one(self) -> "GwaElement":
        return self.element({0: 1})

    def scalar_element(self, r) -> "GwaElement":
        return self.element({0: r})

    def __repr__(self):
        tag = f" [{self.label}]" if self.label else ""
        return f"H({self.ring}, {self.phi}, z={self.z}, b={self.b}, l={self.l}){tag}"


def build_instance(
    ring: PolyRing,
    phi: Automorphism,
    z: Poly,
    b: Scalar,
    l: int,
    label: str = "",
) -> GwaInstance:
    """Assemble an instance, computing its Bezout witnesses and twist
    certificate; raises NotComaximal / NonUnit when the hypotheses fail."""
    z = ring(z)
    witnesses = {}
    for i in range(1, l):
        w = bezout_witness(z, phi.of(z, i))
        witnesses[i] = w
    diff = phi.of(z, l) - z
    qcert = _divide_by_scalar(diff, b)
    return GwaInstance(ring, phi, z, b, l, witnesses, qcert, label)


def _divide_by_scalar(p: Poly, b: Scalar) -> Poly:
    # some q with b*q = p, coefficient by coefficient
    if b.is_zero:
        if not p.is_zero:
            raise NonUnit(f"{p} is not divisible by 0")
        return p.ring.zero
    return p.ring([c.divide_exact(b) for c in p.coeffs] or [0])


@dataclass(frozen=True)
class GwaElement:
    """Normal-form element; immutable.  Render as e.g. '3*y^2 + (h + 1) + 2*x'."""

    instance: GwaInstance
    parts: dict  # degree -> nonzero Poly; not mutated after construction

    def coefficient(self, d: int) -> Poly:
        return self.parts.get(d, self.instance.ring.zero)

    @property
    def degrees(self) -> list:
        return sorted(self.parts)

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def _coerce(self, other) -> "GwaElement":
        if isinstance(other, GwaElement):
            if other.instance is not self.instance and other.instance != self.instance:
                raise InvalidParameters("mixed GWA instances")
            return other
        return self.instance.element({0: other})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.parts)
        for d, c in other.parts.items():
            s = out.get(d, self.instance.ring.zero) + c
            if s.is_zero:
                out.pop(d, None)
            else:
                out[d] = s
        return GwaElement(self.instance, out)

    __radd__ = __add__

    def __neg__(self):
        return GwaElement(self.instance, {d: -c for d, c in self.parts.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        inst = self.instance
        acc: dict = {}
        for d1, r in self.parts.items():
            for d2, s in other.parts.items():
                coeff, deg = _contract(inst, r, d1, s, d2)
                if coeff.is_zero:
                    continue
                tot = acc.get(deg, inst.ring.zero) + coeff
                if tot.is_zero:
                    acc.pop(deg, None)
                else:
                    acc[deg] = tot
        return GwaElement(inst, acc)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, k: int):
        if k < 0:
            raise InvalidParameters("negative GWA power")
        result = self.instance.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, GwaElement):
            try:
                other = self._coerce(other)
            except Exception:
                return NotImplemented
        return self.instance == other.instance and self.parts == other.parts

    def __hash__(self):
        return hash((self.instance, tuple(sorted(self.parts.items()))))

    def __repr__(self):
        return f"GwaElement({self})"

    def __str__(self):
        if not self.parts:
            return "0"
        terms = []
        for d in sorted(self.parts, reverse=True):
            c = self.parts[d]
            cs = str(c)
            if d == 0:
                terms.append(f"({cs})" if "+" in cs else cs)
                continue
            gen = "y" if d > 0 else "x"
            k = abs(d)
            gs = gen if k == 1 else f"{gen}^{k}"
            if c == self.instance.ring.one:
                terms.append(gs)
            elif "+" in cs:
                terms.append(f"({cs})*{gs}")
            else:
                terms.append(f"{cs}*{gs}")
        return " + ".join(terms)


def _contract(inst: GwaInstance, r: Poly, d1: int, s: Poly, d2: int):
    """Normal form of (r * w_{d1}) * (s * w_{d2}): coefficient and degree.

    The letter w_d is y^d for d > 0, x^{-d} for d < 0.  Moving s left past
    w_{d1} twists it by phi^{d1}; the leftover power product contracts via
    y^m x^k and x^m y^k power identities.
    """
    s = inst.phi.of(s, d1)
    base = r * s
    if d1 == 0 or d2 == 0 or (d1 > 0) == (d2 > 0):
        return base, d1 + d2
    if d1 > 0:  # y^m x^k
        m, k = d1, -d2
        if m >= k:
            return base * inst.phi.of(inst.tau_k(k), m - k), d1 + d2
        return base * inst.tau_k(m), d1 + d2
    # x^m y^k
    m, k = -d1, d2
    if m >= k:
        return base * inst.phi.of(inst.sigma_k(k), -(m - k)), d1 + d2
    return base * inst.sigma_k(m), d1 + d2


def gwa_multiply(a: GwaElement, b: GwaElement) -> GwaElement:
    return a * b


def yx_power_identity(instance: GwaInstance, n: int) -> bool:
    """Check y^n x^n = z * phi(z) * ... * phi^{n-1}(z) by rewriting."""
    if n < 1:
        raise InvalidParameters("n must be >= 1")
    lhs = instance.y**n * instance.x**n
    return lhs == instance.scalar_element(instance.tau_k(n))


def validate_instance(instance: GwaInstance) -> Report:
    """Re-verify every standing hypothesis; never raises on a bad instance."""
    report = Report(f"instance validation: {instance.label or instance!r}")
    ring = instance.ring
    z, phi, b, l = instance.z, instance.phi, instance.b, instance.l

    report.add(
        "twist-positive",
        "l >= 1",
        l >= 1,
        f"l = {l}",
    )

    nil = b.is_zero or b.nilpotency_index() is not None
    report.add("b-nilpotent", "b^t = 0 for some t", nil, f"b = {b}")

    # phi composes with its inverse to the identity on a small basis
    inv = phi.inverse()
    h = ring.h
    ident = all(inv.of(phi.of(p)) == p and phi.of(inv.of(p)) == p for p in (ring.one, h, h * h))
    report.add("automorphism-invertible", "phi o phi^{-1} = id on {1, h, h^2}", ident)

    diff = phi.of(z, l) - z
    if instance.qcert is not None:
        ok = ring(instance.qcert) * ring(b) == diff
        report.add(
            "twist-congruence",
            "phi^l(z) - z = b*q",
            ok,
            f"phi^l(z) - z = {diff}, q = {instance.qcert}",
        )
    else:
        report.add("twist-congruence", "phi^l(z) - z = b*q", False, "no certificate stored")

    for i in range(1, l):
        w = instance.witnesses.get(i)
        if w is None:
            report.add(f"comaximal-{i}", f"alpha*z + beta*phi^{i}(z) = 1", False, "missing witness")
            continue
        ok = w.verify() and w.a == z and w.b == phi.of(z, i)
        report.add(
            f"comaximal-{i}",
            f"alpha*z + beta*phi^{i}(z) = 1",
            ok,
            f"alpha = {w.alpha}, beta = {w.beta}",
        )

    report.add("z-regular", "z is not a zero divisor in R", _is_regular(z), f"z = {z}")
    return report


def _is_regular(z: Poly) -> bool:
    # unit leading coefficient settles it; otherwise a nonzero annihilating
    # scalar of the coefficient tuple would exhibit c*z = 0 (small finite
    # search over the kernel of the stacked multiplication matrices)
    if z.is_zero:
        return False
    if z.lead.is_unit:
        return True
    scalars = z.ring.scalars
    t, m = scalars.t, scalars.m
    blocks = []
    for c in z.coeffs:
        M = np.zeros((t, t), dtype=np.int64)
        for i in range(t):
            for j in range(i + 1):
                M[i, j] = c.coeffs[i - j]
        blocks.append(M)
    stacked = np.vstack(blocks)
    ker = howell.kernel(stacked, m)
    return ker.shape[0] == 0
