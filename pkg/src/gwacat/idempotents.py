"""Idempotent machinery in truncated completions R/(tau^N).

Builds the splitting idempotent e' of R/(tau) from a Bezout witness, its
Newton (Hensel) lift e in R/(tau^N), the orbit decomposition under phi, the
corner unit u with e*z*u = e*tau, and the corner isomorphism R/(z^n) -> eR/(tau^n).

Precision bookkeeping: phi(tau) = tau only modulo b, so a value that will
pass through k applications of phi is computed at precision N + k*(t-1),
t the nilpotency index of b, and reduced afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import GwaInstance
from .errors import InvalidParameters, PrecisionInsufficient
from .polys import Poly, PolyRing, bezout_witness, solve_in_quotient
from .report import Report


@dataclass(frozen=True)
class TruncatedCompletion:
    """The quotient ring R/(tau^N) with canonical representatives."""

    instance: GwaInstance
    precision: int
    ring: PolyRing  # R/(tau^N), modulus normalized monic

    @staticmethod
    def build(instance: GwaInstance, precision: int) -> "TruncatedCompletion":
        if precision < 1:
            raise InvalidParameters("precision must be >= 1")
        tau = instance.tau()
        return TruncatedCompletion(
            instance, precision, instance.ring.quotient(tau**precision)
        )

    def reduce(self, p: Poly) -> Poly:
        """Image of a (possibly higher-precision) element in this quotient."""
        return self.ring(list(p.coeffs))


def crt_idempotent(instance: GwaInstance) -> Poly:
    """The idempotent e' of R/(tau) with 1 - e' in z*R/(tau).

    e' = beta * Phi where Phi = phi(z)***phi^{l-1}(z) and
    1 = alpha*z + beta*Phi; then e' = 1 mod z and e' = 0 mod each phi^i(z).
    """
    comp = TruncatedCompletion.build(instance, 1)
    if instance.l == 1:
        return comp.ring.one
    big_phi = instance.big_phi()
    w = bezout_witness(instance.z, big_phi)
    e_prime = comp.ring(w.beta * big_phi)
    assert e_prime * e_prime == e_prime, "CRT idempotent failed to square"
    return e_prime


def hensel_lift_idempotent(e_prime: Poly, instance: GwaInstance, precision: int) -> Poly:
    """The unique idempotent of R/(tau^N) reducing to e' mod tau.

    Newton iteration e <- 3e^2 - 2e^3 is division-free and squares the
    tau-adic accuracy each step; at most ceil(log2 N) + 1 steps are needed.
    """
    comp = TruncatedCompletion.build(instance, precision)
    e = comp.reduce(e_prime.lift() if e_prime.ring.modulus is not None else e_prime)
    for _ in range(max(1, precision.bit_length()) + 1):
        if e * e == e:
            return e
        e = 3 * e * e - 2 * e * e * e
    if e * e == e:
        return e
    raise InvalidParameters("Newton iteration did not converge; e' not idempotent mod tau")


@dataclass(frozen=True)
class IdempotentData:
    """Everything the corner constructions need, at a fixed precision N.

    The orbit elements phi^i(e) are computed from a lift at padded
    precision N + l*(t-1) and reduced, so the orthogonality identities hold
    exactly at N.
    """

    instance: GwaInstance
    precision: int
    completion: TruncatedCompletion
    e_prime: Poly  # in R/(tau)
    e: Poly  # in R/(tau^N)
    e_padded: Poly  # in R/(tau^P), P = N + padding
    orbit: tuple  # (e, phi(e), ..., phi^{l-1}(e)) in R/(tau^N)
    u: Poly  # corner unit, in R/(tau^N)
    u_inv: Poly  # with u*u_inv = e


def compute_idempotent(instance: GwaInstance, precision: int) -> IdempotentData:
    comp = TruncatedCompletion.build(instance, precision)
    padded = precision + instance.padding
    e_prime = crt_idempotent(instance)
    e_padded = hensel_lift_idempotent(e_prime, instance, padded)
    e = comp.reduce(e_padded.lift())
    lifted = e_padded.lift()
    orbit = tuple(
        comp.reduce(instance.phi.of(lifted, i)) for i in range(instance.l)
    )
    u = e * comp.ring(instance.big_phi())
    u_inv = corner_inverse(u, e, comp)
    return IdempotentData(instance, precision, comp, e_prime, e, e_padded, orbit, u, u_inv)


def corner_inverse(u: Poly, e: Poly, comp: TruncatedCompletion) -> Poly:
    """v in the corner e*R/(tau^N) with u*v = e; the unit talk is relative
    to the corner identity e, not 1."""
    v = solve_in_quotient(u, e)
    return e * v


def corner_unit(instance: GwaInstance, precision: int):
    """(u, uInv) with e*tau = e*z*u and u*uInv = e in R/(tau^N)."""
    data = compute_idempotent(instance, precision)
    return data.u, data.u_inv


def orbit_orthogonality_check(
    instance: GwaInstance, precision: int, padding: int | None = None
) -> Report:
    """Verify sum(phi^i(e)) = 1 and phi^i(e)*phi^j(e) = 0 at precision N.

    ``padding`` overrides the instance's padding budget; an insufficient
    budget that produces residual terms raises PrecisionInsufficient rather
    than reporting a genuine failure.
    """
    if padding is None:
        padding = instance.padding
    comp = TruncatedCompletion.build(instance, precision)
    e_prime = crt_idempotent(instance)
    e_padded = hensel_lift_idempotent(e_prime, instance, precision + padding)
    lifted = e_padded.lift()
    orbit = [comp.reduce(instance.phi.of(lifted, i)) for i in range(instance.l)]

    report = Report(f"orbit orthogonality at precision {precision}")
    total = comp.ring.zero
    for part in orbit:
        total = total + part
    sum_ok = total == comp.ring.one
    ortho_ok = True
    first_bad = ""
    for i in range(instance.l):
        for j in range(i + 1, instance.l):
            if not (orbit[i] * orbit[j]).is_zero:
                ortho_ok = False
                if not first_bad:
                    first_bad = f"phi^{i}(e)*phi^{j}(e) != 0"
    if (not sum_ok or not ortho_ok) and padding < instance.padding:
        raise PrecisionInsufficient(
            f"orbit identities fail at precision {precision} with padding "
            f"{padding} < required {instance.padding}"
        )
    report.add("orbit-sum", "sum_i phi^i(e) = 1", sum_ok, f"sum = {total}")
    report.add("orbit-orthogonal", "phi^i(e)*phi^j(e) = 0 for i != j", ortho_ok, first_bad)
    return report


def one_minus_e_divisibility(data: IdempotentData) -> Report:
    """For each n <= N: produce a_n with 1 - e = a_n * z^n mod tau^n and
    re-multiply.  This is the identity behind eM = (z-torsion of M)."""
    instance = data.instance
    report = Report("1 - e divisible by z^n mod tau^n")
    lifted = data.e.lift()
    for n in range(1, data.precision + 1):
        comp = TruncatedCompletion.build(instance, n)
        one_minus_e = comp.ring.one - comp.reduce(lifted)
        zn = comp.ring(instance.z) ** n
        try:
            a_n = solve_in_quotient(zn, one_minus_e)
            ok = zn * a_n == one_minus_e
            detail = f"a_{n} = {a_n}"
        except Exception as exc:  # NonUnit: no quotient exists
            ok, detail = False, str(exc)
        report.add(f"divisibility-{n}", f"1 - e = a_{n}*z^{n} mod tau^{n}", ok, detail)
    return report


def iso_f_roundtrip(instance: GwaInstance, n: int) -> Report:
    """Check r -> e*r is an isomorphism R/(z^n) -> eR/(tau^n) with inverse
    e*r -> r mod z^n, on monomial spanning sets."""
    if not instance.z.lead.is_unit:
        raise InvalidParameters("z must have a unit leading coefficient")
    comp = TruncatedCompletion.build(instance, n)
    zn = (instance.z ** n) * (instance.z.lead.inverse() ** n)
    rz = instance.ring.quotient(zn)
    data = compute_idempotent(instance, n)
    e = data.e

    report = Report(f"corner isomorphism R/(z^{n}) = eR/(tau^{n})")
    ok = True
    first = ""
    # forward then back: r -> e*r -> representative mod z^n
    for j in range(zn.degree):
        r = rz.h ** j
        image = e * comp.reduce(r.lift())
        back = rz(image.lift())
        if back != r:
            ok, first = False, first or f"h^{j}"
    report.add("roundtrip-R-side", "(e*r) mod z^n = r on {h^j}", ok, first)

    ok = True
    first = ""
    # back then forward on a spanning set of the corner: e*h^j -> mod z^n -> e*(...)
    for j in range(comp.ring.modulus.degree):
        c = e * comp.ring.h ** j
        back = rz(c.lift())
        again = e * comp.reduce(back.lift())
        if again != c:
            ok, first = False, first or f"e*h^{j}"
    report.add("roundtrip-corner-side", "e*((e*c) mod z^n) = e*c on {e*h^j}", ok, first)
    return report
