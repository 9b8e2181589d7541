import numpy as np
import pytest

from gwacat import (
    PrecisionInsufficient,
    compute_idempotent,
    crt_idempotent,
    hensel_lift_idempotent,
    iso_f_roundtrip,
    one_minus_e_divisibility,
    orbit_orthogonality_check,
    shipped_instances,
)
from gwacat.idempotents import TruncatedCompletion


@pytest.fixture(scope="module")
def instances():
    return shipped_instances()


def test_crt_idempotent_weyl(weyl22):
    e_prime = crt_idempotent(weyl22)
    h = e_prime.ring.h
    assert e_prime == h + 1
    assert e_prime * e_prime == e_prime
    # characterizations: e' = 1 mod z, e' = 0 mod phi(z)
    lifted = e_prime.lift()
    assert (lifted - 1) % weyl22.z == 0
    assert lifted % weyl22.phi.of(weyl22.z, 1) == 0


def test_crt_idempotent_trivial_twist():
    from gwacat import make_quantized

    inst = make_quantized(1, 0, 2, 1)  # l = 1
    assert crt_idempotent(inst) == 1


def test_hensel_lift_weyl(weyl22):
    e_prime = crt_idempotent(weyl22)
    e = hensel_lift_idempotent(e_prime, weyl22, 2)
    h = e.ring.h
    assert e == 2 * h**3 + h**2 + 1
    assert e * e == e
    # e - e' = tau * (2h + 3)
    q, r = (e.lift() - e_prime.lift()).divmod(weyl22.tau())
    assert r == 0 and q == 2 * weyl22.ring.h + 3


def test_hensel_lift_degenerate(weyl22):
    one = TruncatedCompletion.build(weyl22, 1).ring.one
    for value, expect in ((one, 1), (one - one, 0)):
        lifted = hensel_lift_idempotent(value, weyl22, 3)
        assert lifted == expect


def test_newton_quadratic_convergence(weyl22):
    # after k steps from e', e^2 - e is divisible by tau^(2^k)
    N = 4
    comp = TruncatedCompletion.build(weyl22, N)
    e = comp.reduce(crt_idempotent(weyl22).lift())
    tau = weyl22.tau()
    for k in range(1, 3):
        e = 3 * e * e - 2 * e * e * e
        defect = (e * e - e).lift()
        q, r = defect.divmod(tau ** (2**k))
        assert r == 0


def test_lift_uniqueness(weyl22):
    rng = np.random.default_rng(42)
    e_prime = crt_idempotent(weyl22)
    e = hensel_lift_idempotent(e_prime, weyl22, 3)
    tau = weyl22.tau()
    for _ in range(5):
        noise = weyl22.ring([int(c) for c in rng.integers(0, 4, size=3)])
        start = TruncatedCompletion.build(weyl22, 3).ring(e_prime.lift() + tau * noise)
        again = hensel_lift_idempotent(start, weyl22, 3)
        assert again == e


def test_idempotent_suite_all_instances(instances):
    for inst in instances.values():
        for N in (1, 2, 3):
            data = compute_idempotent(inst, N)
            assert data.e * data.e == data.e
            assert data.u * data.u_inv == data.e
            ring = data.completion.ring
            assert data.e * ring(inst.tau()) == data.e * ring(inst.z) * data.u
            assert orbit_orthogonality_check(inst, N).passed
            assert one_minus_e_divisibility(data).passed


def test_orbit_padding_guard():
    # with a zero padding budget the identities must either still hold or
    # raise PrecisionInsufficient - never report a plain failure
    for inst in shipped_instances().values():
        for N in (1, 2):
            try:
                report = orbit_orthogonality_check(inst, N, padding=0)
            except PrecisionInsufficient:
                continue
            assert report.passed


def test_corner_unit_evaluations(weyl22):
    # on the h-eigenvalues {0, 2} selected by e, u evaluates to {1, 3}
    data = compute_idempotent(weyl22, 2)
    scalars = weyl22.scalars
    values = [data.u.evaluate(scalars(v)) for v in (0, 2)]
    assert values == [scalars(1), scalars(3)]
    inv_values = [data.u_inv.evaluate(scalars(v)) for v in (0, 2)]
    assert inv_values == [scalars(1), scalars(3)]


def test_iso_f_roundtrip(instances):
    for inst in instances.values():
        for n in (1, 2):
            assert iso_f_roundtrip(inst, n).passed
