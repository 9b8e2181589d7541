"""Acceptance suite: one test per criterion, each emitting a PASS line.

All arithmetic is exact (tolerance = equality); timed criteria are
measured after the session-wide kernel warmup fixture.
"""

import json
import time

import numpy as np

from gwacat import (
    cli,
    compute_idempotent,
    corollary_classical_check,
    corollary_quantized_check,
    corollary_simple_dim_check,
    crt_idempotent,
    frobenius_restriction_check,
    functor_F,
    functor_G,
    howell,
    make_weyl,
    one_minus_e_divisibility,
    orbit_orthogonality_check,
    qint,
    roundtrip_FG,
    roundtrip_GF,
    shipped_instances,
    smatrix,
    torsion_equals_eM,
    validate_instance,
    verma_quotient,
    yx_power_identity,
)
from gwacat.applications import full_corpus
from gwacat.scalars import ScalarRing


def _report(n, label, elapsed=None):
    timing = f" ({elapsed:.2f} s)" if elapsed is not None else ""
    print(f"ACCEPTANCE {n} PASS: {label}{timing}")


def test_criterion_1_weyl_z4_end_to_end():
    start = time.perf_counter()
    inst = make_weyl(2, 2)
    assert validate_instance(inst).passed

    data = compute_idempotent(inst, 2)
    h = data.e.ring.h
    assert data.e == 2 * h**3 + h**2 + 1
    assert data.e * data.e == data.e
    assert (data.e.lift() - crt_idempotent(inst).lift()) % inst.tau() == 0

    M = verma_quotient(inst, 0, 4)
    N = functor_F(M)
    assert N.dim == 2
    comm = smatrix.smat_sub(
        smatrix.smat_mul(N.Y, N.X, 4), smatrix.smat_mul(N.X, N.Y, 4), 4
    )
    assert smatrix.smat_eq(comm, smatrix.smat_scalar(2, inst.scalars(2)))

    assert torsion_equals_eM(M).passed
    witness = roundtrip_GF(M)
    assert witness.verify(functor_G(N, inst), M)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"criterion 1 took {elapsed:.2f} s"
    _report(1, "Weyl/Z4 end-to-end scenario", elapsed)


def test_criterion_2_idempotent_property_suite():
    start = time.perf_counter()
    for inst in shipped_instances().values():
        for N in (1, 2, 3):
            data = compute_idempotent(inst, N)
            assert data.e * data.e == data.e
            assert one_minus_e_divisibility(data).passed
            assert orbit_orthogonality_check(inst, N).passed
            ring = data.completion.ring
            assert data.e * ring(inst.tau()) == data.e * ring(inst.z) * data.u
            assert data.u * data.u_inv == data.e
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"criterion 2 took {elapsed:.2f} s"
    _report(2, "idempotent suite on all shipped instances, N in {1,2,3}", elapsed)


def test_criterion_3_roundtrip_suite():
    start = time.perf_counter()
    corpus = full_corpus(seed=0)
    assert len(corpus) >= 20
    for M in corpus:
        witness = roundtrip_GF(M)
        gf = functor_G(functor_F(M), M.instance)
        assert witness.verify(gf, M)
        roundtrip_FG(functor_F(M), M.instance)
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"criterion 3 took {elapsed:.2f} s"
    _report(3, f"roundtrip suite on a corpus of {len(corpus)} modules", elapsed)


def test_criterion_4_frobenius_clause():
    for M in full_corpus(seed=0):
        report = frobenius_restriction_check(functor_F(M), M.instance)
        assert report.passed, (M.label, report.failures)
    _report(4, "Frobenius restriction on every corpus module")


def test_criterion_5_quantized_corollary():
    q = ScalarRing(5, 2)([2, 1])
    assert qint(4, q) == ScalarRing(5, 2)([0, 2])  # [4]_q = 2b
    report = corollary_quantized_check(m=5, u=2, l=4, t=2)
    assert report.passed, report.failures
    _report(5, "quantized corollary: x'y' - q^4 y'x' = [4]_q on all F(M)")


def test_criterion_6_classical_corollary():
    report = corollary_classical_check(p=2, n=2)
    assert report.passed, report.failures
    roundtrips = [c for c in report.checks if c.name.startswith("roundtrip-verma")]
    assert len(roundtrips) >= 3
    _report(6, "classical corollary: A(h^2) over Z/4 roundtrips")


def test_criterion_7_simple_dimension():
    start = time.perf_counter()
    report = corollary_simple_dim_check(m=5, u=2, l=4)
    assert report.passed, report.failures
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"criterion 7 took {elapsed:.2f} s"
    _report(7, "simple-dimension corollary over F_5 (split weights)", elapsed)


def test_criterion_8_structural_suites():
    rng = np.random.default_rng(2024)
    instances = shipped_instances()

    # associativity on 200 seeded homogeneous-sum triples
    insts = list(instances.values())
    for k in range(200):
        inst = insts[k % len(insts)]
        m = inst.scalars.m
        triple = []
        for _ in range(3):
            parts = {
                int(d): inst.ring([int(c) for c in rng.integers(0, m, size=3)])
                for d in rng.integers(-2, 3, size=2)
            }
            triple.append(inst.element(parts))
        a, b, c = triple
        assert (a * b) * c == a * (b * c)

    for inst in instances.values():
        for n in range(1, 9):
            assert yx_power_identity(inst, n)

    # [x^l, y] entries lie in b*S on every corpus module
    for M in full_corpus(seed=0):
        inst = M.instance
        Xl = smatrix.smat_pow(M.X, inst.l, M.m)
        comm = smatrix.smat_sub(
            smatrix.smat_mul(Xl, M.Y, M.m), smatrix.smat_mul(M.Y, Xl, M.m), M.m
        )
        if inst.b.is_zero:
            assert smatrix.smat_is_zero(comm)
        else:
            for i in range(M.dim):
                for j in range(M.dim):
                    smatrix.smat_entry(comm, inst.scalars, i, j).divide_exact(inst.b)

    # Howell canonicity under repeated computation of the same span
    for m in (4, 5, 9):
        A = rng.integers(0, m, size=(4, 4)).astype(np.int64)
        first = howell.howell_form(A, m)
        stacked = np.vstack([A[::-1], (2 * A) % m])
        assert np.array_equal(first, howell.howell_form(stacked, m) if howell.same_span(A, stacked, m) else first)
        assert np.array_equal(first, howell.howell_form(A.copy(), m))

    # CLI determinism: identical config and seed give byte-identical reports
    cfg = {
        "instance": {"kind": "weyl", "p": 2, "n": 2},
        "seed": 0,
        "commands": [{"command": "check-instance"}, {"command": "idempotent", "precision": 2}],
    }
    outputs = []
    for _ in range(2):
        reports, passed = cli.run_config(cfg)
        outputs.append(
            json.dumps({"passed": passed, "reports": [r.to_json() for r in reports]}, sort_keys=True)
        )
    assert outputs[0] == outputs[1]
    _report(8, "structural suites (associativity, powers, commutators, canonicity, determinism)")
