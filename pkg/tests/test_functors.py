import numpy as np
import pytest

from gwacat import (
    direct_sum,
    frobenius_restriction_check,
    functor_F,
    functor_G,
    make_quantized,
    roundtrip_FG,
    roundtrip_GF,
    shipped_instances,
    smatrix,
    torsion_equals_eM,
    twisted_instance,
    validate_instance,
    validate_module,
    verma_quotient,
)
from gwacat.applications import full_corpus, module_corpus
from gwacat.functors import functor_F_data, functor_F_map, functor_G_map
from gwacat.modules import MatrixModule


@pytest.fixture(scope="module")
def corpus():
    return full_corpus(seed=0)


def test_twisted_instance_valid():
    for inst in shipped_instances().values():
        tw = twisted_instance(inst)
        assert tw.l == 1
        assert validate_instance(tw).passed


def test_functor_F_weyl_example(weyl22):
    M = verma_quotient(weyl22, 0, 4)
    N = functor_F(M)
    assert N.dim == 2
    assert validate_module(N).passed
    # x'(y^2 v) = 2v, y'(v) = 3 y^2 v, and [y', x'] = 2: the p-deformed
    # Weyl relation with p = 2
    assert int(N.X[0, 1, 0]) == 2 and int(N.Y[1, 0, 0]) == 3
    comm = smatrix.smat_sub(
        smatrix.smat_mul(N.Y, N.X, 4), smatrix.smat_mul(N.X, N.Y, 4), 4
    )
    assert smatrix.smat_eq(comm, smatrix.smat_scalar(2, weyl22.scalars(2)))


def test_functor_F_no_torsion(weyl22):
    H = smatrix.smat_from_rows(weyl22.scalars, [[1]])  # z(H) = 1 invertible
    Z = smatrix.smat_zero(1, 1, 1)
    M = MatrixModule(weyl22, 1, H, Z, Z)
    assert functor_F(M).dim == 0


def test_functor_F_trivial_twist():
    inst = make_quantized(1, 0, 2, 1)  # l = 1: F is (up to basis) the identity
    M = verma_quotient(inst, 0, 5)
    N = functor_F(M)
    assert N.dim == M.dim


def test_functor_G_dimension_and_validity(corpus):
    for M in corpus[:10]:
        N = functor_F(M)
        G = functor_G(N, M.instance)
        assert G.dim == M.instance.l * N.dim
        assert validate_module(G).passed


def test_functor_G_action_consistency(weyl22):
    # (yx) t^i n = z . t^i n and (xy) t^i n = phi^{-1}(z) . t^i n
    M = verma_quotient(weyl22, 0, 8)
    N = functor_F(M)
    G = functor_G(N, weyl22)
    m = G.m
    yx = smatrix.smat_mul(G.Y, G.X, m)
    assert smatrix.smat_eq(yx, G.poly_action(weyl22.z))
    xy = smatrix.smat_mul(G.X, G.Y, m)
    assert smatrix.smat_eq(xy, G.poly_action(weyl22.phi.of(weyl22.z, -1)))


def test_roundtrip_GF_explicit_permutation(weyl22):
    M = verma_quotient(weyl22, 0, 4)
    w = roundtrip_GF(M)
    # Theta maps (t^0 v, t^0 y^2 v, t^1 v, t^1 y^2 v) to (v, y^2 v, yv, y^3 v)
    expect = np.zeros((4, 4), dtype=np.int64)
    for col, row in enumerate([0, 2, 1, 3]):
        expect[row, col] = 1
    assert np.array_equal(w.T[..., 0], expect)


def test_roundtrips_on_corpus(corpus):
    for M in corpus:
        w = roundtrip_GF(M)
        gf = functor_G(functor_F(M), M.instance)
        assert w.verify(gf, M)
        N = functor_F(M)
        w2 = roundtrip_FG(N, M.instance)
        assert w2.T.shape[0] == N.dim


def test_roundtrip_zero_module(weyl22):
    Z = smatrix.smat_zero(0, 0, 1)
    M = MatrixModule(weyl22, 0, Z, Z, Z)
    assert roundtrip_GF(M).T.shape[0] == 0


def test_frobenius_on_corpus(corpus):
    for M in corpus:
        report = frobenius_restriction_check(functor_F(M), M.instance)
        assert report.passed, (M.label, report.failures)


def test_torsion_equals_eM(corpus, weyl22):
    for M in corpus[:12]:
        assert torsion_equals_eM(M).passed
    H = smatrix.smat_from_rows(weyl22.scalars, [[1]])
    Z = smatrix.smat_zero(1, 1, 1)
    assert torsion_equals_eM(MatrixModule(weyl22, 1, H, Z, Z)).passed


def test_commutator_containment(corpus):
    # [x^l, y] has all matrix entries in b*S
    for M in corpus:
        inst = M.instance
        m = M.m
        Xl = smatrix.smat_pow(M.X, inst.l, m)
        comm = smatrix.smat_sub(
            smatrix.smat_mul(Xl, M.Y, m), smatrix.smat_mul(M.Y, Xl, m), m
        )
        if inst.b.is_zero:
            assert smatrix.smat_is_zero(comm)
            continue
        # divisibility by b, entry by entry
        scalars = inst.scalars
        for i in range(M.dim):
            for j in range(M.dim):
                smatrix.smat_entry(comm, scalars, i, j).divide_exact(inst.b)


def test_functoriality_on_direct_sums(weyl22):
    A = verma_quotient(weyl22, 0, 4)
    B = verma_quotient(weyl22, 0, 8)
    S = direct_sum(A, B)
    m, t = S.m, S.t
    # the projection S -> A is a module map; F and G send it to module maps
    proj = smatrix.smat_zero(A.dim, S.dim, t)
    proj[:, : A.dim, :] = smatrix.smat_eye(A.dim, t)
    fS, fA = functor_F_data(S), functor_F_data(A)
    Ff = functor_F_map(proj, fS, fA, m)
    assert Ff is not None
    for attr in ("H", "X", "Y"):
        lhs = smatrix.smat_mul(Ff, getattr(fS.module, attr), m)
        rhs = smatrix.smat_mul(getattr(fA.module, attr), Ff, m)
        assert smatrix.smat_eq(lhs, rhs)
    Gf = functor_G_map(Ff, weyl22.l, m, t)
    gS = functor_G(fS.module, weyl22)
    gA = functor_G(fA.module, weyl22)
    for attr in ("H", "X", "Y"):
        lhs = smatrix.smat_mul(Gf, getattr(gS, attr), m)
        rhs = smatrix.smat_mul(getattr(gA, attr), Gf, m)
        assert smatrix.smat_eq(lhs, rhs)
