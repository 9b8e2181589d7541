import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwacat import (
    Automorphism,
    NonUnit,
    NotComaximal,
    PolyRing,
    ScalarRing,
    bezout_witness,
    unit_inverse,
)

Z4 = ScalarRing(4)
R4 = PolyRing(Z4)
F5B = ScalarRing(5, 2)
R5B = PolyRing(F5B)


def polys(ring, max_deg=3):
    return st.builds(
        lambda cs: ring(cs),
        st.lists(st.integers(0, ring.scalars.m - 1), min_size=1, max_size=max_deg + 1),
    )


@settings(max_examples=100, deadline=None)
@given(polys(R4), polys(R4), polys(R4))
def test_poly_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


def test_divmod():
    h = R4.h
    f = h**2 + 1
    p = h**5 + 2 * h**2 + 3
    q, r = p.divmod(f)
    assert q * f + r == p
    assert r.degree < f.degree


def test_quotient_reduction():
    h = R4.h
    Q = R4.quotient(h**2 + h)
    assert Q(h) * Q(h) == Q(-h)  # h^2 = -h mod h^2+h
    assert Q(h + 3) * Q(h) == Q(2 * h)


def test_rendering():
    h = R4.h
    assert str(2 * h**3 + h**2 + 1) == "2*h^3 + h^2 + 1"
    assert str(R4.zero) == "0"
    b = PolyRing(F5B)
    assert "b" in str(b([F5B.b]))


def test_automorphism_examples():
    phi = Automorphism.shift(Z4, 1)
    h = R4.h
    assert phi.of(h, 3) == h + 3
    assert phi.of(h**2, -1) == h**2 - 2 * h + 1
    # quantized with u=2, v=0 over F_5: phi^{-1}(h) = 2h, so phi^{-2}(h) = 4h
    F5 = ScalarRing(5)
    R5 = PolyRing(F5)
    psi = Automorphism(F5(2), F5(0)).inverse()  # psi^{-1}(h) = 2h
    assert psi.of(R5.h, -2) == 4 * R5.h


@settings(max_examples=60, deadline=None)
@given(polys(R4), polys(R4), st.integers(-3, 3))
def test_automorphism_is_ring_map(p, q, k):
    phi = Automorphism.shift(Z4, 1)
    assert phi.of(p * q, k) == phi.of(p, k) * phi.of(q, k)
    assert phi.of(p + q, k) == phi.of(p, k) + phi.of(q, k)


@settings(max_examples=40, deadline=None)
@given(polys(R4), st.integers(-2, 2), st.integers(-2, 2))
def test_automorphism_composition(p, j, k):
    phi = Automorphism.shift(Z4, 1)
    assert phi.of(phi.of(p, j), k) == phi.of(p, j + k)


def test_unit_inverse_examples():
    h = R4.h
    Q = R4.quotient(h**2)
    assert unit_inverse(Q(1)) == Q(1)
    assert unit_inverse(Q(3)) == Q(3)
    with pytest.raises(NonUnit):
        unit_inverse(Q(h))


def test_unit_inverse_with_nilpotents():
    h = R5B.h
    Q = R5B.quotient(h**3 + h)
    u = Q([[2, 1], 0, 1])
    assert u * unit_inverse(u) == Q.one


def test_bezout_examples():
    h = R4.h
    w = bezout_witness(h, h + 1)
    assert w.verify()
    assert w.alpha * h + w.beta * (h + 1) == R4.one
    with pytest.raises(NotComaximal):
        bezout_witness(h, h)
    with pytest.raises(NotComaximal):
        bezout_witness(h, 3 * h + 2)  # both reduce to h mod 2


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 4))
def test_bezout_random_comaximal(i, c):
    # (h + c, h + c + i) is comaximal over F_5[b]/(b^2) since i is a unit
    h = R5B.h
    w = bezout_witness(h + c, h + c + i)
    assert w.verify()
