import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwacat import NonUnit, Scalar, ScalarRing, geometric_sum

Z4 = ScalarRing(4)
F5B = ScalarRing(5, 2)


def scalars(ring):
    return st.builds(lambda cs: ring(cs), st.lists(st.integers(0, 20), min_size=1, max_size=ring.t))


@settings(max_examples=100, deadline=None)
@given(scalars(F5B), scalars(F5B), scalars(F5B))
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=50, deadline=None)
@given(scalars(Z4), scalars(Z4))
def test_z4_commutative(a, b):
    assert a * b == b * a
    assert a + b == b + a


def test_inverse_and_nonunit():
    assert Z4(3).inverse() == 3
    with pytest.raises(NonUnit):
        Z4(2).inverse()
    q = F5B([2, 1])  # 2 + b
    assert q * q.inverse() == F5B.one
    assert q**4 == F5B([1, 2])  # (2+b)^4 = 1 + 2b mod (5, b^2)
    assert q**-1 == q.inverse()


def test_nilpotency():
    assert Z4(2).nilpotency_index() == 2
    assert Z4(0).nilpotency_index() == 1
    assert Z4(3).nilpotency_index() is None
    assert F5B.b.nilpotency_index() == 2
    assert F5B([0, 3]).is_nilpotent


def test_divide_exact():
    assert Z4(2).divide_exact(Z4(2)) * Z4(2) == Z4(2)
    with pytest.raises(NonUnit):
        Z4(1).divide_exact(Z4(2))
    v = F5B([0, 3])
    q = v.divide_exact(F5B.b)
    assert q * F5B.b == v


def test_geometric_sum():
    q = F5B([2, 1])
    assert geometric_sum(q, 0) == F5B.zero
    assert geometric_sum(q, 1) == F5B.one
    assert geometric_sum(q, 4) == F5B([0, 2])  # [4]_q = 2b
    assert geometric_sum(F5B.one, 7) == F5B(7)


def test_is_field_and_prime():
    assert ScalarRing(5).is_field
    assert not ScalarRing(4).is_field
    assert not F5B.is_field
    assert ScalarRing(9).prime == 3
    assert ScalarRing(6).prime is None
