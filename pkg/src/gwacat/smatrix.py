"""Exact matrices over the coefficient ring S = (Z/mZ)[b]/(b^t).

A matrix is a numpy int64 array of shape (rows, cols, t) holding the
b-expansion of each entry.  Linear algebra (kernels, solves, canonical
spans) is delegated to Howell elimination over Z/mZ after expanding each
S-entry to its t x t lower-triangular Toeplitz block; S-submodules of S^d
are represented by the Z/m row span of the expanded vectors, which is
automatically closed under multiplication by b.
"""

from __future__ import annotations

import numpy as np

from . import howell
from .backend import kernel as _jit
from .errors import InvalidParameters
from .scalars import Scalar, ScalarRing


@_jit
def _smat_mul(A, B, m):
    r, n, t = A.shape
    c = B.shape[1]
    out = np.zeros((r, c, t), dtype=np.int64)
    for i in range(r):
        for j in range(c):
            for k in range(n):
                for s in range(t):
                    a = A[i, k, s]
                    if a == 0:
                        continue
                    for u in range(t - s):
                        out[i, j, s + u] = (out[i, j, s + u] + a * B[k, j, u]) % m
    return out


def smat_mul(A: np.ndarray, B: np.ndarray, m: int) -> np.ndarray:
    if A.shape[1] != B.shape[0] or A.shape[2] != B.shape[2]:
        raise InvalidParameters("matrix shape mismatch")
    return _smat_mul(np.ascontiguousarray(A), np.ascontiguousarray(B), m)


def smat_zero(rows: int, cols: int, t: int) -> np.ndarray:
    return np.zeros((rows, cols, t), dtype=np.int64)


def smat_eye(d: int, t: int) -> np.ndarray:
    out = smat_zero(d, d, t)
    out[np.arange(d), np.arange(d), 0] = 1
    return out


def smat_scalar(d: int, c: Scalar) -> np.ndarray:
    out = smat_zero(d, d, c.ring.t)
    out[np.arange(d), np.arange(d), :] = np.array(c.coeffs, dtype=np.int64)
    return out


def smat_add(A: np.ndarray, B: np.ndarray, m: int) -> np.ndarray:
    return (A + B) % m


def smat_sub(A: np.ndarray, B: np.ndarray, m: int) -> np.ndarray:
    return (A - B) % m


def smat_eq(A: np.ndarray, B: np.ndarray) -> bool:
    return A.shape == B.shape and bool(np.array_equal(A, B))


def smat_is_zero(A: np.ndarray) -> bool:
    return not A.any()


def smat_from_rows(ring: ScalarRing, rows) -> np.ndarray:
    """Build from nested lists whose entries are ints, tuples, or Scalars."""
    t = ring.t
    r = len(rows)
    c = len(rows[0]) if r else 0
    out = smat_zero(r, c, t)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j, :] = np.array(ring(v).coeffs, dtype=np.int64)
    return out


def smat_entry(A: np.ndarray, ring: ScalarRing, i: int, j: int) -> Scalar:
    return ring(tuple(int(c) for c in A[i, j]))


def expand(A: np.ndarray, m: int) -> np.ndarray:
    """Z/m block matrix: each S-entry becomes its multiplication-by block
    on the b-power basis (lower-triangular Toeplitz)."""
    r, c, t = A.shape
    out = np.zeros((r * t, c * t), dtype=np.int64)
    for s in range(t):
        for u in range(s + 1):
            out[s::t, u::t] = A[:, :, s - u]
    return out % m


def flatten_vec(v: np.ndarray) -> np.ndarray:
    """(d, t) S-vector -> (d*t,) Z/m vector matching the expand layout."""
    return v.reshape(-1)


def unflatten_vec(w: np.ndarray, t: int) -> np.ndarray:
    return np.asarray(w, dtype=np.int64).reshape(-1, t)


def poly_on_matrix(p, H: np.ndarray, m: int) -> np.ndarray:
    """Evaluate a polynomial in h at an S-matrix H (Horner)."""
    d, _, t = H.shape
    acc = smat_zero(d, d, t)
    for c in reversed(p.coeffs):
        acc = smat_mul(acc, H, m)
        acc = smat_add(acc, smat_scalar(d, c), m)
    return acc


def smat_pow(A: np.ndarray, k: int, m: int) -> np.ndarray:
    d, _, t = A.shape
    out = smat_eye(d, t)
    base = A
    while k:
        if k & 1:
            out = smat_mul(out, base, m)
        base = smat_mul(base, base, m)
        k >>= 1
    return out


def nilpotency_index(A: np.ndarray, m: int, bound: int | None = None):
    """Smallest k >= 1 with A^k = 0, or None within the bound."""
    d = A.shape[0]
    if d == 0:
        return 1
    if bound is None:
        bound = d * A.shape[2] * max(1, m.bit_length())
    power = smat_eye(d, A.shape[2])
    for k in range(1, bound + 1):
        power = smat_mul(power, A, m)
        if smat_is_zero(power):
            return k
    return None


def kernel_S(A: np.ndarray, m: int) -> np.ndarray:
    """All S-solutions of A*x = 0 as a canonical stack of S-column vectors,
    shape (num, cols, t); the Z/m row span of their flattenings is the full
    solution module."""
    t = A.shape[2]
    ker = howell.kernel(expand(A, m), m)
    return ker.reshape(-1, A.shape[1], t)


def solve_S(A: np.ndarray, B: np.ndarray, m: int):
    """Some S-matrix X with A*X = B, or None."""
    t = A.shape[2]
    E = expand(A, m)
    system = howell.LinearSystem(E, m)
    cols = []
    for j in range(B.shape[1]):
        x = system.solve(flatten_vec(B[:, j, :]))
        if x is None:
            return None
        cols.append(unflatten_vec(x, t))
    if not cols:
        return smat_zero(A.shape[1], 0, t)
    return np.stack(cols, axis=1)


def smat_inverse(A: np.ndarray, m: int):
    """Two-sided inverse over S, or None."""
    if A.shape[0] != A.shape[1]:
        return None
    d, _, t = A.shape
    inv = solve_S(A, smat_eye(d, t), m)
    if inv is None:
        return None
    if not smat_eq(smat_mul(inv, A, m), smat_eye(d, t)):
        return None
    return inv


def span_S(vectors: np.ndarray, m: int) -> np.ndarray:
    """Canonical form (Z/m Howell) of the S-span of S-column vectors.

    ``vectors`` has shape (num, d, t); multiplication by b is the shift on
    the last axis, so the b-closure is appended before elimination.  Equal
    spans yield identical arrays.
    """
    num, d, t = vectors.shape
    rows = []
    for v in vectors:
        shifted = v
        for _ in range(t):
            rows.append(flatten_vec(shifted))
            nxt = np.zeros_like(shifted)
            nxt[:, 1:] = shifted[:, :-1]
            shifted = nxt
            if not shifted.any():
                break
    if not rows:
        return np.zeros((0, d * t), dtype=np.int64)
    return howell.howell_form(np.array(rows, dtype=np.int64), m)


def span_of_columns(A: np.ndarray, m: int) -> np.ndarray:
    """Canonical S-span of the columns of an S-matrix."""
    return span_S(np.transpose(A, (1, 0, 2)), m)


def in_span(span: np.ndarray, v: np.ndarray, m: int) -> bool:
    """Is the flattened S-vector v in the Z/m row span?"""
    if span.shape[0] == 0:
        return not v.any()
    return howell.solve(span.T % m, flatten_vec(v) % m, m) is not None


def free_image_basis(E: np.ndarray, m: int, p: int) -> np.ndarray:
    """A free S-basis of the image of an idempotent S-matrix E.

    Over the local ring S a direct summand of S^d is free; columns of E
    whose reductions modulo the maximal ideal (p, b) are independent form
    a basis (Nakayama).  Returns the (d, k, t) column matrix; asserts
    freeness and span-equality with the full column set.
    """
    d, _, t = E.shape
    residue = E[:, :, 0] % p
    pivots = _fp_pivot_columns(residue, p)
    basis = E[:, pivots, :]
    assert kernel_S(basis, m).shape[0] == 0, "selected columns are not free"
    full = span_of_columns(E, m)
    chosen = span_of_columns(basis, m)
    assert np.array_equal(full, chosen), "selected columns do not span im(E)"
    return basis


def _fp_pivot_columns(A: np.ndarray, p: int) -> list:
    """Column indices of the F_p pivots of A, by Gaussian elimination."""
    M = (A % p).astype(np.int64)
    rows, cols = M.shape
    pivots = []
    r = 0
    for j in range(cols):
        sel = None
        for i in range(r, rows):
            if M[i, j] % p:
                sel = i
                break
        if sel is None:
            continue
        M[[r, sel]] = M[[sel, r]]
        inv = pow(int(M[r, j]), -1, p)
        M[r] = (M[r] * inv) % p
        for i in range(rows):
            if i != r and M[i, j]:
                M[i] = (M[i] - M[i, j] * M[r]) % p
        pivots.append(j)
        r += 1
        if r == rows:
            break
    return pivots
