"""Exact linear algebra over Z/mZ via the Howell normal form.

The Howell form is the canonical echelon form for row modules over Z/mZ:
two row sets span the same submodule of (Z/mZ)^n iff their Howell forms are
identical.  Unlike Gaussian elimination it stays canonical over non-field
moduli, which is what makes kernels and span comparisons over Z/4, Z/9 etc.
reliable.

Rows are kept in "slot" layout: slot k holds the (unique) row whose leading
nonzero entry sits in column k.  Inserting a row cascades it through the
slots with extended-gcd row transforms; whenever a slot's pivot changes, a
fresh annihilator row (m/pivot * row) is queued so that span elements with
extra leading zeros become visible.  Pivots are normalised to divisors of m
and entries above each pivot are reduced below it.

The element-level loops are the hot kernels of the package; they are
compiled with numba unless ``GWA_NO_NUMBA=1`` (see :mod:`gwacat.backend`).
"""

import numpy as np

from .backend import kernel as _jit


@_jit
def _xgcd(a, b):
    # returns (g, s, t) with s*a + t*b = g, g = gcd(a, b) >= 0
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@_jit
def _gcd(a, b):
    while b != 0:
        a, b = b, a % b
    return a if a >= 0 else -a


@_jit
def _inv_mod(a, m):
    # inverse of a unit a mod m; returns -1 when a is not a unit
    g, s, _ = _xgcd(a % m, m)
    if g != 1:
        return -1
    return s % m


@_jit
def _unit_for(a, m):
    # unit u with u*a = gcd(a, m) mod m
    g = _gcd(a % m, m)
    c = (a % m) // g
    d = m // g
    if d == 1:
        return 1
    u = _inv_mod(c % d, d)
    while _gcd(u, m) != 1:
        u += d
    return u % m


@_jit
def _insert_row(W, occ, dirty, v, m):
    # cascade v through the slot array, leaving the span unchanged
    n = v.shape[0]
    k = 0
    while k < n:
        if v[k] % m == 0:
            v[k] = 0
            k += 1
            continue
        if occ[k] == 0:
            for j in range(n):
                W[k, j] = v[j] % m
            occ[k] = 1
            dirty[k] = 1
            return
        a = W[k, k]
        b = v[k] % m
        if b % a == 0:
            q = b // a
            for j in range(k, n):
                v[j] = (v[j] - q * W[k, j]) % m
        else:
            g, s, t = _xgcd(a, b)
            qa = a // g
            qb = b // g
            for j in range(k, n):
                wj = W[k, j]
                W[k, j] = (s * wj + t * v[j]) % m
                v[j] = (qa * v[j] - qb * wj) % m
            dirty[k] = 1
        k += 1


@_jit
def _normalize_pivot(W, k, m):
    # scale slot k by a unit so its pivot divides m; return the new pivot
    n = W.shape[1]
    p = W[k, k]
    g = _gcd(p, m)
    if p != g:
        u = _unit_for(p, m)
        for j in range(k, n):
            W[k, j] = (u * W[k, j]) % m
    return g


@_jit
def _howell_slots(A, m):
    # core elimination; returns (W, occ) in slot layout
    r, n = A.shape
    W = np.zeros((n, n), dtype=np.int64)
    occ = np.zeros(n, dtype=np.int64)
    dirty = np.zeros(n, dtype=np.int64)
    buf = np.zeros(n, dtype=np.int64)
    for i in range(r):
        for j in range(n):
            buf[j] = A[i, j] % m
        _insert_row(W, occ, dirty, buf.copy(), m)
    changed = True
    while changed:
        changed = False
        for k in range(n):
            if dirty[k] == 0:
                continue
            dirty[k] = 0
            changed = True
            if occ[k] == 0:
                continue
            g = _normalize_pivot(W, k, m)
            if g != m:
                q = m // g
                ann = np.zeros(n, dtype=np.int64)
                nonzero = False
                for j in range(k, n):
                    ann[j] = (q * W[k, j]) % m
                    if ann[j] != 0:
                        nonzero = True
                if nonzero:
                    _insert_row(W, occ, dirty, ann, m)
    # reduce entries above each pivot below the pivot value
    for k in range(n):
        if occ[k] == 0:
            continue
        _normalize_pivot(W, k, m)
    for k in range(n):
        if occ[k] == 0:
            continue
        p = W[k, k]
        for i in range(k):
            if occ[i] == 1 and W[i, k] != 0:
                q = W[i, k] // p
                if q != 0:
                    for j in range(k, n):
                        W[i, j] = (W[i, j] - q * W[k, j]) % m
    return W, occ


def howell_slots(A, m):
    """Slot layout (W, occ) of the Howell form of the rows of ``A``."""
    A = np.ascontiguousarray(np.asarray(A, dtype=np.int64) % m)
    if A.ndim != 2:
        raise ValueError("expected a 2-d array")
    if m <= 1:
        n = A.shape[1]
        return np.zeros((n, n), dtype=np.int64), np.zeros(n, dtype=np.int64)
    return _howell_slots(A, m)


def howell_form(A, m):
    """Canonical Howell form of the row span of ``A`` over Z/mZ.

    Two generating sets span the same row module iff this returns identical
    arrays for both.
    """
    W, occ = howell_slots(A, m)
    return W[occ == 1].copy()


class LinearSystem:
    """Howell-based solver for A x = b over Z/mZ.

    Built once from ``A`` (shape d x n), then reused for solves against many
    right-hand sides and for the right kernel.
    """

    def __init__(self, A, m):
        A = np.asarray(A, dtype=np.int64) % m
        self.m = int(m)
        self.d, self.n = A.shape
        aug = np.hstack([A.T, np.eye(self.n, dtype=np.int64)])
        self.W, self.occ = howell_slots(aug, m)

    def solve(self, b):
        """One solution x of A x = b, or None if the system is inconsistent."""
        m = self.m
        v = np.asarray(b, dtype=np.int64) % m
        if v.shape != (self.d,):
            raise ValueError("right-hand side has wrong length")
        x = np.zeros(self.n, dtype=np.int64)
        for k in range(self.d):
            if v[k] == 0:
                continue
            if not self.occ[k]:
                return None
            p = self.W[k, k]
            if v[k] % p:
                return None
            q = v[k] // p
            v = (v - q * self.W[k, : self.d]) % m
            x = (x + q * self.W[k, self.d :]) % m
        if np.any(v):
            return None
        return x

    def solve_matrix(self, B):
        """Solve A X = B columnwise; None if any column is inconsistent."""
        B = np.asarray(B, dtype=np.int64) % self.m
        cols = []
        for j in range(B.shape[1]):
            x = self.solve(B[:, j])
            if x is None:
                return None
            cols.append(x)
        return np.stack(cols, axis=1)

    def kernel(self):
        """Canonical basis (Howell rows) of {x : A x = 0}."""
        rows = [
            self.W[k, self.d :]
            for k in range(self.d, self.d + self.n)
            if self.occ[k]
        ]
        if not rows:
            return np.zeros((0, self.n), dtype=np.int64)
        return howell_form(np.stack(rows), self.m)


def kernel(A, m):
    """Canonical basis of the right kernel of ``A`` over Z/mZ."""
    return LinearSystem(A, m).kernel()


def solve(A, b, m):
    """One solution of A x = b over Z/mZ, or None."""
    return LinearSystem(A, m).solve(b)


def same_span(A, B, m):
    """True iff the rows of A and B span the same submodule of (Z/mZ)^n."""
    return np.array_equal(howell_form(A, m), howell_form(B, m))
