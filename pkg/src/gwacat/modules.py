"""Finite-dimensional modules over a GWA instance as exact matrix data.

A module is (H, X, Y): the actions of h, x, y on a free S-module S^d,
S = (Z/mZ)[b]/(b^t).  Validation checks the defining relations as exact
matrix identities; torsion and submodule computations go through Howell
canonical forms so equal submodules have equal representations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import howell, smatrix
from .algebra import GwaInstance
from .errors import InvalidParameters, TruncationNotStable, UnsupportedRing
from .report import Report
from .scalars import Scalar, ScalarRing


@dataclass(frozen=True)
class MatrixModule:
    instance: GwaInstance
    dim: int
    H: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    label: str = ""

    def __post_init__(self):
        t = self.instance.scalars.t
        for name in ("H", "X", "Y"):
            M = getattr(self, name)
            if M.shape != (self.dim, self.dim, t):
                raise InvalidParameters(f"{name} has shape {M.shape}, expected {(self.dim, self.dim, t)}")

    @property
    def m(self) -> int:
        return self.instance.scalars.m

    @property
    def t(self) -> int:
        return self.instance.scalars.t

    def poly_action(self, p) -> np.ndarray:
        """The matrix of p(h) for a polynomial p."""
        return smatrix.poly_on_matrix(self.instance.ring(p), self.H, self.m)

    def tau_nilpotency(self):
        """N_M: the nilpotency index of tau(H), or None if not nilpotent."""
        return smatrix.nilpotency_index(self.poly_action(self.instance.tau()), self.m)

    def to_json(self) -> dict:
        def mat(A):
            if self.t == 1:
                return [[int(A[i, j, 0]) for j in range(self.dim)] for i in range(self.dim)]
            return [[[int(c) for c in A[i, j]] for j in range(self.dim)] for i in range(self.dim)]

        return {
            "dim": self.dim,
            "H": mat(self.H),
            "X": mat(self.X),
            "Y": mat(self.Y),
            "ring": {"m": self.m, "t": self.t},
        }

    def __repr__(self):
        tag = f" [{self.label}]" if self.label else ""
        return f"MatrixModule(dim={self.dim}, ring=Z/{self.m}, t={self.t}){tag}"


def module_from_json(instance: GwaInstance, data: dict) -> MatrixModule:
    ring = instance.scalars
    if data["ring"] != {"m": ring.m, "t": ring.t}:
        raise InvalidParameters("module ring does not match the instance")
    d = data["dim"]

    def mat(rows):
        if d == 0:
            return smatrix.smat_zero(0, 0, ring.t)
        return smatrix.smat_from_rows(ring, rows)

    return MatrixModule(instance, d, mat(data["H"]), mat(data["X"]), mat(data["Y"]))


def validate_module(M: MatrixModule) -> Report:
    """The four defining relations plus x-nilpotency and tau-nilpotency."""
    inst = M.instance
    m = M.m
    report = Report(f"module validation: {M.label or M!r}")
    zH = M.poly_action(inst.z)
    report.add(
        "relation-yx",
        "Y*X = z(H)",
        smatrix.smat_eq(smatrix.smat_mul(M.Y, M.X, m), zH),
    )
    report.add(
        "relation-xy",
        "X*Y = (phi^{-1}z)(H)",
        smatrix.smat_eq(smatrix.smat_mul(M.X, M.Y, m), M.poly_action(inst.phi.of(inst.z, -1))),
    )
    # affine phi makes h sufficient for the coefficient-transport relations
    report.add(
        "relation-xh",
        "X*H = (phi^{-1}h)(H)*X",
        smatrix.smat_eq(
            smatrix.smat_mul(M.X, M.H, m),
            smatrix.smat_mul(M.poly_action(inst.phi.of(inst.ring.h, -1)), M.X, m),
        ),
    )
    report.add(
        "relation-yh",
        "Y*H = (phi h)(H)*Y",
        smatrix.smat_eq(
            smatrix.smat_mul(M.Y, M.H, m),
            smatrix.smat_mul(M.poly_action(inst.phi.of(inst.ring.h, 1)), M.Y, m),
        ),
    )
    x_nil = smatrix.nilpotency_index(M.X, m)
    report.add("x-nilpotent", "X^k = 0 for some k", x_nil is not None)
    n_m = M.tau_nilpotency()
    report.add(
        "tau-nilpotent",
        "tau(H)^{N_M} = 0 with N_M <= dim",
        n_m is not None,
        f"N_M = {n_m}",
    )
    return report


def verma_quotient(instance: GwaInstance, mu, D: int, label: str = "") -> MatrixModule:
    """The module with basis {v, yv, ..., y^{D-1}v}, h*v = mu*v, x*v = 0.

    The x-descent scalars are c_k = (phi^{-k}z)(mu); the construction is a
    module exactly when c_0 = 0 (so x may kill the top vector) and c_D = 0
    (so the truncation y^D v = 0 is stable).
    """
    ring = instance.scalars
    mu = ring(mu)
    if D < 1:
        raise InvalidParameters("D must be >= 1")
    c = [instance.phi.of(instance.z, -k).evaluate(mu) for k in range(D + 1)]
    if not c[0].is_zero:
        raise TruncationNotStable(f"z(mu) = {c[0]} != 0: x cannot kill the highest vector")
    if not c[D].is_zero:
        raise TruncationNotStable(f"c_D = {c[D]} != 0: y^{D}v does not span a submodule")
    t = ring.t
    H = smatrix.smat_zero(D, D, t)
    X = smatrix.smat_zero(D, D, t)
    Y = smatrix.smat_zero(D, D, t)
    for k in range(D):
        H[k, k, :] = np.array(instance.phi.of(instance.ring.h, -k).evaluate(mu).coeffs)
        if k + 1 < D:
            Y[k + 1, k, 0] = 1  # y * y^k v = y^{k+1} v
        if k >= 1:
            X[k - 1, k, :] = np.array(c[k].coeffs)  # x * y^k v = c_k y^{k-1} v
    return MatrixModule(instance, D, H, X, Y, label or f"verma(mu={mu}, D={D})")


@dataclass(frozen=True)
class SubmoduleBasis:
    """Canonical basis of an S-submodule of S^d, as Howell rows of the
    expanded Z/m vectors; equality of spans is equality of arrays."""

    dim: int
    t: int
    rows: np.ndarray  # (k, dim*t) canonical

    def __eq__(self, other):
        if not isinstance(other, SubmoduleBasis):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.t == other.t
            and np.array_equal(self.rows, other.rows)
        )

    @property
    def is_zero(self) -> bool:
        return self.rows.shape[0] == 0

    @property
    def is_full(self) -> bool:
        return self.rows.shape[0] == self.dim * self.t and bool(
            np.array_equal(self.rows, np.eye(self.dim * self.t, dtype=np.int64))
        )

    def vectors(self) -> np.ndarray:
        """The basis as S-column vectors, shape (k, dim, t)."""
        return self.rows.reshape(-1, self.dim, self.t)

    def contains(self, v: np.ndarray, m: int) -> bool:
        return smatrix.in_span(self.rows, v, m)

    def closed_under(self, A: np.ndarray, m: int) -> bool:
        for v in self.vectors():
            w = smatrix.smat_mul(A, v.reshape(self.dim, 1, self.t), m)
            if not self.contains(w.reshape(self.dim, self.t), m):
                return False
        return True


def span_of_vectors(vectors: np.ndarray, m: int, dim: int, t: int) -> SubmoduleBasis:
    rows = smatrix.span_S(vectors.reshape(-1, dim, t), m) if vectors.size else np.zeros(
        (0, dim * t), dtype=np.int64
    )
    return SubmoduleBasis(dim, t, rows)


def z_torsion(M: MatrixModule) -> SubmoduleBasis:
    """Canonical basis of the z-power torsion: the stable union of
    ker z(H)^k over increasing k."""
    m, t, d = M.m, M.t, M.dim
    zH = M.poly_action(M.instance.z)
    power = smatrix.smat_eye(d, t)
    prev = SubmoduleBasis(d, t, np.zeros((0, d * t), dtype=np.int64))
    for _ in range(max(1, d) * t * max(1, m.bit_length()) + 1):
        power = smatrix.smat_mul(power, zH, m)
        ker = smatrix.kernel_S(power, m)
        cur = span_of_vectors(ker, m, d, t)
        if cur == prev:
            return cur
        prev = cur
    return prev


@dataclass(frozen=True)
class IsoWitness:
    T: np.ndarray
    T_inv: np.ndarray

    def verify(self, M1: MatrixModule, M2: MatrixModule) -> bool:
        m = M1.m
        for A, B in ((M1.H, M2.H), (M1.X, M2.X), (M1.Y, M2.Y)):
            if not smatrix.smat_eq(
                smatrix.smat_mul(self.T, A, m), smatrix.smat_mul(B, self.T, m)
            ):
                return False
        eye = smatrix.smat_eye(M1.dim, M1.t)
        return smatrix.smat_eq(smatrix.smat_mul(self.T, self.T_inv, m), eye) and smatrix.smat_eq(
            smatrix.smat_mul(self.T_inv, self.T, m), eye
        )


@dataclass(frozen=True)
class NoIsoFound:
    """Evidence, not proof: no invertible intertwiner found in the
    solution space of T*A_i = B_i*T."""

    solution_space_rank: int
    reason: str = ""


def intertwiner_space(M1: MatrixModule, M2: MatrixModule) -> np.ndarray:
    """Canonical generators of {T : T*A = B*T for A,B in (H,X,Y)}, as a
    stack of (d2, d1, t) S-matrices."""
    d1, d2, t, m = M1.dim, M2.dim, M1.t, M1.m
    # unknowns T[i, a], equations indexed by (i, j):
    #   sum_a T[i, a] A[a, j] - B[i, a] T[a, j] = 0
    n_eq, n_un = d2 * d1, d2 * d1
    pairs = ((M1.H, M2.H), (M1.X, M2.X), (M1.Y, M2.Y))
    system = smatrix.smat_zero(3 * n_eq, n_un, t)
    for g, (A, B) in enumerate(pairs):
        for i in range(d2):
            for j in range(d1):
                row = g * n_eq + i * d1 + j
                for a in range(d1):
                    system[row, i * d1 + a] = (system[row, i * d1 + a] + A[a, j]) % m
                for a in range(d2):
                    # subtract B[i, a] at unknown T[a, j]
                    system[row, a * d1 + j] = (system[row, a * d1 + j] - B[i, a]) % m
    sols = smatrix.kernel_S(system, m)
    return sols.reshape(-1, d2, d1, t)


def module_iso_check(M1: MatrixModule, M2: MatrixModule, seed: int = 0, tries: int = 200):
    """Search the intertwiner space for an invertible T; IsoWitness or
    NoIsoFound (the latter is evidence, not a proof of non-isomorphism)."""
    if M1.instance != M2.instance:
        raise InvalidParameters("modules over different instances")
    if M1.dim != M2.dim:
        return NoIsoFound(0, f"dim {M1.dim} != {M2.dim}")
    if M1.dim == 0:
        eye = smatrix.smat_eye(0, M1.t)
        return IsoWitness(eye, eye)
    m = M1.m
    basis = intertwiner_space(M1, M2)
    for T in basis:
        inv = smatrix.smat_inverse(T, m)
        if inv is not None:
            return IsoWitness(T, inv)
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        coeffs = rng.integers(0, m, size=len(basis))
        T = np.tensordot(coeffs, basis, axes=1) % m
        inv = smatrix.smat_inverse(T, m)
        if inv is not None:
            return IsoWitness(T, inv)
    return NoIsoFound(len(basis))


def spin(vectors: np.ndarray, actions, m: int, dim: int, t: int) -> SubmoduleBasis:
    """Smallest submodule containing the given S-vectors (shape (k, dim, t)),
    closed under the given action matrices."""
    basis = span_of_vectors(vectors, m, dim, t)
    while True:
        new_rows = [basis.rows]
        grew = False
        for A in actions:
            for v in basis.vectors():
                w = smatrix.smat_mul(A, v.reshape(dim, 1, t), m).reshape(dim, t)
                if not basis.contains(w, m):
                    new_rows.append(smatrix.flatten_vec(w).reshape(1, -1))
                    grew = True
        if not grew:
            return basis
        stacked = np.vstack(new_rows)
        basis = SubmoduleBasis(dim, t, howell.howell_form(stacked, m))


def simple_check(M: MatrixModule, seed: int = 0, tries: int = 200) -> bool:
    """Is M simple?  Finite-field coefficients only (t = 1, m prime).

    Uses the nullity-one irreducibility criterion: for a singular element
    theta of the acting algebra with one-dimensional kernel, M is simple
    iff the kernel vector spins to all of M and the transpose kernel vector
    spins to all of the transpose module.  Any proper spin encountered
    along the way already certifies reducibility.  Falls back to exhaustive
    spinning of all lines when the random search is inconclusive.
    """
    ring = M.instance.scalars
    if ring.t != 1 or not ring.is_field:
        raise UnsupportedRing("simplicity check needs a prime field")
    p, d = M.m, M.dim
    if d == 0:
        return False
    if d == 1:
        return True
    actions = (M.H, M.X, M.Y)
    actions_t = tuple(np.transpose(A, (1, 0, 2)) for A in actions)
    rng = np.random.default_rng(seed)
    words = [M.H, M.X, M.Y, smatrix.smat_mul(M.X, M.Y, p), smatrix.smat_mul(M.Y, M.X, p),
             smatrix.smat_mul(M.H, M.X, p), smatrix.smat_mul(M.Y, M.H, p)]
    for _ in range(tries):
        coeffs = rng.integers(0, p, size=len(words))
        theta = np.zeros((d, d, 1), dtype=np.int64)
        for c, W in zip(coeffs, words):
            theta = (theta + int(c) * W) % p
        for lam in range(p):
            shifted = theta.copy()
            shifted[np.arange(d), np.arange(d), 0] = (shifted[np.arange(d), np.arange(d), 0] - lam) % p
            ker = smatrix.kernel_S(shifted, p)
            nullity = ker.shape[0]
            if nullity == 0:
                continue
            for v in ker:
                if not spin(v.reshape(1, d, 1), actions, p, d, 1).is_full:
                    return False
            if nullity == 1:
                ker_t = smatrix.kernel_S(np.transpose(shifted, (1, 0, 2)), p)
                for w in ker_t:
                    if not spin(w.reshape(1, d, 1), actions_t, p, d, 1).is_full:
                        return False
                return True
    # exhaustive fallback over all lines of F_p^d (small modules only)
    n_lines = (p**d - 1) // (p - 1)
    if n_lines > 20000:
        raise InvalidParameters(f"simplicity search inconclusive for dim {d} over F_{p}")
    for v in _projective_points(p, d):
        if not spin(v.reshape(1, d, 1), actions, p, d, 1).is_full:
            return False
    return True


def _projective_points(p: int, d: int):
    # one representative per line: first nonzero coordinate equal to 1
    import itertools

    for lead in range(d):
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            v = np.zeros((d, 1), dtype=np.int64)
            v[lead, 0] = 1
            for k, c in enumerate(tail):
                v[lead + 1 + k, 0] = c
            yield v


def direct_sum(M1: MatrixModule, M2: MatrixModule, label: str = "") -> MatrixModule:
    if M1.instance != M2.instance:
        raise InvalidParameters("modules over different instances")
    t = M1.t
    d = M1.dim + M2.dim

    def block(A, B):
        out = smatrix.smat_zero(d, d, t)
        out[: M1.dim, : M1.dim] = A
        out[M1.dim :, M1.dim :] = B
        return out

    return MatrixModule(
        M1.instance,
        d,
        block(M1.H, M2.H),
        block(M1.X, M2.X),
        block(M1.Y, M2.Y),
        label or f"({M1.label}) + ({M2.label})",
    )
