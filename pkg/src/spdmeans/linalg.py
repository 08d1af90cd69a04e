"""Deterministic dense complex linear algebra.

Validated matrix types (Hermitian, positive definite, unitary) plus the
eigendecomposition, matrix-function, polar and spectrum kernels every other
module builds on.  All decompositions are computed here, with fixed sweep
orders, so identical inputs give identical outputs run to run.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, NoConvergence, SingularInput

HERMITIAN_TOL = 1e-10
SPD_TOL = 1e-12
UNITARY_TOL = 1e-10
RECON_TOL = 1e-11
MAX_SWEEPS = 64

# Jacobi sweeps stop once the largest off-diagonal entry falls below this
# multiple of the largest input entry.
_JACOBI_STOP = 5e-16


def _as_square_complex(mat) -> np.ndarray:
    arr = np.asarray(mat, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DomainError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.view(float))):
        raise DomainError("matrix entries must be finite")
    return arr


class ComplexMatrix:
    """Square complex matrix with finite entries."""

    __slots__ = ("mat",)

    def __init__(self, mat):
        arr = _as_square_complex(mat).copy()
        arr.setflags(write=False)
        self.mat = arr

    @property
    def n(self) -> int:
        return self.mat.shape[0]

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n})"


class HermitianMatrix(ComplexMatrix):
    """Hermitian matrix; construction symmetrizes to (M + M*)/2.

    Inputs whose asymmetry exceeds ``HERMITIAN_TOL`` relative to the largest
    entry are rejected rather than silently repaired.
    """

    __slots__ = ("_eig",)

    def __init__(self, mat):
        arr = _as_square_complex(mat)
        scale = max(1.0, float(np.abs(arr).max()))
        defect = float(np.abs(arr - arr.conj().T).max())
        if defect > HERMITIAN_TOL * scale:
            raise DomainError(
                f"matrix is not Hermitian: asymmetry {defect:.3e} exceeds "
                f"{HERMITIAN_TOL:.0e} * {scale:.3e}"
            )
        sym = (arr + arr.conj().T) / 2.0
        sym.setflags(write=False)
        self.mat = sym
        self._eig = None

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "HermitianMatrix":
        """Internal: wrap an array known to be Hermitian (symmetrized here)."""
        obj = object.__new__(cls)
        sym = (arr + arr.conj().T) / 2.0
        sym.setflags(write=False)
        obj.mat = sym
        obj._eig = None
        return obj


class SpdMatrix(HermitianMatrix):
    """Hermitian positive definite matrix.

    The constructor runs a full eigendecomposition to enforce
    ``lambda_min > SPD_TOL * lambda_max``; the decomposition is cached on the
    instance so later matrix functions reuse it.
    """

    __slots__ = ()

    def __init__(self, mat):
        super().__init__(mat)
        pair = eig_hermitian(self)
        lo, hi = pair.values[-1], pair.values[0]
        if not (lo > SPD_TOL * hi):
            raise DomainError(
                f"matrix is not positive definite: eigenvalue range "
                f"[{lo:.3e}, {hi:.3e}]"
            )

    @classmethod
    def _trusted(cls, arr: np.ndarray) -> "SpdMatrix":
        """Internal: wrap a product known to be SPD without re-validating."""
        return cls._wrap(arr)

    @classmethod
    def _from_eig(cls, q: np.ndarray, vals: np.ndarray) -> "SpdMatrix":
        """Internal: assemble Q diag(vals) Q* and seed the eigen cache."""
        obj = cls._wrap((q * vals) @ q.conj().T)
        order = np.argsort(-vals, kind="stable")
        vecs = UnitaryMatrix.__new__(UnitaryMatrix)
        qs = np.ascontiguousarray(q[:, order])
        qs.setflags(write=False)
        vecs.mat = qs
        vs = np.ascontiguousarray(vals[order])
        vs.setflags(write=False)
        obj._eig = EigenPair(vs, vecs)
        return obj


class UnitaryMatrix(ComplexMatrix):
    """Unitary matrix: ‖U*U − I‖_max ≤ UNITARY_TOL enforced at construction."""

    __slots__ = ()

    def __init__(self, mat):
        arr = _as_square_complex(mat).copy()
        n = arr.shape[0]
        defect = float(np.abs(arr.conj().T @ arr - np.eye(n)).max())
        if defect > UNITARY_TOL:
            raise DomainError(
                f"matrix is not unitary: ‖U*U − I‖_max = {defect:.3e}"
            )
        arr.setflags(write=False)
        self.mat = arr


class EigenPair:
    """Eigendecomposition of a Hermitian matrix.

    ``values`` are real and sorted descending (stable ties); the columns of
    ``vectors`` are the matching orthonormal eigenvectors.
    """

    __slots__ = ("values", "vectors")

    def __init__(self, values: np.ndarray, vectors: UnitaryMatrix):
        vals = np.asarray(values, dtype=float)
        vals.setflags(write=False)
        self.values = vals
        self.vectors = vectors

    def reconstruct(self) -> np.ndarray:
        q = self.vectors.mat
        return (q * self.values) @ q.conj().T

    def apply(self, fn) -> np.ndarray:
        """Assemble Q diag(fn(values)) Q* as a plain array."""
        q = self.vectors.mat
        return (q * fn(self.values)) @ q.conj().T


def _plane_rotation(app: float, aqq: float, apq: complex, absb: float):
    """Rotation (c, s, phase*) diagonalizing [[app, apq], [apq*, aqq]]."""
    phase = apq / absb
    tau = (aqq - app) / (2.0 * absb)
    t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
    c = 1.0 / math.hypot(1.0, t)
    return c, t * c, phase.conjugate(), t


def _jacobi_hermitian(a0: np.ndarray, max_sweeps: int):
    """Cyclic Jacobi sweeps on a Hermitian matrix; returns (values, Q)."""
    n = a0.shape[0]
    a = np.array(a0, dtype=complex)
    if n == 1:
        return a.real.diagonal().copy(), np.eye(1, dtype=complex)
    scale = float(np.abs(a).max())
    if scale == 0.0:
        return np.zeros(n), np.eye(n, dtype=complex)
    if n == 2:
        # A single rotation is exact for the 2x2 case.
        apq = a[0, 1]
        absb = abs(apq)
        app, aqq = a[0, 0].real, a[1, 1].real
        if absb <= _JACOBI_STOP * scale:
            return np.array([app, aqq]), np.eye(2, dtype=complex)
        c, s, pc, t = _plane_rotation(app, aqq, apq, absb)
        q = np.array([[c, s], [-s * pc, c * pc]], dtype=complex)
        return np.array([app - t * absb, aqq + t * absb]), q
    # Stack the working matrix on top of the eigenvector accumulator so one
    # column update advances both.
    w = np.empty((2 * n, n), dtype=complex)
    w[:n] = a
    w[n:] = np.eye(n)
    a = w[:n]
    stop = _JACOBI_STOP * scale
    skip = stop / (4.0 * n)
    for _ in range(max_sweeps):
        off = np.abs(a)
        np.fill_diagonal(off, 0.0)
        if float(off.max()) <= stop:
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apq = a[p, r]
                absb = abs(apq)
                if absb <= skip:
                    continue
                app = a[p, p].real
                aqq = a[r, r].real
                c, s, pc, t = _plane_rotation(app, aqq, apq, absb)
                j10 = -s * pc
                j11 = c * pc
                cp = w[:, p].copy()
                cr = w[:, r]
                w[:, p] = c * cp + j10 * cr
                w[:, r] = s * cp + j11 * cr
                rp = a[p, :].copy()
                rr = a[r, :]
                a[p, :] = c * rp + j10.conjugate() * rr
                a[r, :] = s * rp + j11.conjugate() * rr
                a[p, p] = app - t * absb
                a[r, r] = aqq + t * absb
                a[p, r] = 0.0
                a[r, p] = 0.0
    else:
        raise NoConvergence(
            f"Jacobi eigendecomposition did not converge in {max_sweeps} sweeps"
        )
    return a.diagonal().real.copy(), w[n:].copy()


def eig_hermitian(m: HermitianMatrix, max_sweeps: int = MAX_SWEEPS) -> EigenPair:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Values come back sorted descending; ties keep the order produced by the
    sweep (stable sort).  The result is cached on the input, so repeated
    calls on the same object are free.
    """
    if m._eig is not None:
        return m._eig
    vals, q = _jacobi_hermitian(m.mat, max_sweeps)
    order = np.argsort(-vals, kind="stable")
    vals = np.ascontiguousarray(vals[order])
    qs = np.ascontiguousarray(q[:, order])
    vals.setflags(write=False)
    qs.setflags(write=False)
    vecs = UnitaryMatrix.__new__(UnitaryMatrix)
    vecs.mat = qs
    pair = EigenPair(vals, vecs)
    m._eig = pair
    return pair


def mat_exp(m: HermitianMatrix) -> SpdMatrix:
    """exp(M) for Hermitian M; the result is positive definite."""
    pair = eig_hermitian(m)
    return SpdMatrix._from_eig(pair.vectors.mat, np.exp(pair.values))


def mat_log(m: SpdMatrix) -> HermitianMatrix:
    """Principal logarithm of a positive definite matrix."""
    if not isinstance(m, SpdMatrix):
        raise DomainError("mat_log requires a positive definite matrix")
    pair = eig_hermitian(m)
    out = HermitianMatrix._wrap(pair.apply(np.log))
    return out


def mat_pow(m: HermitianMatrix, t: float) -> HermitianMatrix:
    """M^t through the eigendecomposition.

    Non-integer exponents require a positive definite input; integer
    exponents are fine on any Hermitian matrix.
    """
    if isinstance(m, SpdMatrix):
        pair = eig_hermitian(m)
        return SpdMatrix._from_eig(pair.vectors.mat, pair.values ** t)
    if not float(t).is_integer():
        raise DomainError(
            "fractional matrix powers require a positive definite matrix"
        )
    pair = eig_hermitian(m)
    return HermitianMatrix._wrap(pair.apply(lambda v: v ** t))


def mat_sqrt(m: SpdMatrix) -> SpdMatrix:
    """Principal square root of a positive definite matrix."""
    if not isinstance(m, SpdMatrix):
        raise DomainError("mat_sqrt requires a positive definite matrix")
    return mat_pow(m, 0.5)


def mat_fn(m: HermitianMatrix, fn: str, t: float | None = None):
    """Dispatch form of the matrix functions: fn in {exp, log, sqrt, pow}."""
    if fn == "exp":
        return mat_exp(m)
    if fn == "log":
        return mat_log(m)
    if fn == "sqrt":
        return mat_sqrt(m)
    if fn == "pow":
        if t is None:
            raise DomainError("mat_fn('pow') needs an exponent t")
        return mat_pow(m, t)
    raise DomainError(f"unknown matrix function tag {fn!r}")


def polar(m: ComplexMatrix, side: str = "left") -> tuple[UnitaryMatrix, SpdMatrix]:
    """Polar decomposition of an invertible matrix.

    side='left' returns (U, P) with M = P U and P = (M M*)^{1/2};
    side='right' returns (U, P) with M = U P and P = (M* M)^{1/2}.
    """
    if side not in ("left", "right"):
        raise DomainError(f"polar side must be 'left' or 'right', got {side!r}")
    a = m.mat
    gram = a @ a.conj().T if side == "left" else a.conj().T @ a
    pair = eig_hermitian(HermitianMatrix._wrap(gram))
    if pair.values[-1] <= 0.0 or math.sqrt(
        max(pair.values[-1], 0.0) / pair.values[0]
    ) <= SPD_TOL:
        raise SingularInput(
            "polar decomposition requires an invertible input"
        )
    svals = np.sqrt(pair.values)
    q = pair.vectors.mat
    p_inv = (q * (1.0 / svals)) @ q.conj().T
    u = p_inv @ a if side == "left" else a @ p_inv
    # Ill-conditioned inputs leave the unitary factor short of tolerance;
    # Newton-Schulz steps square the defect away without touching P.
    eye = np.eye(u.shape[0])
    for _ in range(3):
        gram = u.conj().T @ u
        if float(np.abs(gram - eye).max()) <= 5e-15:
            break
        u = u @ (1.5 * eye - 0.5 * gram)
    return UnitaryMatrix(u), SpdMatrix._from_eig(q, svals)


def _hessenberg(a: np.ndarray) -> np.ndarray:
    """Householder reduction to upper Hessenberg form (complex)."""
    h = a.astype(complex).copy()
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k]
        xnorm = float(np.linalg.norm(x))
        if xnorm <= 1e-300:
            continue
        v = x.copy()
        a0 = abs(v[0])
        v[0] += (v[0] / a0 if a0 > 0.0 else 1.0) * xnorm
        vnorm = float(np.linalg.norm(v))
        if vnorm <= 1e-300:
            continue
        v /= vnorm
        h[k + 1 :, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1 :, k:])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v.conj())
        h[k + 2 :, k] = 0.0
    return h


def _qr_eigvals(h: np.ndarray, max_total_iter: int) -> np.ndarray:
    """Shifted QR iteration on a Hessenberg matrix; eigenvalues only."""
    n = h.shape[0]
    h = h.copy()
    vals = np.empty(n, dtype=complex)
    eps = np.finfo(float).eps
    hi = n
    window_iters = 0
    total = 0
    while hi > 0:
        # Deflate negligible subdiagonals inside the active block.
        lo = hi - 1
        while lo > 0:
            sub = abs(h[lo, lo - 1])
            if sub <= eps * (abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])):
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi - 1:
            vals[hi - 1] = h[hi - 1, hi - 1]
            hi -= 1
            window_iters = 0
            continue
        if lo == hi - 2:
            a, b = h[hi - 2, hi - 2], h[hi - 2, hi - 1]
            c, d = h[hi - 1, hi - 2], h[hi - 1, hi - 1]
            half = (a + d) / 2.0
            disc = np.emath.sqrt(half * half - (a * d - b * c))
            vals[hi - 2] = half + disc
            vals[hi - 1] = half - disc
            hi -= 2
            window_iters = 0
            continue
        if total >= max_total_iter:
            raise NoConvergence(
                f"QR spectrum iteration exceeded {max_total_iter} steps"
            )
        # Wilkinson shift from the trailing 2x2, exceptional shift on stall.
        a, b = h[hi - 2, hi - 2], h[hi - 2, hi - 1]
        c, d = h[hi - 1, hi - 2], h[hi - 1, hi - 1]
        half = (a - d) / 2.0
        disc = np.emath.sqrt(half * half + b * c)
        mu1, mu2 = d + half + disc, d + half - disc
        mu = mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2
        if window_iters > 0 and window_iters % 10 == 0:
            mu = d + 0.75 * abs(h[hi - 1, hi - 2])
        block = h[lo:hi, lo:hi]
        shift = mu * np.eye(hi - lo)
        qf, rf = np.linalg.qr(block - shift)
        h[lo:hi, lo:hi] = rf @ qf + shift
        window_iters += 1
        total += 1
    return vals


def _sort_by_modulus(vals: np.ndarray) -> np.ndarray:
    """Sort descending by modulus; ties by argument ascending in (−π, π]."""
    order = np.lexsort((np.angle(vals), -np.abs(vals)))
    return np.ascontiguousarray(vals[order])


def spectrum(m: ComplexMatrix, max_total_iter: int | None = None) -> np.ndarray:
    """Eigenvalues of a general square matrix, sorted by modulus descending.

    Hermitian inputs take the Jacobi path (exactly real output); everything
    else goes through Hessenberg reduction and shifted QR iteration.
    """
    a = m.mat
    n = a.shape[0]
    scale = max(1.0, float(np.abs(a).max()))
    if isinstance(m, HermitianMatrix) or float(
        np.abs(a - a.conj().T).max()
    ) <= HERMITIAN_TOL * scale:
        herm = m if isinstance(m, HermitianMatrix) else HermitianMatrix._wrap(a)
        vals = eig_hermitian(herm).values.astype(complex)
        return _sort_by_modulus(vals)
    cap = max_total_iter if max_total_iter is not None else 60 * n
    vals = _qr_eigvals(_hessenberg(a), cap)
    return _sort_by_modulus(vals)
