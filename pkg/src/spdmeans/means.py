"""Metric and spectral geometric means of positive definite matrices.

The two parameterized means

    sharp_t  :  A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}
    natural_t:  A @_t B = (A^{-1} # B)^t A (A^{-1} # B)^t

plus the unitary intertwiner relating the spectral mean to
(A^{1/2} B A^{1/2})^{1/2}, the Loewner order predicate, and a residual
suite for the algebraic identity laws the means satisfy.

Everything is computed from the defining formulas through
eigendecompositions; the algebraic shortcuts are exactly the properties the
test suites check, so they are never used as the computation path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ParamOutOfRange
from .linalg import (
    ComplexMatrix,
    HermitianMatrix,
    SpdMatrix,
    UnitaryMatrix,
    eig_hermitian,
    mat_pow,
    polar,
)

IDENTITY_TOL = 1e-10
ORDER_TOL = 1e-12


def _check_pair(a: SpdMatrix, b: SpdMatrix) -> None:
    if not isinstance(a, SpdMatrix) or not isinstance(b, SpdMatrix):
        raise ParamOutOfRange("means are defined for positive definite matrices")
    if a.n != b.n:
        raise DimensionMismatch(f"dimension mismatch: {a.n} vs {b.n}")


def _check_unit(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0):
        raise ParamOutOfRange(f"{name} must lie in [0, 1], got {value}")


def rel_residual(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """Max-norm difference relative to the larger operand's max-norm."""
    scale = max(float(np.abs(lhs).max()), float(np.abs(rhs).max()), 1e-300)
    return float(np.abs(lhs - rhs).max()) / scale


class _MeanPair:
    """Per-pair cache so repeated mean evaluations share decompositions."""

    def __init__(self, a: SpdMatrix, b: SpdMatrix):
        _check_pair(a, b)
        self.a = a
        self.b = b
        self._root_a = None       # (A^{1/2}, A^{-1/2}) arrays
        self._mid = None          # A^{-1/2} B A^{-1/2}
        self._cross = None        # A^{-1} # B
        self._sharp = {}
        self._natural = {}

    def _roots(self):
        if self._root_a is None:
            pair = eig_hermitian(self.a)
            q = pair.vectors.mat
            rt = np.sqrt(pair.values)
            self._root_a = ((q * rt) @ q.conj().T, (q / rt) @ q.conj().T)
        return self._root_a

    def sharp(self, t: float) -> SpdMatrix:
        if t not in self._sharp:
            ra, ria = self._roots()
            if self._mid is None:
                self._mid = SpdMatrix._trusted(ria @ self.b.mat @ ria)
            core = mat_pow(self._mid, t).mat
            self._sharp[t] = SpdMatrix._trusted(ra @ core @ ra)
        return self._sharp[t]

    def cross(self) -> SpdMatrix:
        """A^{-1} # B, the generator of the spectral mean."""
        if self._cross is None:
            ra, ria = self._roots()
            inner = SpdMatrix._trusted(ra @ self.b.mat @ ra)
            pair = eig_hermitian(inner)
            q = pair.vectors.mat
            root = (q * np.sqrt(pair.values)) @ q.conj().T
            self._cross = SpdMatrix._trusted(ria @ root @ ria)
        return self._cross

    def natural(self, t: float) -> SpdMatrix:
        if t not in self._natural:
            ct = mat_pow(self.cross(), t).mat
            self._natural[t] = SpdMatrix._trusted(ct @ self.a.mat @ ct)
        return self._natural[t]


def geometric_mean(a: SpdMatrix, b: SpdMatrix, t: float = 0.5) -> SpdMatrix:
    """t-metric geometric mean A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}.

    The point at parameter t on the Riemannian geodesic from A to B in the
    positive definite cone.
    """
    _check_unit("t", t)
    return _MeanPair(a, b).sharp(t)


def spectral_mean(a: SpdMatrix, b: SpdMatrix, t: float = 0.5) -> SpdMatrix:
    """t-spectral geometric mean (A^{-1} # B)^t A (A^{-1} # B)^t.

    At t = 1/2 its square is similar to AB, so its eigenvalues are the
    positive square roots of the eigenvalues of AB.
    """
    _check_unit("t", t)
    return _MeanPair(a, b).natural(t)


def spectral_mean_unitary(a: SpdMatrix, b: SpdMatrix) -> UnitaryMatrix:
    """Unitary U with A @ B = U (A^{1/2} B A^{1/2})^{1/2} U*.

    U is the polar unitary of (A^{-1} # B)^{1/2} A^{1/2}.
    """
    pair = _MeanPair(a, b)
    ra, _ = pair._roots()
    g = mat_pow(pair.cross(), 0.5).mat @ ra
    u, _ = polar(ComplexMatrix(g), side="right")
    return u


def loewner_leq(a: HermitianMatrix, b: HermitianMatrix) -> bool:
    """Loewner order: True iff B - A is positive semidefinite (within
    ORDER_TOL relative slack)."""
    if a.n != b.n:
        raise DimensionMismatch(f"dimension mismatch: {a.n} vs {b.n}")
    diff = b.mat - a.mat
    scale = float(np.abs(diff).max())
    if scale == 0.0:
        return True
    vals = eig_hermitian(HermitianMatrix._wrap(diff)).values
    return bool(vals[-1] >= -ORDER_TOL * scale)


def spd_det(m: SpdMatrix) -> float:
    """Determinant via the cached eigenvalues."""
    return float(np.prod(eig_hermitian(m).values))


@dataclass
class MeanIdentityReport:
    """Named residuals from one identity-suite evaluation."""

    params: tuple
    residuals: dict
    tol: float = IDENTITY_TOL

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


IDENTITY_NAMES = (
    "natural_inverse_half",
    "natural_inverse_t",
    "natural_swap_t",
    "sharp_swap_t",
    "link_half",
    "link_t_left",
    "link_t_right",
    "conjugation_t_p",
    "conjugation_t_q",
    "natural_interpolation",
    "sharp_chain",
    "natural_chain",
    "riccati_midpoint",
    "sharp_determinant",
    "natural_determinant",
)


class _IdentityContext:
    """Shared decompositions for sweeping identity checks over one pair.

    All derived means and inverses are memoized by their parameters, so a
    full (t, r, s) grid costs little more than its distinct eigensystems.
    """

    def __init__(self, a: SpdMatrix, b: SpdMatrix):
        _check_pair(a, b)
        self.a = a
        self.b = b
        self.pair = _MeanPair(a, b)
        self.swapped = _MeanPair(b, a)
        self.a_inv = _spd_inverse(a)
        self.b_inv = _spd_inverse(b)
        self.inverse = _MeanPair(self.a_inv, self.b_inv)
        self._nat_inv = {}
        self._link_pair = {}
        self._link_right_pair = {}
        self._interp_pair = {}
        self._sharp_chain_pair = {}
        self._nat_chain_pair = {}
        self._det_a = spd_det(a)
        self._det_b = spd_det(b)

    def _natural_inverse(self, t: float) -> SpdMatrix:
        if t not in self._nat_inv:
            self._nat_inv[t] = _spd_inverse(self.pair.natural(t))
        return self._nat_inv[t]

    def _link(self, t: float) -> SpdMatrix:
        """C_t = A^{-1} # (A @_t B), computed from its defining mean."""
        if t not in self._link_pair:
            self._link_pair[t] = _MeanPair(self.a_inv, self.pair.natural(t))
        return self._link_pair[t].sharp(0.5)

    def evaluate(self, t: float, r: float, s: float) -> MeanIdentityReport:
        pair, swapped, inverse = self.pair, self.swapped, self.inverse
        a, b = self.a, self.b
        res = {}

        nat_half = pair.natural(0.5)
        res["natural_inverse_half"] = rel_residual(
            self._natural_inverse(0.5).mat, inverse.natural(0.5).mat
        )
        nat_t = pair.natural(t)
        res["natural_inverse_t"] = rel_residual(
            self._natural_inverse(t).mat, inverse.natural(t).mat
        )
        res["natural_swap_t"] = rel_residual(
            nat_t.mat, swapped.natural(1.0 - t).mat
        )
        res["sharp_swap_t"] = rel_residual(
            pair.sharp(t).mat, swapped.sharp(1.0 - t).mat
        )

        # Links between the means: A^{-1} # (A @_t B) = (A^{-1} # B)^t.
        cross_t = mat_pow(pair.cross(), t)
        res["link_half"] = rel_residual(
            self._link(0.5).mat,
            _MeanPair(self._natural_inverse(0.5), b).sharp(0.5).mat,
        )
        res["link_t_left"] = rel_residual(self._link(t).mat, cross_t.mat)
        if t not in self._link_right_pair:
            self._link_right_pair[t] = _MeanPair(
                _spd_inverse(swapped.natural(t)), b
            )
        res["link_t_right"] = rel_residual(
            self._link_right_pair[t].sharp(0.5).mat, cross_t.mat
        )

        # Conjugation form: with C_t = A^{-1} # (A @_t B),
        # A @_t B = C_t A C_t and B @_t A = C_t^{-1} B C_t^{-1}.
        c_t = self._link(t)
        ct_inv = _spd_inverse(c_t)
        res["conjugation_t_p"] = rel_residual(
            c_t.mat @ a.mat @ c_t.mat, nat_t.mat
        )
        res["conjugation_t_q"] = rel_residual(
            ct_inv.mat @ b.mat @ ct_inv.mat, swapped.natural(t).mat
        )

        # Interpolation: (A @_r B) @_t (A @_s B) = A @_{(1-t)r + ts} B.
        if (r, s) not in self._interp_pair:
            self._interp_pair[(r, s)] = _MeanPair(
                pair.natural(r), pair.natural(s)
            )
        res["natural_interpolation"] = rel_residual(
            self._interp_pair[(r, s)].natural(t).mat,
            pair.natural((1.0 - t) * r + t * s).mat,
        )

        # Geodesic reparameterization for both means.
        u = s / (1.0 - r)
        if r not in self._sharp_chain_pair:
            self._sharp_chain_pair[r] = _MeanPair(pair.sharp(r), b)
        res["sharp_chain"] = rel_residual(
            pair.sharp(r + s).mat, self._sharp_chain_pair[r].sharp(u).mat
        )
        if r not in self._nat_chain_pair:
            self._nat_chain_pair[r] = _MeanPair(pair.natural(r), b)
        res["natural_chain"] = rel_residual(
            pair.natural(r + s).mat, self._nat_chain_pair[r].natural(u).mat
        )

        # Midpoint equation: g = A # B uniquely solves g A^{-1} g = B on SPD.
        g = pair.sharp(0.5)
        res["riccati_midpoint"] = rel_residual(
            g.mat @ self.a_inv.mat @ g.mat, b.mat
        )

        # Determinant scaling law shared by both means.
        det_target = self._det_a ** (1.0 - t) * self._det_b ** t
        det_scale = max(abs(det_target), 1e-300)
        res["sharp_determinant"] = (
            abs(spd_det(pair.sharp(t)) - det_target) / det_scale
        )
        res["natural_determinant"] = abs(spd_det(nat_t) - det_target) / det_scale

        return MeanIdentityReport(params=(t, r, s), residuals=res)


def _check_suite_params(t: float, r: float, s: float) -> None:
    for name, val in (("t", t), ("r", r), ("s", s)):
        _check_unit(name, val)
    if r + s > 1.0 + 1e-15:
        raise ParamOutOfRange(f"need r + s <= 1, got r + s = {r + s}")
    if r >= 1.0:
        raise ParamOutOfRange("need r < 1 for the reparameterization laws")


def mean_identity_suite(
    a: SpdMatrix,
    b: SpdMatrix,
    t: float = 0.5,
    r: float = 0.25,
    s: float = 0.5,
) -> MeanIdentityReport:
    """Residuals of the algebraic laws both means satisfy at (t, r, s).

    Requires r + s <= 1 and r < 1 so the geodesic reparameterization laws
    are well posed.
    """
    _check_suite_params(t, r, s)
    return _IdentityContext(a, b).evaluate(t, r, s)


def mean_identity_grid(
    a: SpdMatrix,
    b: SpdMatrix,
    t_values,
    r_values,
    s_values,
) -> list[MeanIdentityReport]:
    """Identity suite over a full (t, r, s) grid, sharing decompositions.

    Triples with r + s > 1 or r = 1 are skipped (the reparameterization
    laws are not defined there).
    """
    ctx = _IdentityContext(a, b)
    reports = []
    for t in t_values:
        for r in r_values:
            for s in s_values:
                if r + s > 1.0 + 1e-15 or r >= 1.0:
                    continue
                _check_suite_params(t, r, s)
                reports.append(ctx.evaluate(t, r, s))
    return reports


def _spd_inverse(m: SpdMatrix) -> SpdMatrix:
    pair = eig_hermitian(m)
    return SpdMatrix._from_eig(pair.vectors.mat, 1.0 / pair.values)
