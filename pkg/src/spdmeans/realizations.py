"""Real symmetric realization SL(n,R)/SO(n).

Everything runs through the complex code path; this layer only projects
inputs into the real symmetric traceless subspace and constrains the orbit
solver's factors to SO(n).  One numerical kernel, two symmetric spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .gtchain import evaluate_chain, scan_chain
from .kostant import group_chain_report
from .linalg import HERMITIAN_TOL, HermitianMatrix, SpdMatrix, eig_hermitian, mat_exp
from .majorization import log_majorization_report
from .means import _IdentityContext, _MeanPair, spd_det
from .orbit import OrbitProblem, solve, verify_membership
from .sampling import random_real_symmetric_traceless

TRACE_TOL = 1e-10


class RealSymmetricTraceless(HermitianMatrix):
    """Element of the SL(n,R) flat: real symmetric with zero trace."""

    __slots__ = ()

    def __init__(self, mat):
        arr = np.asarray(mat, dtype=complex)
        scale = max(1.0, float(np.abs(arr).max()))
        if float(np.abs(arr.imag).max()) > HERMITIAN_TOL * scale:
            raise DomainError("realization requires a real matrix")
        if abs(float(np.trace(arr).real)) > TRACE_TOL * scale:
            raise DomainError("realization requires a traceless matrix")
        super().__init__(arr.real.astype(complex))


def project_to_realization(x: HermitianMatrix) -> RealSymmetricTraceless:
    """Nearest real symmetric traceless matrix: real part, symmetrized,
    trace removed."""
    arr = np.asarray(x.mat).real
    sym = (arr + arr.T) / 2.0
    sym = sym - np.eye(sym.shape[0]) * (np.trace(sym) / sym.shape[0])
    return RealSymmetricTraceless(sym.astype(complex))


@dataclass
class RealizationReport:
    """Per-suite outcomes of the real-realization re-run."""

    rows: list = field(default_factory=list)  # (suite, label, passed, margin)

    def add(self, suite: str, label: str, passed: bool, margin: float) -> None:
        self.rows.append((suite, label, bool(passed), float(margin)))

    @property
    def passed(self) -> bool:
        return all(row[2] for row in self.rows)


def _real_spd_pair(n: int, seed: int) -> tuple[SpdMatrix, SpdMatrix]:
    a = mat_exp(random_real_symmetric_traceless(n, seed))
    b = mat_exp(random_real_symmetric_traceless(n, seed + 104729))
    return a, b


def run_suites_on_realization(
    seed: int = 0,
    n_values=(2, 3, 4),
    trials: int = 5,
    orbit_tol: float = 1e-8,
) -> RealizationReport:
    """Re-run the mean, chain, orbit and pre-order suites on real inputs.

    Orbit factors are constrained to SO(n); all pass criteria match the
    complex suites.
    """
    report = RealizationReport()
    for n in n_values:
        for trial in range(trials):
            base = seed + 10007 * trial + 101 * n

            a, b = _real_spd_pair(n, base)
            ctx = _IdentityContext(a, b)
            rep = ctx.evaluate(0.3, 0.25, 0.5)
            report.add(
                "means_identities",
                f"n={n} trial={trial}",
                rep.passed,
                rep.max_residual,
            )
            det_a, det_b = spd_det(a), spd_det(b)
            report.add(
                "unit_determinant",
                f"n={n} trial={trial}",
                abs(det_a - 1.0) < 1e-8 and abs(det_b - 1.0) < 1e-8,
                max(abs(det_a - 1.0), abs(det_b - 1.0)),
            )
            pair = _MeanPair(a, b)
            lm = log_majorization_report(
                eig_hermitian(pair.sharp(0.5)).values,
                eig_hermitian(pair.natural(0.5)).values,
            )
            report.add(
                "log_majorization",
                f"n={n} trial={trial}",
                lm.worst_margin >= -10.0 * lm.tol,
                lm.worst_margin,
            )

            x = random_real_symmetric_traceless(n, base + 1, 0.5)
            y = random_real_symmetric_traceless(n, base + 2, 0.5)
            scan = scan_chain(x, y, tuple(2.0 ** k for k in range(-3, 2)))
            chain_rep = evaluate_chain(scan)
            worst = chain_rep.worst
            report.add(
                "chain", f"n={n} trial={trial}", chain_rep.passed, worst.margin
            )
            _, agree = group_chain_report(scan)
            report.add("kostant_agreement", f"n={n} trial={trial}", agree, 0.0)

            for kind in ("exp_product", "geometric", "spectral"):
                prob = OrbitProblem.create(
                    random_real_symmetric_traceless(n, base + 3),
                    random_real_symmetric_traceless(n, base + 4),
                    kind,
                )
                sol = solve(prob, tol=orbit_tol, seed=base, realization="slr")
                u = sol.u.mat.real
                in_so_n = (
                    float(np.abs(u.T @ u - np.eye(n)).max()) <= 1e-10
                    and np.linalg.det(u) > 0.0
                )
                report.add(
                    "orbit_" + kind,
                    f"n={n} trial={trial}",
                    sol.residual <= orbit_tol
                    and in_so_n
                    and verify_membership(sol, prob),
                    sol.residual,
                )
    return report
