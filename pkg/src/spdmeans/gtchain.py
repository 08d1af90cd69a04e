"""Golden-Thompson complement chain.

For Hermitian X, Y and r > 0 the two chain functions

    phi(r) = (e^{rX} #  e^{rY})^{2/r}
    psi(r) = (e^{rX} @  e^{rY})^{2/r}

bracket e^{X+Y} in log-majorization: phi decreases and psi increases in r,
both tend to e^{X+Y} as r -> 0, and their traces sandwich tr e^{X+Y}.
``scan_chain`` evaluates everything on an r grid; ``evaluate_chain`` turns a
scan into named pass/fail margins.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, ParamOutOfRange
from .linalg import HermitianMatrix, SpdMatrix, eig_hermitian, mat_pow
from .majorization import MajorizationReport, default_tol, log_majorization_report
from .means import _MeanPair

DEFAULT_R_GRID = tuple(2.0 ** k for k in range(-6, 4))

# Chain predicates are exact theorems; margins beyond this multiple of the
# majorization tolerance are genuine failures rather than roundoff.
CHAIN_TOL_MULTIPLIER = 10.0


def _exp_scaled(x: HermitianMatrix, r: float) -> SpdMatrix:
    pair = eig_hermitian(x)
    return SpdMatrix._from_eig(pair.vectors.mat, np.exp(r * pair.values))


def _check_xy(x: HermitianMatrix, y: HermitianMatrix) -> None:
    if not isinstance(x, HermitianMatrix) or not isinstance(y, HermitianMatrix):
        raise ParamOutOfRange("chain functions take Hermitian matrices")
    if x.n != y.n:
        raise DimensionMismatch(f"dimension mismatch: {x.n} vs {y.n}")


def phi(x: HermitianMatrix, y: HermitianMatrix, r: float) -> SpdMatrix:
    """(e^{rX} # e^{rY})^{2/r} for r > 0."""
    _check_xy(x, y)
    if not r > 0.0:
        raise ParamOutOfRange(f"r must be positive, got {r}")
    mean = _MeanPair(_exp_scaled(x, r), _exp_scaled(y, r)).sharp(0.5)
    return mat_pow(mean, 2.0 / r)


def psi(x: HermitianMatrix, y: HermitianMatrix, r: float) -> SpdMatrix:
    """(e^{rX} @ e^{rY})^{2/r} for r > 0."""
    _check_xy(x, y)
    if not r > 0.0:
        raise ParamOutOfRange(f"r must be positive, got {r}")
    mean = _MeanPair(_exp_scaled(x, r), _exp_scaled(y, r)).natural(0.5)
    return mat_pow(mean, 2.0 / r)


@dataclass
class ChainScan:
    """phi/psi spectra, traces and matrices over an increasing r grid."""

    x: HermitianMatrix
    y: HermitianMatrix
    r_grid: tuple
    exp_sum: SpdMatrix
    phi_mats: list = field(default_factory=list)
    psi_mats: list = field(default_factory=list)
    phi_spectra: list = field(default_factory=list)
    psi_spectra: list = field(default_factory=list)
    traces: list = field(default_factory=list)  # (tr phi, tr psi, tr e^{X+Y})

    @property
    def exp_sum_spectrum(self) -> np.ndarray:
        return eig_hermitian(self.exp_sum).values


def scan_chain(
    x: HermitianMatrix, y: HermitianMatrix, r_grid=DEFAULT_R_GRID
) -> ChainScan:
    """Evaluate phi, psi and e^{X+Y} over a strictly increasing positive grid."""
    _check_xy(x, y)
    grid = tuple(float(r) for r in r_grid)
    if len(grid) == 0:
        raise ParamOutOfRange("r grid must be nonempty")
    if any(r <= 0.0 for r in grid) or any(
        b <= a for a, b in zip(grid, grid[1:])
    ):
        raise ParamOutOfRange("r grid must be positive and strictly increasing")
    exp_sum = _exp_scaled(HermitianMatrix._wrap(x.mat + y.mat), 1.0)
    scan = ChainScan(x=x, y=y, r_grid=grid, exp_sum=exp_sum)
    tr_exp = float(np.trace(exp_sum.mat).real)
    for r in grid:
        pair = _MeanPair(_exp_scaled(x, r), _exp_scaled(y, r))
        phi_r = mat_pow(pair.sharp(0.5), 2.0 / r)
        psi_r = mat_pow(pair.natural(0.5), 2.0 / r)
        scan.phi_mats.append(phi_r)
        scan.psi_mats.append(psi_r)
        scan.phi_spectra.append(eig_hermitian(phi_r).values)
        scan.psi_spectra.append(eig_hermitian(psi_r).values)
        scan.traces.append(
            (
                float(np.trace(phi_r.mat).real),
                float(np.trace(psi_r.mat).real),
                tr_exp,
            )
        )
    return scan


@dataclass
class ChainCheck:
    """One named chain predicate with its worst margin (>= -tol passes)."""

    name: str
    r: float
    margin: float
    tol: float

    @property
    def holds(self) -> bool:
        return self.margin >= -self.tol


@dataclass
class ChainReport:
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    @property
    def worst(self) -> "ChainCheck":
        return min(self.checks, key=lambda c: c.margin + c.tol)


def _log_margin(x: np.ndarray, y: np.ndarray) -> MajorizationReport:
    return log_majorization_report(x, y)


def evaluate_chain(
    scan: ChainScan,
    spectra: tuple | None = None,
    tol_multiplier: float = CHAIN_TOL_MULTIPLIER,
) -> ChainReport:
    """Named margins for every chain predicate on a scan.

    ``spectra`` optionally overrides (phi_spectra, psi_spectra,
    exp_sum_spectrum) so an alternative comparator path (e.g. eigenvalue
    moduli of the group elements) can be scored by the same machinery.
    """
    if spectra is None:
        phis, psis, mid = (
            scan.phi_spectra,
            scan.psi_spectra,
            scan.exp_sum_spectrum,
        )
    else:
        phis, psis, mid = spectra
    checks = []

    def add(name: str, r: float, rep: MajorizationReport) -> None:
        checks.append(
            ChainCheck(
                name=name, r=r, margin=rep.worst_margin, tol=tol_multiplier * rep.tol
            )
        )

    for r, lam_phi, lam_psi in zip(scan.r_grid, phis, psis):
        add("phi_below_exp_sum", r, _log_margin(lam_phi, mid))
        add("psi_above_exp_sum", r, _log_margin(mid, lam_psi))
    for (r1, lam1), (r2, lam2) in zip(
        zip(scan.r_grid, phis), list(zip(scan.r_grid, phis))[1:]
    ):
        add(f"phi_decreasing_{r1:g}_{r2:g}", r2, _log_margin(lam2, lam1))
    for (r1, lam1), (r2, lam2) in zip(
        zip(scan.r_grid, psis), list(zip(scan.r_grid, psis))[1:]
    ):
        add(f"psi_increasing_{r1:g}_{r2:g}", r2, _log_margin(lam1, lam2))

    # Trace chain: tr phi(r) <= tr e^{X+Y} <= tr psi(r), monotone in r.
    trace_tol = default_tol(np.array([t for row in scan.traces for t in row]))
    for r, (tp, ts, te) in zip(scan.r_grid, scan.traces):
        checks.append(ChainCheck("trace_phi_below", r, te - tp, trace_tol))
        checks.append(ChainCheck("trace_psi_above", r, ts - te, trace_tol))
    tr_phi = [row[0] for row in scan.traces]
    tr_psi = [row[1] for row in scan.traces]
    for r, d in zip(scan.r_grid[1:], np.diff(tr_phi)):
        checks.append(ChainCheck("trace_phi_decreasing", r, -float(d), trace_tol))
    for r, d in zip(scan.r_grid[1:], np.diff(tr_psi)):
        checks.append(ChainCheck("trace_psi_increasing", r, float(d), trace_tol))
    return ChainReport(checks=checks)


def trotter_distances(scan: ChainScan) -> list:
    """Max-norm distances of phi(r) and psi(r) from e^{X+Y} per grid point.

    Both shrink to zero as r -> 0 (Lie-Trotter); on a halving grid the
    decrease is monotone for generic pairs.
    """
    target = scan.exp_sum.mat
    out = []
    for r, pm, sm in zip(scan.r_grid, scan.phi_mats, scan.psi_mats):
        out.append(
            (
                r,
                float(np.abs(pm.mat - target).max()),
                float(np.abs(sm.mat - target).max()),
            )
        )
    return out


def golden_thompson_refinement(
    x: HermitianMatrix, y: HermitianMatrix, r_values=(0.5, 1.0)
) -> list:
    """Sandwich tr e^{X+Y} <= tr psi(r) <= tr e^X e^Y for 0 < r <= 1.

    At r = 1 the upper end is exact: tr psi(1) = tr e^X e^Y, recovering the
    classical trace inequality; smaller r tightens the upper bound.
    Returns (r, tr e^{X+Y}, tr psi(r), tr e^X e^Y) rows.
    """
    _check_xy(x, y)
    if any(not (0.0 < r <= 1.0) for r in r_values):
        raise ParamOutOfRange("refinement holds for r in (0, 1]")
    tr_exp_sum = float(
        np.trace(_exp_scaled(HermitianMatrix._wrap(x.mat + y.mat), 1.0).mat).real
    )
    tr_prod = float(
        np.trace(_exp_scaled(x, 1.0).mat @ _exp_scaled(y, 1.0).mat).real
    )
    rows = []
    for r in r_values:
        tr_psi = float(np.trace(psi(x, y, float(r)).mat).real)
        rows.append((float(r), tr_exp_sum, tr_psi, tr_prod))
    return rows
