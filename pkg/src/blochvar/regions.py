"""Feasible variance regions by Monte-Carlo scatter plus boundary tracing.

Scans draw an ensemble, record tuples of squared variances, and mark an
occupancy grid over [0, 1]^d (cell size in squared-variance units,
default 0.01 to match figure-level precision).  Sample i always comes
from RNG stream i, so occupancy grows monotonically with the sample
count for a fixed seed and results do not depend on how work is split
across workers.

For qubit pair scans with unit observables the analytic boundary of the
scalar bound is attached: with the axis angle θ_ab it is traced by
coplanar states as (sin²θ, sin²(θ_ab ∓ θ)) for θ in [0, π/2].
Higher-dimensional scans report scatter and occupancy only; no closed
boundary form is available there.

``find_saturating_state`` looks for states that make the qubit bound an
equality at fixed |p|: a golden-section search over the angle inside the
plane spanned by the two coefficient vectors (where coplanarity predicts
exact saturation), cross-checked by a full-sphere Nelder-Mead refinement
that should find nothing lower.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .bloch import Observable, QuantumState, state_to_matrix
from .errors import DimensionMismatch, NumericsError
from .relations import check_theorem1, check_three_observable_equality
from .sampling import SampleConfig, Xoshiro256pp, _draw_for
from .sun_basis import basis_for
from .variance import variance_bloch

__all__ = [
    "RegionScan",
    "SaturationResult",
    "scan_pair",
    "scan_triple",
    "find_saturating_state",
]

_GRID_RANGE = (1e-3, 0.1)
_SCAN_MARGIN_FLOOR = -1e-9
_GOLDEN_INV = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True, eq=False)
class RegionScan:
    """Scatter of variance tuples with its occupancy grid.

    ``samples`` holds squared variances, shape (count, d); ``margins``
    holds each sample's governing-relation margin (NaN when no relation
    governs, i.e. pair scans beyond the qubit case).  ``boundary`` is an
    array of analytic boundary points or None.
    """

    axes: tuple[str, ...]
    theta_ab: float
    grid: float
    seed: int
    kind: str
    samples: np.ndarray = field(repr=False)
    purities: np.ndarray = field(repr=False)
    margins: np.ndarray = field(repr=False)
    occupancy: np.ndarray = field(repr=False)
    boundary: np.ndarray | None = field(repr=False, default=None)

    @property
    def n_cells(self) -> int:
        return self.occupancy.shape[0]

    def slice_span(self, axis: int, value: float, width: float | None = None) -> tuple[float, float, int]:
        """(min, max, count) of sqrt(variance) on the other axis within
        ``|samples[:, axis] - value| <= width`` (default one grid cell)."""
        if self.samples.shape[1] != 2:
            raise ValueError("slice_span is defined for pair scans")
        width = self.grid if width is None else width
        mask = np.abs(self.samples[:, axis] - value) <= width
        if not mask.any():
            return math.nan, math.nan, 0
        other = np.sqrt(self.samples[mask, 1 - axis])
        return float(other.min()), float(other.max()), int(mask.sum())


@dataclass(frozen=True, eq=False)
class SaturationResult:
    """Best state found by the saturation search."""

    best_state: QuantumState
    achieved_margin: float
    iterations: int


def _check_grid(grid: float) -> int:
    lo, hi = _GRID_RANGE
    if not lo <= grid <= hi:
        raise ValueError(f"grid {grid!r} outside [{lo}, {hi}]")
    return int(math.ceil(1.0 / grid - 1e-12))


def _occupancy(samples: np.ndarray, grid: float, n_cells: int) -> np.ndarray:
    occ = np.zeros((n_cells,) * samples.shape[1], dtype=bool)
    idx = np.clip((samples / grid).astype(np.intp), 0, n_cells - 1)
    occ[tuple(idx.T)] = True
    return occ


def _axis_angle(a: Observable, b: Observable) -> float:
    c = float(a.a @ b.a) / math.sqrt(a.norm2 * b.norm2)
    return math.acos(min(1.0, max(-1.0, c)))


def _validate_samples(samples: np.ndarray, norms: list[float]) -> None:
    for k, n2 in enumerate(norms):
        col = samples[:, k]
        if col.min(initial=0.0) < -1e-12 or col.max(initial=0.0) > n2 + 1e-12:
            raise NumericsError(
                f"axis {k} sample outside [-1e-12, {n2} + 1e-12]"
            )


def scan_pair(a: Observable, b: Observable, ensemble: SampleConfig, grid: float) -> RegionScan:
    """Scatter (ΔA², ΔB²) over the ensemble.

    For qubit ensembles every sample's bound margin is recorded and must
    stay above -1e-9.  Pure qubit ensembles with unit observables also
    get the analytic boundary attached.
    """
    n_cells = _check_grid(grid)
    if a.dim != b.dim or a.dim != ensemble.dim:
        raise DimensionMismatch("observables and ensemble must share one dimension")
    if max(a.norm2, b.norm2) > 1.0 + 1e-12:
        raise ValueError("occupancy grid covers [0, 1]; use |a| <= 1 observables")
    basis = basis_for(ensemble.dim)
    count = ensemble.count
    samples = np.empty((count, 2))
    purities = np.empty(count)
    margins = np.full(count, math.nan)
    qubit = ensemble.dim == 2
    for i in range(count):
        state = _draw_for(ensemble, Xoshiro256pp(ensemble.seed, stream=i), basis)
        samples[i, 0] = variance_bloch(a, state, basis)
        samples[i, 1] = variance_bloch(b, state, basis)
        purities[i] = state.purity
        if qubit:
            margin = check_theorem1(a, b, state).margin
            if margin < _SCAN_MARGIN_FLOOR:
                raise NumericsError(f"sample {i} violates the qubit bound: {margin!r}")
            margins[i] = margin
    _validate_samples(samples, [a.norm2, b.norm2])
    theta_ab = _axis_angle(a, b)
    boundary = None
    if qubit and ensemble.kind == "haar_pure" and abs(a.norm2 - 1.0) < 1e-9 and abs(b.norm2 - 1.0) < 1e-9:
        boundary = _pair_boundary(theta_ab)
    return RegionScan(
        axes=("dA2", "dB2"),
        theta_ab=theta_ab,
        grid=grid,
        seed=ensemble.seed,
        kind=ensemble.kind,
        samples=samples,
        purities=purities,
        margins=margins,
        occupancy=_occupancy(samples, grid, n_cells),
        boundary=boundary,
    )


def _pair_boundary(theta_ab: float, points: int = 1001) -> np.ndarray:
    theta = np.linspace(0.0, math.pi / 2.0, points)
    da2 = np.sin(theta) ** 2
    lower = np.sin(theta_ab - theta) ** 2
    upper = np.sin(theta_ab + theta) ** 2
    return np.concatenate(
        [np.column_stack([da2, lower]), np.column_stack([da2, upper])]
    )


def scan_triple(theta_ab: float, ensemble: SampleConfig, grid: float) -> RegionScan:
    """Scatter (ΔA², ΔB², ΔC²) for the axis triple at θ_ab.

    Pure qubit ensembles only: the three variances of a pure state sit
    exactly on the certainty surface, and every sample is checked to
    satisfy it within 1e-9.  ``boundary`` carries a parametric grid of
    that surface.
    """
    n_cells = _check_grid(grid)
    if ensemble.dim != 2 or ensemble.kind != "haar_pure":
        raise ValueError("triple scans are defined for pure qubit ensembles only")
    if not -1e-12 <= theta_ab <= math.pi + 1e-12:
        raise ValueError(f"theta_ab = {theta_ab!r} outside [0, pi]")
    basis = basis_for(2)
    cos_t = math.cos(theta_ab)
    sin_t = math.sin(theta_ab)
    count = ensemble.count
    samples = np.empty((count, 3))
    purities = np.empty(count)
    margins = np.empty(count)
    for i in range(count):
        state = _draw_for(ensemble, Xoshiro256pp(ensemble.seed, stream=i), basis)
        p = state.p
        u = p[0]
        v = p[0] * cos_t + p[1] * sin_t
        w = p[2]
        samples[i] = (max(1.0 - u * u, 0.0), max(1.0 - v * v, 0.0), max(1.0 - w * w, 0.0))
        purities[i] = state.purity
        residual = check_three_observable_equality(theta_ab, state).margin
        if abs(residual) > 1e-9:
            raise NumericsError(f"sample {i} misses the certainty surface: {residual!r}")
        margins[i] = residual
    _validate_samples(samples, [1.0, 1.0, 1.0])
    return RegionScan(
        axes=("dA2", "dB2", "dC2"),
        theta_ab=theta_ab,
        grid=grid,
        seed=ensemble.seed,
        kind=ensemble.kind,
        samples=samples,
        purities=purities,
        margins=margins,
        occupancy=_occupancy(samples, grid, n_cells),
        boundary=_triple_surface(theta_ab),
    )


def _triple_surface(theta_ab: float, n_theta: int = 61, n_phi: int = 121) -> np.ndarray:
    theta, phi = np.meshgrid(
        np.linspace(0.0, math.pi, n_theta), np.linspace(0.0, 2.0 * math.pi, n_phi)
    )
    u = np.sin(theta) * np.cos(phi)
    v = np.sin(theta) * np.cos(phi - theta_ab)
    w = np.cos(theta)
    return np.column_stack(
        [(1.0 - u * u).ravel(), (1.0 - v * v).ravel(), (1.0 - w * w).ravel()]
    )


def _golden_min(f, lo: float, hi: float, tol: float = 1e-12) -> tuple[float, float, int]:
    """Golden-section minimum of f on [lo, hi]; returns (x, f(x), evals)."""
    c = hi - _GOLDEN_INV * (hi - lo)
    d = lo + _GOLDEN_INV * (hi - lo)
    fc = f(c)
    fd = f(d)
    evals = 2
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN_INV * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN_INV * (hi - lo)
            fd = f(d)
        evals += 1
    if fc < fd:
        return c, fc, evals
    return d, fd, evals


def find_saturating_state(a: Observable, b: Observable, p_norm: float) -> SaturationResult:
    """Minimize the qubit bound margin over states with |p| = p_norm.

    Coplanar states are predicted to reach margin 0 for every |p|; the
    golden-section stage searches the in-plane angle to 1e-12, then a
    Nelder-Mead pass over the whole sphere (budget 500 iterations)
    cross-checks that nothing off-plane does better.  Parallel
    coefficient vectors degenerate the plane; the search then falls back
    to the common axis.
    """
    if a.dim != 2 or b.dim != 2:
        raise DimensionMismatch("saturation search is defined for qubits")
    if not 0.0 < p_norm <= 1.0:
        raise ValueError(f"p_norm must lie in (0, 1], got {p_norm!r}")
    basis = basis_for(2)
    a_hat = a.a / np.linalg.norm(a.a)
    b_perp = b.a - float(b.a @ a_hat) * a_hat
    perp_norm = float(np.linalg.norm(b_perp))

    def margin_at(p_vec: np.ndarray) -> float:
        return check_theorem1(a, b, state_to_matrix(p_vec, basis)).margin

    if perp_norm < 1e-12 * math.sqrt(b.norm2):
        best_p = p_norm * a_hat
        return SaturationResult(
            best_state=state_to_matrix(best_p, basis),
            achieved_margin=margin_at(best_p),
            iterations=1,
        )

    e_hat = b_perp / perp_norm

    def in_plane(phi: float) -> float:
        return margin_at(p_norm * (math.cos(phi) * a_hat + math.sin(phi) * e_hat))

    phi_best, margin_best, evals = _golden_min(in_plane, 0.0, 2.0 * math.pi)
    best_p = p_norm * (math.cos(phi_best) * a_hat + math.sin(phi_best) * e_hat)

    def spherical(x: np.ndarray) -> float:
        th, ph = x
        vec = p_norm * np.array(
            [
                math.sin(th) * math.cos(ph),
                math.sin(th) * math.sin(ph),
                math.cos(th),
            ]
        )
        return margin_at(vec)

    th0 = math.acos(min(1.0, max(-1.0, best_p[2] / p_norm)))
    ph0 = math.atan2(best_p[1], best_p[0])
    result = minimize(
        spherical,
        x0=np.array([th0, ph0]),
        method="Nelder-Mead",
        options={"maxiter": 500, "xatol": 1e-10, "fatol": 1e-14},
    )
    evals += int(result.nfev)
    if result.fun < margin_best:
        margin_best = float(result.fun)
        th, ph = result.x
        best_p = p_norm * np.array(
            [math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)]
        )
    return SaturationResult(
        best_state=state_to_matrix(best_p, basis),
        achieved_margin=margin_best,
        iterations=evals,
    )
