"""Cross-checks that the contour routes must pass.

Three kinds of evidence: route-against-route comparison on a shared grid,
finite-difference residuals of the canonical ODE, and closed-form oracles
(spectra, Bessel series) implemented independently of the code under test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .contour_eval import ContourConfig, Method, MethodRegimeMismatch, phi_values
from .core_laplace import CanonicalODE
from .potential_catalog import (
    BOUND_KINDS,
    CONTINUUM_KINDS,
    Kind,
    NotBoundProblem,
    ProblemSpec,
    QuantumNumbers,
    bound_energy,
    canonicalize,
    n_start,
    residue_lattice_energy,
)

_REFERENCE_FLOOR = 1e-12  # below this the reference is treated as a zero crossing
_ONSET_THRESHOLD = 1e-3
_ONSET_RUN = 3  # consecutive exceedances that count as persistent failure


@dataclass(frozen=True)
class ComparisonReport:
    """Route-against-route comparison on one grid.

    Deviations are measured against the reference route (the real segment
    integral) and only where its magnitude exceeds a floor, so zero crossings
    do not inflate the statistics.  failure_onset_xi[m] is the smallest grid
    xi at which route m deviates from the reference by more than 1e-3
    relative at three consecutive valid points, or None if it never does.
    """

    problem: ProblemSpec
    energy: float
    grid: Tuple[float, ...]
    values: Dict[Method, np.ndarray]
    pairwise_max_rel_dev: float
    failure_onset_xi: Dict[Method, Optional[float]]
    reference: Method = Method.REAL_INTEGRAL


def _onset(
    grid: Sequence[float], vals: np.ndarray, ref: np.ndarray
) -> Optional[float]:
    run = 0
    for i in range(len(grid)):
        r = ref[i]
        if not (np.isfinite(r.real) and np.isfinite(r.imag)) or abs(r) < _REFERENCE_FLOOR:
            run = 0
            continue
        v = vals[i]
        if np.isfinite(v.real) and np.isfinite(v.imag):
            dev = abs(v - r) / abs(r)
        else:
            dev = math.inf  # a failed evaluation is an exceedance
        run = run + 1 if dev > _ONSET_THRESHOLD else 0
        if run == _ONSET_RUN:
            return float(grid[i - (_ONSET_RUN - 1)])
    return None


def cross_method_report(
    spec: ProblemSpec,
    energy: float,
    grid: Sequence[float],
    cfg: Optional[ContourConfig] = None,
) -> ComparisonReport:
    """Evaluate the three continuum routes on one grid and compare them.

    Evaluation errors are recorded as NaN at the offending point rather than
    aborting the report; they count as failures for onset detection.
    """
    if spec.kind not in CONTINUUM_KINDS:
        raise MethodRegimeMismatch(
            "cross-method comparison needs a non-Morse continuum kind, "
            f"got {spec.kind.value}"
        )
    methods = (Method.REAL_INTEGRAL, Method.CIRCLE, Method.SERIES)
    xi = np.asarray(list(grid), dtype=float)
    values: Dict[Method, np.ndarray] = {}
    for m in methods:
        out = np.empty(xi.shape, dtype=complex)
        for i, x in enumerate(xi):
            try:
                out[i] = phi_values(spec, energy, np.array([x]), m, config=cfg)[0]
            except Exception:
                out[i] = complex(np.nan, np.nan)
        values[m] = out

    ref = values[Method.REAL_INTEGRAL]
    ok = np.isfinite(ref) & (np.abs(ref) > _REFERENCE_FLOOR)
    worst = 0.0
    for i, a in enumerate(methods):
        for b in methods[i + 1 :]:
            va, vb = values[a], values[b]
            both = ok & np.isfinite(va) & np.isfinite(vb)
            if np.any(both):
                dev = np.abs(va[both] - vb[both]) / np.abs(ref[both])
                worst = max(worst, float(np.max(dev)))

    onsets: Dict[Method, Optional[float]] = {Method.REAL_INTEGRAL: None}
    for m in (Method.CIRCLE, Method.SERIES):
        onsets[m] = _onset(xi, values[m], ref)

    return ComparisonReport(
        problem=spec,
        energy=float(energy),
        grid=tuple(float(x) for x in xi),
        values=values,
        pairwise_max_rel_dev=worst,
        failure_onset_xi=onsets,
    )


# ---------------------------------------------------------------------------
# ODE residuals


def _residual_from_samples(
    xi: np.ndarray,
    phi_minus: np.ndarray,
    phi_center: np.ndarray,
    phi_plus: np.ndarray,
    beta: complex,
    delta: float,
    lam: complex,
    h: float,
) -> float:
    """Max relative defect of xi*Phi'' + beta*Phi' + (delta - lam^2 xi)*Phi.

    Derivatives are centered differences at spacing h; the defect at each
    point is scaled by max(|Phi|, |Phi'|, |Phi''|) there.  An identically
    zero sample set has zero defect by convention.
    """
    d1 = (phi_plus - phi_minus) / (2.0 * h)
    d2 = (phi_plus - 2.0 * phi_center + phi_minus) / (h * h)
    resid = xi * d2 + beta * d1 + (delta - lam * lam * xi) * phi_center
    scale = np.maximum(
        np.abs(phi_center), np.maximum(np.abs(d1), np.abs(d2))
    )
    scale = np.where(scale > 0.0, scale, 1.0)
    return float(np.max(np.abs(resid) / scale))


def _hermite_residual_from_samples(
    xi: np.ndarray,
    phi_minus: np.ndarray,
    phi_center: np.ndarray,
    phi_plus: np.ndarray,
    energy_over_omega: float,
    h: float,
) -> float:
    # Phi'' - 2 xi Phi' + (2E/omega - 1) Phi = 0 for the direct Hermite route
    d1 = (phi_plus - phi_minus) / (2.0 * h)
    d2 = (phi_plus - 2.0 * phi_center + phi_minus) / (h * h)
    resid = d2 - 2.0 * xi * d1 + (2.0 * energy_over_omega - 1.0) * phi_center
    scale = np.maximum(np.abs(phi_center), np.maximum(np.abs(d1), np.abs(d2)))
    scale = np.where(scale > 0.0, scale, 1.0)
    return float(np.max(np.abs(resid) / scale))


def ode_residual_sweep(
    spec: ProblemSpec,
    energy_or_qn,
    method: Method,
    grid: Sequence[float],
    h: float = 1e-4,
    tol: Optional[float] = None,
) -> float:
    """Check sampled Phi against its defining equation by finite differences.

    energy_or_qn is a float energy, or for bound kinds an int n or a
    QuantumNumbers pair (resolved on the residue lattice).  Returns the max
    pointwise relative residual over the grid.  h trades finite-difference
    truncation against amplified evaluation noise (4/h^2), so quadrature
    routes want a larger h than the closed-form ones; tol, when given, is
    forwarded to the route evaluator.
    """
    if isinstance(energy_or_qn, QuantumNumbers):
        n = energy_or_qn.n
        energy = _lattice_energy_for_n(spec, n)
    elif isinstance(energy_or_qn, (int, np.integer)) and spec.kind in BOUND_KINDS:
        energy = _lattice_energy_for_n(spec, int(energy_or_qn))
    else:
        energy = float(energy_or_qn)

    xi = np.asarray(list(grid), dtype=float)
    stacked = np.concatenate([xi - h, xi, xi + h])
    phi = phi_values(spec, energy, stacked, method, tol=tol)
    m = len(xi)
    phi_minus, phi_center, phi_plus = phi[:m], phi[m : 2 * m], phi[2 * m :]

    if spec.kind is Kind.SHO1D_HERMITE:
        return _hermite_residual_from_samples(
            xi, phi_minus, phi_center, phi_plus, energy / spec.omega, h
        )
    ode: CanonicalODE = canonicalize(spec, energy)
    return _residual_from_samples(
        xi, phi_minus, phi_center, phi_plus, ode.beta, ode.delta, ode.lam, h
    )


def _lattice_energy_for_n(spec: ProblemSpec, n: int) -> float:
    if spec.kind is Kind.SHO1D_HERMITE:
        return bound_energy(spec, n)
    return residue_lattice_energy(spec, n - n_start(spec))


# ---------------------------------------------------------------------------
# Spectrum enumeration


def spectrum_table(
    spec: ProblemSpec, n_max: int
) -> List[Tuple[QuantumNumbers, float]]:
    """Bound energies for n from the lowest admissible value up to n_max.

    The Morse list stops at the last level below the dissociation threshold
    even when n_max asks for more.
    """
    if spec.kind not in BOUND_KINDS:
        raise NotBoundProblem(f"{spec.kind.value} is not a bound problem")
    lo = n_start(spec)
    rows: List[Tuple[QuantumNumbers, float]] = []
    for n in range(lo, max(n_max, lo - 1) + 1):
        try:
            e = bound_energy(spec, n)
        except Exception:
            break  # past the Morse well depth
        rows.append((QuantumNumbers(n=n, N=n - lo), e))
    return rows


# ---------------------------------------------------------------------------
# Independent Bessel oracles (ascending series, no shared code with the
# routes under test)


def bessel_j_series(m: int, x: float, terms: int = 200) -> float:
    """J_m(x) by its ascending series; adequate for moderate x."""
    if m < 0:
        raise ValueError("order must be nonnegative")
    term = (0.5 * x) ** m / math.factorial(m)
    acc = term
    q = -0.25 * x * x
    for j in range(1, terms):
        term *= q / (j * (j + m))
        acc += term
        if abs(term) < 1e-18 * max(abs(acc), 1e-300):
            break
    return acc


def spherical_j_series(l: int, x: float, terms: int = 200) -> float:
    """j_l(x) by its ascending series."""
    if l < 0:
        raise ValueError("order must be nonnegative")
    dfact = 1.0  # (2l+1)!!
    for k in range(1, 2 * l + 2, 2):
        dfact *= k
    term = x**l / dfact
    acc = term
    for j in range(1, terms):
        term *= -0.5 * x * x / (j * (2 * l + 2 * j + 1))
        acc += term
        if abs(term) < 1e-18 * max(abs(acc), 1e-300):
            break
    return acc
