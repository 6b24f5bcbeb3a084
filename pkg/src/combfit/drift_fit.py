"""Maximum-likelihood constraints on drifting constants from ratio drift rates.

Each repeated absolute optical frequency measurement yields a fractional
drift rate of the ratio f_hfs(Cs)/f_opt:

    d/dt ln(f_hfs / f_opt) = y + A*x = b +- sigma

with x = d(ln alpha)/dt, y = d(ln mu_Cs/mu_B)/dt and A = 2 + L_cs - L_opt
(the 2 is the alpha^2 hyperfine scaling).  With Gaussian errors the
likelihood is exp(-R^2/2), R^2 = sum_i w_i (y + A_i x - b_i)^2, and the
minimum has a closed form in the six weighted sums below.

Sign convention: the model fitted here is y + A_i*x = b_i.  The variant
with y - A_i*x (which appears in some write-ups of the same estimator) is
its mirror image x -> -x; only the convention implemented here reproduces
the published joint constraints from the published per-transition inputs,
which the acceptance suite verifies against an independent grid oracle.

Internally drift rates are scaled to units of 1e-15/yr so every sum is
O(1); weighted sums use math.fsum, which makes the fit exactly invariant
under permutations of the input list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import fsum
from typing import Callable, Sequence

from .comb_core import ExactFrequency
from .constants import SOLAR_POTENTIAL_VARIATION
from .errors import DomainError, InputError, PhaseCoverageError, SingularSystemError
from .sensitivity import CasimirResult, TransitionRecord

# Internal scale: 1e-15 / yr, for conditioning.
_SCALE = 1e-15


@dataclass(frozen=True)
class DriftMeasurement:
    """One fractional drift rate of a Cs-hyperfine/optical ratio.

    A is the dimensionless sensitivity coefficient, b the measured rate
    (1/yr) and sigma its one-standard-deviation uncertainty (1/yr).
    """

    transition_id: str
    A: float
    b: float
    sigma: float
    epoch_span: "tuple[float, float] | None" = None

    def __post_init__(self):
        if not math.isfinite(self.A):
            raise InputError(f"{self.transition_id}: sensitivity must be finite")
        if not (math.isfinite(self.b) and math.isfinite(self.sigma)):
            raise InputError(f"{self.transition_id}: rate and sigma must be finite")
        if self.sigma <= 0:
            raise InputError(f"{self.transition_id}: sigma must be positive")


@dataclass(frozen=True)
class DriftSolution:
    """Joint estimate of x = d(ln alpha)/dt and y = d(ln mu_Cs/mu_B)/dt."""

    x: float
    y: float
    sigma_x: float
    sigma_y: float
    correlation_xy: float
    chi2: float
    n_points: int

    def as_dict(self):
        return {
            "x_per_yr": self.x,
            "y_per_yr": self.y,
            "sigma_x_per_yr": self.sigma_x,
            "sigma_y_per_yr": self.sigma_y,
            "x_e15_per_yr": self.x / _SCALE,
            "y_e15_per_yr": self.y / _SCALE,
            "sigma_x_e15_per_yr": self.sigma_x / _SCALE,
            "sigma_y_e15_per_yr": self.sigma_y / _SCALE,
            "correlation_xy": self.correlation_xy,
            "chi2": self.chi2,
            "n_points": self.n_points,
        }


def build_coefficient(
    transition: TransitionRecord, cs_reference: "CasimirResult | float"
) -> float:
    """Sensitivity coefficient A = 2 + L_cs - L_opt for one ratio.

    ``cs_reference`` is either a CasimirResult for the Cs hyperfine
    reference or the bare L value; the reference datasets were composed
    with the rounded value 0.8 (see constants.CS_HFS_SENSITIVITY_REFERENCE).
    """
    if transition.l_alpha is None:
        raise DomainError(
            f"transition {transition.id!r} has no alpha sensitivity on record"
        )
    l_cs = cs_reference.l_hfs if isinstance(cs_reference, CasimirResult) else float(cs_reference)
    return 2.0 + l_cs - transition.l_alpha


def residual_sum(measurements: Sequence[DriftMeasurement], x: float, y: float) -> float:
    """R^2(x, y) = sum_i (y + A_i x - b_i)^2 / sigma_i^2."""
    return fsum(
        ((y + m.A * x - m.b) / m.sigma) ** 2 for m in measurements
    )


def fit_drift(measurements: Sequence[DriftMeasurement]) -> DriftSolution:
    """Closed-form weighted maximum-likelihood solution of y + A_i*x = b_i.

    Needs at least two measurements with distinct sensitivities; with all
    A equal, x and y cannot be disentangled from any number of absolute
    frequencies against the same reference and the fit refuses to guess.
    """
    measurements = list(measurements)
    if len(measurements) < 2:
        raise DomainError("need at least two drift measurements")
    a_values = [m.A for m in measurements]
    if max(a_values) == min(a_values):
        raise SingularSystemError(
            "cannot disentangle x from y: all sensitivity coefficients are equal"
        )

    w = [1.0 / (m.sigma / _SCALE) ** 2 for m in measurements]
    a = a_values
    b = [m.b / _SCALE for m in measurements]

    sum_w = fsum(w)
    sum_wa = fsum(wi * ai for wi, ai in zip(w, a))
    sum_waa = fsum(wi * ai * ai for wi, ai in zip(w, a))
    sum_wb = fsum(wi * bi for wi, bi in zip(w, b))
    sum_wab = fsum(wi * ai * bi for wi, ai, bi in zip(w, a, b))

    det = sum_w * sum_waa - sum_wa * sum_wa
    if det <= 0 or det <= 1e-12 * sum_w * sum_waa:
        raise SingularSystemError(
            "cannot disentangle x from y: sensitivity coefficients are "
            "numerically degenerate"
        )

    x = (sum_w * sum_wab - sum_wa * sum_wb) / det
    y = (sum_waa * sum_wb - sum_wa * sum_wab) / det
    sigma_x = math.sqrt(sum_w / det)
    sigma_y = math.sqrt(sum_waa / det)
    correlation = -sum_wa / math.sqrt(sum_w * sum_waa)
    chi2 = fsum(
        wi * (y + ai * x - bi) ** 2 for wi, ai, bi in zip(w, a, b)
    )
    return DriftSolution(
        x=x * _SCALE,
        y=y * _SCALE,
        sigma_x=sigma_x * _SCALE,
        sigma_y=sigma_y * _SCALE,
        correlation_xy=correlation,
        chi2=chi2,
        n_points=len(measurements),
    )


@dataclass(frozen=True)
class TimeSeriesPoint:
    """One absolute frequency measurement at a decimal-year epoch."""

    epoch: float
    value: ExactFrequency
    sigma: float  # Hz

    def __post_init__(self):
        if self.sigma <= 0:
            raise InputError("measurement sigma must be positive")


def fit_relative_drift(series: Sequence[TimeSeriesPoint]) -> "tuple[float, float]":
    """Weighted-least-squares fractional drift of an absolute-frequency series.

    Fits (value - mean)/mean against epoch and returns (slope, sigma) in
    1/yr.  The slope is the drift of the measured frequency itself; a
    ratio written the other way up (reference over optical) flips its
    sign, which :func:`measurement_from_series` does for you.
    """
    series = list(series)
    if len(series) < 2:
        raise DomainError("need at least two points to fit a drift")
    epochs = [p.epoch for p in series]
    if max(epochs) == min(epochs):
        raise DomainError("degenerate epochs: all measurements at the same time")

    values = [p.value.to_float_hz() for p in series]
    weights_hz = [1.0 / p.sigma**2 for p in series]
    mean = fsum(wi * vi for wi, vi in zip(weights_hz, values)) / fsum(weights_hz)

    y = [(vi - mean) / mean for vi in values]
    w = [(mean / p.sigma) ** 2 for p in series]

    sw = fsum(w)
    st = fsum(wi * ti for wi, ti in zip(w, epochs))
    sy = fsum(wi * yi for wi, yi in zip(w, y))
    stt = fsum(wi * ti * ti for wi, ti in zip(w, epochs))
    sty = fsum(wi * ti * yi for wi, ti, yi in zip(w, epochs, y))
    det = sw * stt - st * st
    if det <= 0:
        raise DomainError("degenerate epochs: drift slope is unconstrained")
    slope = (sw * sty - st * sy) / det
    sigma = math.sqrt(sw / det)
    return slope, sigma


def measurement_from_series(
    transition_id: str,
    A: float,
    series: Sequence[TimeSeriesPoint],
) -> DriftMeasurement:
    """Turn an absolute-frequency series into a ratio-drift measurement.

    The fitted drift of the optical frequency enters the hyperfine/optical
    ratio with opposite sign.
    """
    slope, sigma = fit_relative_drift(series)
    epochs = [p.epoch for p in series]
    return DriftMeasurement(
        transition_id=transition_id,
        A=A,
        b=-slope,
        sigma=sigma,
        epoch_span=(min(epochs), max(epochs)),
    )


@dataclass(frozen=True)
class AnnualPotential:
    """Sinusoidal model of the solar potential variation seen by Earth.

    Returns Delta U(t)/c^2 at a decimal-year epoch; amplitude is the peak
    fractional variation, phase_epoch the epoch of maximum.
    """

    amplitude: float = SOLAR_POTENTIAL_VARIATION
    phase_epoch: float = 0.0
    period_years: float = 1.0

    def __call__(self, epoch: float) -> float:
        return self.amplitude * math.cos(
            2.0 * math.pi * (epoch - self.phase_epoch) / self.period_years
        )


@dataclass(frozen=True)
class GravityCouplingFit:
    """Coupling of alpha to the gravitational potential: delta_alpha/alpha = k * dU/c^2."""

    k_alpha: float
    sigma_k: float

    def __post_init__(self):
        if self.sigma_k <= 0:
            raise DomainError("sigma_k must be positive")


def fit_gravity_coupling(
    samples: Sequence["tuple[float, float, float]"],
    potential_model: "Callable[[float], float] | None" = None,
    include_linear_drift: bool = False,
) -> GravityCouplingFit:
    """Weighted fit of fractional shifts against the potential variation.

    ``samples`` are (epoch, fractional_shift, sigma) triples.  The model is
    shift = k * dU(t)/c^2 + offset, optionally plus a linear drift
    nuisance term.  Samples must span more than half a potential period,
    otherwise k is degenerate with the offset.
    """
    import numpy as np

    samples = list(samples)
    potential = potential_model if potential_model is not None else AnnualPotential()
    n_params = 3 if include_linear_drift else 2
    if len(samples) < max(3, n_params + 1):
        raise DomainError(f"need at least {max(3, n_params + 1)} samples")
    epochs = np.array([s[0] for s in samples], dtype=float)
    shifts = np.array([s[1] for s in samples], dtype=float)
    sigmas = np.array([s[2] for s in samples], dtype=float)
    if np.any(sigmas <= 0):
        raise InputError("sample sigmas must be positive")

    period = getattr(potential, "period_years", 1.0)
    span = epochs.max() - epochs.min()
    if span <= period / 2.0:
        raise PhaseCoverageError(
            f"samples span {span:.3f} yr <= half a potential period "
            f"({period / 2.0:.3f} yr); coupling is degenerate with the offset"
        )

    u = np.array([potential(t) for t in epochs])
    columns = [u, np.ones_like(u)]
    if include_linear_drift:
        columns.append(epochs - epochs.mean())
    design = np.column_stack(columns)

    weights = 1.0 / sigmas**2
    normal = design.T @ (design * weights[:, None])
    rhs = design.T @ (shifts * weights)
    try:
        covariance = np.linalg.inv(normal)
    except np.linalg.LinAlgError:
        raise PhaseCoverageError(
            "normal matrix is singular; potential values do not separate "
            "the coupling from the offset"
        ) from None
    theta = covariance @ rhs
    sigma_k = math.sqrt(covariance[0, 0])
    return GravityCouplingFit(k_alpha=float(theta[0]), sigma_k=sigma_k)
