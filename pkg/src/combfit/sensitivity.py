"""Sensitivity of atomic transition frequencies to the fine structure constant.

Non-relativistically, gross transitions scale as Ry, fine structure as
alpha^2*Ry, hyperfine structure as g_nucl*(mu_N/mu_B)*alpha^2*Ry, and
molecular vibration/rotation carry half-integer/integer powers of
m_e/m_p.  Heavy atoms add a relativistic correction F_rel(Z*alpha) whose
logarithmic alpha-derivative L = alpha * d(ln F_rel)/d(alpha) is what a
frequency-ratio drift measurement is sensitive to.  For alkali hyperfine
splittings the Casimir closed form gives F_rel directly; for optical
transitions L comes from published many-body calculations parameterised
by two frequencies (q1, q2).

Ry is treated purely as the frequency unit; it cancels in every ratio
this package produces and its value is never needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .constants import FINE_STRUCTURE_CONSTANT, SPEED_OF_LIGHT
from .errors import DomainError, InputError

TRANSITION_KINDS = frozenset(
    {
        "optical-gross",
        "fine-structure",
        "hyperfine",
        "molecular-vibration",
        "molecular-rotation",
    }
)


@dataclass(frozen=True)
class ScalingLaw:
    """Leading-order scaling of a transition kind in (Ry, alpha, m_e/m_p)."""

    rydberg_power: int
    alpha_power: int
    mass_ratio_power: Fraction
    uses_nuclear_g: bool


_SCALINGS = {
    "optical-gross": ScalingLaw(1, 0, Fraction(0), False),
    "fine-structure": ScalingLaw(1, 2, Fraction(0), False),
    "hyperfine": ScalingLaw(1, 2, Fraction(0), True),
    "molecular-vibration": ScalingLaw(1, 0, Fraction(1, 2), False),
    "molecular-rotation": ScalingLaw(1, 0, Fraction(1), False),
}


def alpha_exponent(kind: str) -> ScalingLaw:
    """Scaling descriptor for a transition kind."""
    try:
        return _SCALINGS[kind]
    except KeyError:
        raise InputError(
            f"unknown transition kind {kind!r}; known: {sorted(_SCALINGS)}"
        ) from None


@dataclass(frozen=True)
class CasimirResult:
    """Relativistic hyperfine correction and its alpha-sensitivity.

    lambda_rel = sqrt(1 - (Z*alpha)^2), f_rel = 3/(lambda*(4*lambda^2-1)),
    and l_hfs = alpha * d(ln f_rel)/d(alpha) in closed form.
    """

    lambda_rel: float
    f_rel: float
    l_hfs: float


def casimir(z: int, alpha: float = FINE_STRUCTURE_CONSTANT) -> CasimirResult:
    """Casimir correction for the hyperfine splitting of a Z-electron alkali."""
    if z < 0:
        raise InputError(f"atomic number must be non-negative, got {z}")
    za = z * alpha
    if za >= 1.0:
        raise DomainError(f"Z*alpha = {za:.3f} >= 1: relativistic breakdown")
    lam_sq = 1.0 - za * za
    lam = math.sqrt(lam_sq)
    denom = lam * (4.0 * lam_sq - 1.0)
    if denom <= 0.0:
        raise DomainError(
            f"Casimir approximation breaks down at Z*alpha = {za:.3f} "
            "(lambda <= 1/2)"
        )
    f_rel = 3.0 / denom
    l_hfs = za * za * (12.0 * lam_sq - 1.0) / (lam_sq * (4.0 * lam_sq - 1.0))
    return CasimirResult(lambda_rel=lam, f_rel=f_rel, l_hfs=l_hfs)


def optical_sensitivity(q1: float, q2: float, f0: float) -> float:
    """Alpha sensitivity of an optical transition: (2*q1 + 4*q2)/f0."""
    if f0 <= 0:
        raise DomainError(f"transition frequency must be positive, got {f0}")
    return (2.0 * q1 + 4.0 * q2) / f0


def alpha_shifted_frequency(f0: float, q1: float, q2: float, alpha_ratio: float) -> float:
    """Transition frequency at a shifted alpha.

    f = f0 + q1*((alpha/alpha0)^2 - 1) + q2*((alpha/alpha0)^4 - 1); the
    logarithmic derivative at alpha_ratio = 1 is 2*q1 + 4*q2.
    """
    if alpha_ratio <= 0:
        raise DomainError(f"alpha ratio must be positive, got {alpha_ratio}")
    r2 = alpha_ratio * alpha_ratio
    return f0 + q1 * (r2 - 1.0) + q2 * (r2 * r2 - 1.0)


@dataclass(frozen=True)
class TransitionRecord:
    """A metrological transition and its sensitivity data.

    q1_hz/q2_hz are the two expansion frequencies from many-body
    calculations (consumed as data, never computed here).  When both are
    present together with a wavelength, the stored l_alpha must agree
    with (2*q1 + 4*q2)/f0 to 1e-6.
    """

    id: str
    kind: str
    z: int
    l_alpha: "float | None" = None
    wavelength_nm: "float | None" = None
    q1_hz: "float | None" = None
    q2_hz: "float | None" = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in TRANSITION_KINDS:
            raise InputError(
                f"transition {self.id!r}: unknown kind {self.kind!r}"
            )
        if self.z < 0:
            raise InputError(f"transition {self.id!r}: negative atomic number")
        if self.wavelength_nm is not None and self.wavelength_nm <= 0:
            raise InputError(f"transition {self.id!r}: non-positive wavelength")
        self._check_q_consistency()

    def _check_q_consistency(self):
        if None in (self.q1_hz, self.q2_hz, self.l_alpha):
            return
        f0 = self.frequency_hz
        if f0 is None:
            raise InputError(
                f"transition {self.id!r}: q1/q2 given but no wavelength to "
                "derive the transition frequency from"
            )
        derived = optical_sensitivity(self.q1_hz, self.q2_hz, f0)
        if not math.isclose(derived, self.l_alpha, rel_tol=1e-6, abs_tol=1e-6):
            raise InputError(
                f"transition {self.id!r}: stored sensitivity {self.l_alpha} "
                f"disagrees with (2*q1+4*q2)/f0 = {derived}"
            )

    @property
    def frequency_hz(self) -> "float | None":
        if self.wavelength_nm is None:
            return None
        return SPEED_OF_LIGHT / (self.wavelength_nm * 1e-9)

    @property
    def scaling(self) -> ScalingLaw:
        return alpha_exponent(self.kind)


class TransitionRegistry:
    """Immutable id-keyed collection of transition records."""

    def __init__(self, records):
        self._records = {}
        for record in records:
            if record.id in self._records:
                raise InputError(f"duplicate transition id {record.id!r}")
            self._records[record.id] = record

    def get(self, transition_id: str) -> TransitionRecord:
        try:
            return self._records[transition_id]
        except KeyError:
            raise InputError(
                f"unknown transition {transition_id!r}; known: {sorted(self._records)}"
            ) from None

    def __iter__(self):
        return iter(self._records.values())

    def __len__(self):
        return len(self._records)

    def __contains__(self, transition_id):
        return transition_id in self._records
