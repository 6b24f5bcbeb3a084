"""Exact arithmetic on the frequency-comb equation and beat-note inversion.

A mode-locked laser emits modes at f_n = n*f_rep + f_ceo.  Counting a beat
note f_beat between a cw laser and its nearest comb mode ties the optical
frequency to two radio frequencies:

    f_laser = n*f_rep + s_ceo*f_ceo + s_beat*f_beat

with both sign factors unknown a priori because counters report
magnitudes.  Everything in this module is integer arithmetic on a 1 mHz
quantum, so a ~10^15 Hz optical frequency is carried to sub-mHz without
any rounding; Python integers make the representable range unbounded.

All types are immutable values and all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Callable

from .errors import AmbiguousModeNumberError, AmbiguousSignsError, DomainError, InputError

MILLIHERTZ_PER_HZ = 1000

# Mode numbers are plain non-negative ints; operations validate them.
ModeIndex = int


@dataclass(frozen=True, order=True)
class ExactFrequency:
    """A frequency as a signed integer count of millihertz.

    Addition, subtraction and multiplication by an integer are exact.
    Division is only available through divmod, which reports the
    remainder instead of rounding.  Floats are rejected on input; parse
    decimal strings instead.
    """

    millihertz: int

    def __post_init__(self):
        if not isinstance(self.millihertz, int):
            raise InputError(
                f"ExactFrequency needs an integer millihertz count, got "
                f"{type(self.millihertz).__name__}"
            )

    @classmethod
    def from_hz(cls, value: "int | str | Decimal | ExactFrequency") -> "ExactFrequency":
        """Build from integer hertz or a decimal string like "250e6" or "-0.125".

        Strings finer than 1 mHz are an error, never silently rounded.
        """
        if isinstance(value, ExactFrequency):
            return value
        if isinstance(value, bool):
            raise InputError("booleans are not frequencies")
        if isinstance(value, int):
            return cls(value * MILLIHERTZ_PER_HZ)
        if isinstance(value, float):
            raise InputError(
                "refusing float input (binary rounding); pass a decimal string"
            )
        try:
            parsed = Decimal(str(value))
        except InvalidOperation:
            raise InputError(f"not a decimal frequency: {value!r}") from None
        scaled = parsed.scaleb(3)
        if scaled != scaled.to_integral_value():
            raise InputError(f"sub-millihertz precision in {value!r}")
        return cls(int(scaled))

    def to_hz_string(self) -> str:
        """Decimal Hz with exactly three fractional digits, e.g. "563909250000000.000"."""
        sign = "-" if self.millihertz < 0 else ""
        hz, mhz = divmod(abs(self.millihertz), MILLIHERTZ_PER_HZ)
        return f"{sign}{hz}.{mhz:03d}"

    def to_float_hz(self) -> float:
        """Lossy float view in Hz, for plotting-grade numerics only."""
        return self.millihertz / MILLIHERTZ_PER_HZ

    def __str__(self):
        return self.to_hz_string()

    def __add__(self, other):
        if not isinstance(other, ExactFrequency):
            return NotImplemented
        return ExactFrequency(self.millihertz + other.millihertz)

    def __sub__(self, other):
        if not isinstance(other, ExactFrequency):
            return NotImplemented
        return ExactFrequency(self.millihertz - other.millihertz)

    def __neg__(self):
        return ExactFrequency(-self.millihertz)

    def __abs__(self):
        return ExactFrequency(abs(self.millihertz))

    def __mul__(self, factor):
        if isinstance(factor, bool) or not isinstance(factor, int):
            return NotImplemented
        return ExactFrequency(self.millihertz * factor)

    __rmul__ = __mul__

    def __divmod__(self, other):
        """Quotient (int) and exact remainder (ExactFrequency); floor semantics."""
        if not isinstance(other, ExactFrequency):
            return NotImplemented
        if other.millihertz == 0:
            raise ZeroDivisionError("division by zero frequency")
        q, r = divmod(self.millihertz, other.millihertz)
        return q, ExactFrequency(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __bool__(self):
        return self.millihertz != 0


ZERO = ExactFrequency(0)


def _ef(millihertz: int) -> ExactFrequency:
    return ExactFrequency(millihertz)


@dataclass(frozen=True)
class CombParams:
    """Repetition rate and carrier-envelope offset defining the comb grid."""

    f_rep: ExactFrequency
    f_ceo: ExactFrequency

    def __post_init__(self):
        if self.f_rep.millihertz <= 0:
            raise DomainError("repetition rate must be positive")

    @property
    def is_normalized(self) -> bool:
        return 0 <= self.f_ceo.millihertz < self.f_rep.millihertz

    @classmethod
    def from_hz(cls, f_rep, f_ceo) -> "CombParams":
        return cls(ExactFrequency.from_hz(f_rep), ExactFrequency.from_hz(f_ceo))


@dataclass(frozen=True)
class BeatObservation:
    """A counted beat magnitude plus the two sign flags of the inversion.

    Counters report |f_beat|; the signs with which the offset and the beat
    enter the laser frequency stay unknown until determined by perturbing
    the comb.  ``None`` marks an unresolved sign.  For a beat counted
    against the nearest mode, 0 <= f_beat <= f_rep/2.
    """

    f_beat: ExactFrequency
    sign_ceo: "int | None" = None
    sign_beat: "int | None" = None

    def __post_init__(self):
        if self.f_beat.millihertz < 0:
            raise DomainError("beat magnitude cannot be negative")
        for sign in (self.sign_ceo, self.sign_beat):
            if sign is not None and sign not in (1, -1):
                raise InputError(f"sign flag must be +1, -1 or None, got {sign!r}")

    @property
    def resolved(self) -> bool:
        return self.sign_ceo is not None and self.sign_beat is not None


def _check_mode_index(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise InputError(f"mode number must be an integer, got {type(n).__name__}")
    if n < 0:
        raise DomainError(f"mode number must be non-negative, got {n}")


def mode_frequency(comb: CombParams, n: ModeIndex) -> ExactFrequency:
    """Frequency of mode n: n*f_rep + f_ceo, exactly."""
    _check_mode_index(n)
    return _ef(n * comb.f_rep.millihertz + comb.f_ceo.millihertz)


def normalize(comb: CombParams, n: ModeIndex) -> "tuple[CombParams, ModeIndex]":
    """Renumber modes so the offset satisfies 0 <= f_ceo < f_rep.

    Returns an equivalent (comb, n) pair emitting the same mode frequency.
    """
    shift, remainder = divmod(comb.f_ceo.millihertz, comb.f_rep.millihertz)
    n_new = n + shift
    if n_new < 0:
        raise DomainError(
            f"normalization drives mode number negative ({n_new}); "
            "the described mode has negative frequency"
        )
    return CombParams(comb.f_rep, _ef(remainder)), n_new


def solve_laser_frequency(
    comb: CombParams, n: ModeIndex, beat: BeatObservation
) -> ExactFrequency:
    """Invert the beat measurement: n*f_rep + sign_ceo*f_ceo + sign_beat*f_beat."""
    _check_mode_index(n)
    if not beat.resolved:
        raise DomainError("beat signs are unresolved; call determine_signs first")
    mhz = (
        n * comb.f_rep.millihertz
        + beat.sign_ceo * comb.f_ceo.millihertz
        + beat.sign_beat * beat.f_beat.millihertz
    )
    return _ef(mhz)


# A measurement oracle: given trial (f_rep, f_ceo) settings with the laser
# held fixed, return the counted beat magnitude against the nearest mode.
BeatProbe = Callable[[ExactFrequency, ExactFrequency], ExactFrequency]


@dataclass(frozen=True)
class SimulatedBeatProbe:
    """Software stand-in for the counter used in sign determination.

    Models a comb whose physical offset is sign_ceo*setting and a fixed
    laser; returns the distance from the laser to the nearest mode.
    Useful for demos and tests of :func:`determine_signs`.
    """

    laser: ExactFrequency
    sign_ceo: int = 1

    def __call__(self, f_rep: ExactFrequency, f_ceo: ExactFrequency) -> ExactFrequency:
        residual = (self.laser.millihertz - self.sign_ceo * f_ceo.millihertz) % f_rep.millihertz
        return _ef(min(residual, f_rep.millihertz - residual))


def _default_rep_step(comb: CombParams) -> ExactFrequency:
    # f_rep * 1e-7; with n ~ 10^5..10^6 this keeps n*delta well under f_rep/4
    return _ef(max(comb.f_rep.millihertz // 10_000_000, 1))


def _default_ceo_step(comb: CombParams) -> ExactFrequency:
    step = max(comb.f_ceo.millihertz // 1000, 1_000_000)  # 1e-3*f_ceo, floor 1 kHz
    step = min(step, comb.f_ceo.millihertz // 2)
    return _ef(step)


def determine_signs(
    probe: BeatProbe,
    comb: CombParams,
    delta_rep: "ExactFrequency | None" = None,
    delta_ceo: "ExactFrequency | None" = None,
) -> "tuple[int, int]":
    """Resolve (sign_ceo, sign_beat) by perturbing the comb and watching the beat.

    Raising f_rep moves every mode up, so the beat shrinks exactly when the
    laser sits above its mode; raising the offset magnitude moves the modes
    by sign_ceo, which fixes the second sign.  Each knob is probed in both
    directions and the two responses must be antisymmetric (b+ + b- ==
    2*b0); any fold of the beat through zero or a mode hop breaks that
    check and is reported as ambiguous rather than guessed at.

    When f_ceo is zero the offset sign has no effect on any frequency; the
    pair (+1, sign_beat) is returned by convention.
    """
    b0 = probe(comb.f_rep, comb.f_ceo)
    if b0.millihertz == 0:
        raise AmbiguousSignsError(
            "beat note is zero (laser sits on a comb mode); no sign information"
        )

    step = delta_rep if delta_rep is not None else _default_rep_step(comb)
    if step.millihertz <= 0:
        raise InputError("repetition-rate perturbation must be positive")
    b_up = probe(comb.f_rep + step, comb.f_ceo)
    b_dn = probe(comb.f_rep - step, comb.f_ceo)
    if b_up.millihertz + b_dn.millihertz != 2 * b0.millihertz or b_up == b0:
        raise AmbiguousSignsError(
            "beat response to the repetition-rate perturbation is not linear "
            "(beat crossed zero or a mode hopped); retry with a smaller step"
        )
    sign_beat = 1 if b_up < b0 else -1

    if comb.f_ceo.millihertz == 0:
        return 1, sign_beat

    step_ceo = delta_ceo if delta_ceo is not None else _default_ceo_step(comb)
    if step_ceo.millihertz <= 0:
        raise InputError("offset perturbation must be positive")
    c_up = probe(comb.f_rep, comb.f_ceo + step_ceo)
    c_dn = probe(comb.f_rep, comb.f_ceo - step_ceo)
    if c_up.millihertz + c_dn.millihertz != 2 * b0.millihertz or c_up == b0:
        raise AmbiguousSignsError(
            "beat response to the offset perturbation is not linear "
            "(beat crossed zero or a mode hopped); retry with a smaller step"
        )
    sign_ceo = sign_beat if c_up < b0 else -sign_beat
    return sign_ceo, sign_beat


def determine_mode_number(
    coarse: ExactFrequency,
    coarse_uncertainty: ExactFrequency,
    comb: CombParams,
    beat: BeatObservation,
) -> ModeIndex:
    """Pick the unique mode number from a coarse (wavemeter-grade) frequency.

    Needs coarse_uncertainty < f_rep/2, otherwise several modes are
    consistent and the full candidate set is reported.  A coarse value
    exactly between two candidates is an error, never a silent choice.
    """
    if not beat.resolved:
        raise DomainError("beat signs are unresolved; call determine_signs first")
    if coarse_uncertainty.millihertz < 0:
        raise InputError("coarse uncertainty cannot be negative")
    offset_mhz = (
        beat.sign_ceo * comb.f_ceo.millihertz + beat.sign_beat * beat.f_beat.millihertz
    )
    rep = comb.f_rep.millihertz
    if 2 * coarse_uncertainty.millihertz >= rep:
        u = coarse_uncertainty.millihertz
        lo = -(-(coarse.millihertz - u - offset_mhz) // rep)  # ceil
        hi = (coarse.millihertz + u - offset_mhz) // rep
        candidates = list(range(lo, hi + 1))
        raise AmbiguousModeNumberError(
            f"coarse uncertainty {coarse_uncertainty} >= f_rep/2; "
            f"candidate mode numbers: {candidates}",
            candidates,
        )
    q, r = divmod(coarse.millihertz - offset_mhz, rep)
    if 2 * r == rep:
        raise AmbiguousModeNumberError(
            f"coarse value sits exactly between modes {q} and {q + 1}",
            [q, q + 1],
        )
    n = q if 2 * r < rep else q + 1
    if n < 0:
        raise DomainError(f"nearest mode number is negative ({n})")
    return n


def optical_ratio(f_a: ExactFrequency, f_b: ExactFrequency) -> Fraction:
    """Exact ratio f_a/f_b in lowest terms."""
    if f_b.millihertz == 0:
        raise DomainError("ratio denominator is zero")
    if f_b.millihertz < 0:
        raise DomainError("ratio denominator must be positive")
    return Fraction(f_a.millihertz, f_b.millihertz)


def ratio_decimal(ratio: Fraction, significant_digits: int = 20) -> str:
    """Correctly rounded decimal rendering of an exact ratio.

    Uses half-even rounding at ``significant_digits`` significant digits.
    """
    if significant_digits < 1:
        raise InputError("need at least one significant digit")
    import decimal

    with decimal.localcontext() as ctx:
        ctx.prec = significant_digits
        rendered = decimal.Decimal(ratio.numerator) / decimal.Decimal(ratio.denominator)
    return str(rendered)
