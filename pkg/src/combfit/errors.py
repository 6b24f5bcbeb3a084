"""Exception hierarchy shared across the package.

Two base classes matter for the command line front end: ``DomainError``
maps to exit code 1 (the inputs were well formed but the requested
computation is impossible or ill posed), ``InputError`` maps to exit
code 2 (malformed files, flags or schemas).
"""


class CombfitError(Exception):
    pass


class DomainError(CombfitError):
    """Computation cannot proceed on otherwise well-formed inputs."""


class InputError(CombfitError):
    """Malformed input data, file or configuration."""


class AmbiguousSignsError(DomainError):
    """Beat-sign determination found zero or several consistent sign pairs."""


class AmbiguousModeNumberError(DomainError):
    """Mode-number determination has no unique answer.

    ``candidates`` holds the competing mode numbers.
    """

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)


class SingularSystemError(DomainError):
    """The two-parameter drift fit is degenerate (all sensitivities equal)."""


class OctaveRequiredError(DomainError):
    """The comb spectrum does not span an octave."""


class SpectralLeakageError(DomainError):
    """A field passed for spectral analysis does not span whole periods."""


class FitConvergenceError(DomainError):
    """An iterative fit did not converge within its iteration budget."""


class PhaseCoverageError(DomainError):
    """Gravity-coupling samples do not span enough of the potential cycle."""


class AssociationError(DomainError):
    """Measured calibration lines could not be matched to reference modes."""


class NonMonotonicSolutionError(DomainError):
    """A fitted wavelength solution is not monotonic over its pixel range."""
