"""Exception types shared across the package.

Two families matter to callers: InvalidInput covers data that cannot be
processed (bad parametrisations, impossible gradings), CertificationFailure
covers numerical procedures that ran but could not establish their claim.
The CLI maps them to exit codes 2 and 3 respectively.
"""


class InvalidInput(Exception):
    """Input data violates a precondition of the requested operation."""


class CertificationFailure(Exception):
    """A numerical certification procedure could not establish its claim."""


class AmbiguousMatch(InvalidInput):
    """Strand endpoint matching at t=2pi found no unique partner."""


class DegenerateCrossing(InvalidInput):
    """Strand x-coordinates coincide too closely at a refined crossing."""


class MixedResidues(InvalidInput):
    """Parametrisation frequencies occupy more than one residue class."""


class UnequalComponents(InvalidInput):
    """Link components carry different strand counts."""


class OddExponent(InvalidInput):
    """Homogenization produced an odd or non-integer radical exponent."""


class NegativeExponent(InvalidInput):
    """Homogenization produced a negative radical exponent; k is too small."""


class NoConvergence(CertificationFailure):
    """Root iteration missed the residual criterion within the sweep cap."""


class NoSignChange(CertificationFailure):
    """Bisection bracket endpoints do not straddle a sign change."""


class ZeroAtCritical(CertificationFailure):
    """The zero set meets a critical point of g(., t)."""


class Exhausted(CertificationFailure):
    """Coefficient-scale tuning ran out of halvings without passing."""


class TooCloseToZeroSet(CertificationFailure):
    """Sampling could not escape a neighbourhood of the zero set."""
