"""Exception hierarchy for the helicity-CCR toolkit."""


class CcrError(Exception):
    """Base class for all toolkit errors."""


class DomainError(CcrError):
    """Kinematic input outside the valid domain (e.g. theta at a forward pole)."""


class NormalizationError(CcrError):
    """State vector is not normalizable or fails the unit-norm check."""


class DegenerateOutcomeError(CcrError):
    """All outgoing amplitudes cancel; the filtered final state is undefined."""


class NotTwoTermMixError(CcrError):
    """Final state is not a two-term combination in the Bell basis."""


class PreconditionError(CcrError):
    """Operation precondition violated (e.g. input not maximally entangled)."""


class ZeroInitialEntanglementError(CcrError):
    """Relative entanglement change is undefined for a separable input."""


class SingularDenominatorError(CcrError):
    """Closed-form denominator vanished."""


class QuadratureError(CcrError):
    """Adaptive quadrature failed to reach the requested tolerance."""
