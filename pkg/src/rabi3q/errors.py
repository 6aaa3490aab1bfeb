"""Exception types raised across the package."""


class Rabi3QError(Exception):
    """Base class for all package errors."""


class TailTooHeavy(Rabi3QError):
    """Fock cutoff too small for the requested coherent displacement."""


class NoConvergence(Rabi3QError):
    """Eigensolver failed to meet its residual target."""


class CutoffCeiling(Rabi3QError):
    """Cutoff escalation hit the hard ceiling without converging."""


class DegenerateB(Rabi3QError):
    """Renormalized tunnelling B = exp(-chi^2/2) * w_a underflowed to zero."""


class NoRootInBracket(Rabi3QError):
    """C1(chi) has no sign change on the search interval."""


class NotXForm(Rabi3QError):
    """Two-qubit matrix is outside the class where the X-state formula holds."""


class DimensionMismatch(Rabi3QError):
    """States live on different truncated bases."""


class NoDeathFound(Rabi3QError):
    """Entanglement never rises and then vanishes on the scanned interval."""


class EmptySeries(Rabi3QError):
    """Nothing to plot."""


class ConfigError(Rabi3QError):
    """Invalid sweep / CLI configuration."""
