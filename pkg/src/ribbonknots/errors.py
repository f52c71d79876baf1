class RibbonError(ValueError):
    """Base class for geometric failures raised by this package."""


class DegenerateFoldError(RibbonError):
    """An edge doubles back on its predecessor, or a fold line is unbounded."""


class NoFoldLineError(RibbonError):
    """Raised when asking for the fold line of a straight (angle pi) vertex."""


class WidthError(RibbonError):
    """The width is too large for the local geometry (a strip turns inside out)."""


class AllowedSetError(RibbonError):
    """The set of allowed widths sampled on a grid is not an interval."""


class InfeasibleError(RibbonError):
    """No feasible configuration was found by the optimizer."""
