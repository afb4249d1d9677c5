"""Exception types shared across the package."""


class NonPhysicalState(ValueError):
    """Bloch parameters that do not correspond to a positive unit-trace matrix."""


class SingularIntegrand(ValueError):
    """The dispersion vanishes somewhere on the integration grid.

    Raised instead of silently integrating through a gap-closing point.
    ``phi`` holds the offending wavevector; sweeps that re-raise after a
    nudge attach the offending sweep coordinate as ``x``.
    """

    def __init__(self, message, phi=None, x=None):
        super().__init__(message)
        self.phi = phi
        self.x = x


class GapClosed(ValueError):
    """The winding loop passes through (or unresolvably close to) the origin."""


class ConvergenceFailure(RuntimeError):
    """A refinement stage ended worse than its seed. Signals a pathological
    objective; never expected for physical states."""


class NoRoots(ValueError):
    """The characteristic equation is degenerate in the free parameter."""
