"""Exception types shared across the package."""


class NoSuchState(ValueError):
    """Requested bound state does not exist for these parameters."""


class NoBoundState(ValueError):
    """The potential supports no bound state in the admissible energy window."""


class NoConvergence(RuntimeError):
    """Shooting defect does not change sign in the supplied energy bracket."""


class DivergentMoment(ArithmeticError):
    """The requested momentum moment diverges; a physical outcome, not a bug."""


class QuadratureBudgetExceeded(RuntimeError):
    """Oscillatory quadrature could not reach tolerance within its panel budget."""


class NonPowerLaw(ValueError):
    """Sampled tail is not consistent with a single power law (r^2 too low)."""


class InsufficientDerivativeDepth(ValueError):
    """Derivative table is too shallow for the requested expansion order."""


class InconsistentJumps(RuntimeError):
    """Jump from potential data disagrees with the derivative table (solver bug)."""


class UnsupportedCase(NotImplementedError):
    """Both psi and psi' vanish at a discontinuity; no expansion rule applies."""
