"""Exception hierarchy shared by all modules."""


class MotionError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameterError(MotionError, ValueError):
    """A numeric parameter violates its documented domain."""


class DegenerateParameterError(InvalidParameterError):
    """Stroke timing leads to a non-positive log spread."""


class UnreachableTargetError(MotionError):
    pass


class NoConvergenceError(MotionError):
    pass


class JointLimitError(MotionError):
    pass


class PathSolveError(MotionError):
    """IK failed on one sample of a path; ``index`` names the sample."""

    def __init__(self, index, cause):
        self.index = index
        self.cause = cause
        super().__init__(f"sample {index}: {cause}")


class SimulationFault(MotionError):
    def __init__(self, step, message):
        self.step = step
        super().__init__(f"step {step}: {message}")


class UndefinedSnrError(MotionError):
    """Reference signal has zero power."""
