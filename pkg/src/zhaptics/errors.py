"""Exception types shared across the engine."""


class SceneError(Exception):
    """Base class for scene and engine errors."""


class CapacityExceeded(SceneError):
    """A registry is already holding its maximum number of live instances."""


class InvalidParam(SceneError):
    """A parameter does not belong to the kind's schema or violates its range."""


class UnknownId(SceneError):
    """No live instance with the given id."""


class DegenerateRange(SceneError):
    """A linear ramp with zero spatial size but a non-zero force span: the
    gradient is undefined, so force evaluation refuses it."""

    def __init__(self, instance_id: int, t: float | None = None):
        self.instance_id = instance_id
        self.t = t
        where = f" at t={t:.6g}s" if t is not None else ""
        super().__init__(
            f"linear_ramp instance {instance_id} has size=0 with non-zero "
            f"force_range{where}: gradient undefined"
        )
