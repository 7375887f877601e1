class FeetiersError(Exception):
    """Base class of every error raised by the package."""


class ParameterError(FeetiersError, ValueError):
    """An input violates a documented invariant.

    Attributes:
        field (str): name of the offending field.
        invariant (str): the invariant that does not hold.
    """

    def __init__(self, field: str, invariant: str, value: object = None) -> None:
        self.field = field
        self.invariant = invariant
        self.value = value
        detail = f" (got {value!r})" if value is not None else ""
        super().__init__(f"Invalid {field}: must satisfy {invariant}{detail}")


class InfeasibleModelError(FeetiersError):
    """The model assumptions fail for the given parameters."""

    def __init__(self, field: str, invariant: str, value: object = None) -> None:
        self.field = field
        self.invariant = invariant
        self.value = value
        detail = f" (got {value!r})" if value is not None else ""
        super().__init__(f"Infeasible model at {field}: assumption {invariant} violated{detail}")


class InsufficientDepthError(FeetiersError, ValueError):
    def __init__(self, requested: float, available: float) -> None:
        self.requested = requested
        self.available = available
        super().__init__(
            f"Invalid token_qty: must satisfy token_qty <= posted depth (requested {requested}, available {available})"
        )


class TickExhaustedError(InsufficientDepthError):
    """Raised when a within-tick fill reaches the depth L/sqrt(p_min)."""


class BracketError(FeetiersError, ValueError):
    def __init__(self, lower: float, upper: float, f_lower: float, f_upper: float) -> None:
        self.lower = lower
        self.upper = upper
        super().__init__(
            f"Invalid bracket [{lower}, {upper}]: must satisfy f(lower)*f(upper) <= 0 "
            f"(got f(lower)={f_lower}, f(upper)={f_upper})"
        )
