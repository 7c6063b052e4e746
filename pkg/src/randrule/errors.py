"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when caller-supplied data violates a documented precondition."""


class UnsupportedEvidenceError(InputError):
    """Raised when evidence falls outside the support of every class density.

    The posterior is undefined at such points; callers get an explicit error
    instead of NaN.
    """
