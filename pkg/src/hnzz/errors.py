"""Exception types shared across the package.

The CLI maps these onto stable exit codes, so new failure modes should
reuse one of the classes below rather than raising bare ValueErrors.
"""


class ParseError(ValueError):
    """Input file is not valid JSON or is missing/mistyping required keys."""


class ValidationError(ValueError):
    """A value violates a structural invariant (shape, field, range)."""


class ShapeError(ValueError):
    """The quiver (or window) has the wrong shape for the requested operation."""


class GuardError(RuntimeError):
    """An enumeration guard would be exceeded; refuse instead of running forever."""


class InternalCheckError(RuntimeError):
    """A mathematically impossible state was reached; indicates a bug."""
