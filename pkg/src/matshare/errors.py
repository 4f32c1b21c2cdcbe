"""Exception types shared across the package."""


class MatShareError(Exception):
    """Base class for protocol-level failures."""


class SingularMatrix(MatShareError):
    """A matrix that had to be inverted has determinant zero.

    Signals a degenerate instance or forged/corrupted public data.
    """


class GenerationFailure(MatShareError):
    """Rejection sampling exhausted its retry budget."""


class IntegrityFailure(MatShareError):
    """A recovered value violates an exactness guarantee (e.g. a
    reconstruction produced non-integer entries), signalling dishonest
    reveals."""


class GuardrailExceeded(MatShareError):
    """An exhaustive-search space is larger than the configured desk-scale
    limit and no override was given."""

    def __init__(self, space: int, limit: int):
        self.space = space
        self.limit = limit
        super().__init__(f"search space has {space} sequences, exceeding the desk-scale limit {limit}")
