class InputError(ValueError):
    """Malformed or out-of-range input."""


class OracleScaleError(RuntimeError):
    """Instance exceeds the brute-force budget."""


class SizeError(RuntimeError):
    """An intermediate object outgrew its configured cap."""


class BudgetExhausted(RuntimeError):
    """The splitter strategy ran out of rounds on a nonempty sub-instance."""

    def __init__(self, message, bag=None):
        super().__init__(message)
        self.bag = bag
