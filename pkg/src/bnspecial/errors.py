"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """A configured cap (cycles, probes, oracle size) would be exceeded."""


class FalsificationError(AssertionError):
    """A check that the mathematics guarantees came out false.

    ``counterexample`` carries whatever is needed to reproduce the failure.
    """

    def __init__(self, message: str, counterexample: dict | None = None):
        super().__init__(message)
        self.counterexample = counterexample or {}
