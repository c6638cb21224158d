"""Exception types shared across the package."""


class BinomsumsError(Exception):
    """Base class for all package errors."""


class DenominatorNotInvertible(BinomsumsError):
    """A rational congruence was requested at a modulus that does not invert
    the reduced denominator; the claim is ill-posed at that index."""

    def __init__(self, numerator: int, denominator: int, modulus: int):
        self.numerator = numerator
        self.denominator = denominator
        self.modulus = modulus
        super().__init__(
            f"denominator {denominator} shares a factor with modulus {modulus}"
        )


class IndexOutOfDomain(BinomsumsError):
    """A sequence was evaluated below its first defined index."""


class WindowTooSmall(BinomsumsError):
    """A fitting window supplies fewer rows than the ansatz needs."""

    def __init__(self, supplied: int, required: int):
        self.supplied = supplied
        self.required = required
        super().__init__(f"window supplies {supplied} rows, {required} required")


class UnknownIdError(BinomsumsError):
    """Unknown sequence, claim, or suite identifier."""


class InternalInconsistencyError(BinomsumsError):
    """Two internal routes that must agree did not (e.g. the symbolic and the
    numeric certificate check); indicates a transcription or engine bug."""
