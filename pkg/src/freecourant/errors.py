class TruncationOverflow(ArithmeticError):
    """A computed element has a term outside the (W_max, P_max) truncation."""

    def __init__(self, message, label=None):
        super().__init__(message)
        self.label = label


class BoundsMismatch(ValueError):
    pass


class SaturationFailure(RuntimeError):
    def __init__(self, message, history):
        super().__init__(f"{message}; rank history {history}")
        self.history = list(history)


class SymmetryViolation(ValueError):
    def __init__(self, message, reports=()):
        super().__init__(message)
        self.reports = list(reports)


class AnchorIncompatible(ValueError):
    pass


class NonVanishingOnIdeal(ValueError):
    def __init__(self, message, witness=None, image=None):
        super().__init__(message)
        self.witness = witness
        self.image = image


class NonVanishingOnInv(ValueError):
    def __init__(self, message, witness=None, image=None):
        super().__init__(message)
        self.witness = witness
        self.image = image
