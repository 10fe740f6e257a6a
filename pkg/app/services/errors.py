"""Domain errors raised by the code construction services."""


class CodeParameterError(ValueError):
    """Parameters violate a construction's contract."""


class EnumerationCapExceeded(ValueError):
    """A code is too large to enumerate under the configured cap."""

    def __init__(self, required_log2: float, cap_log2: int):
        self.required_log2 = required_log2
        self.cap_log2 = cap_log2
        super().__init__(
            f"code has 2^{required_log2:g} codewords, above the enumeration cap 2^{cap_log2}; "
            f"raise the cap to at least {int(-(-required_log2 // 1))} or use sampling"
        )


class PayloadLengthError(ValueError):
    """A payload does not match the code's bit capacity."""

    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"payload must have exactly {expected} bits, got {got}")


class NotACodewordError(ValueError):
    """A word does not belong to the code it was checked against."""


class ConstructionError(ValueError):
    """A sequence construction's hypothesis does not hold."""


class MalformedLineError(ValueError):
    """A line of a word stream could not be parsed."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")
