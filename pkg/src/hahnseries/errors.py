"""Exception hierarchy shared by every module."""


class HahnError(Exception):
    """Base class for all library errors."""


class DomainError(HahnError, ValueError):
    """An operation was applied outside its mathematical domain."""


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class SchemaDomainError(DomainError):
    """A fundamental monomial lies outside the schema's domain."""


class NoAsymptoticIntegral(DomainError):
    """The monomial is asymptotic to the g.l.b. of the theta family."""


class SearchExhausted(DomainError):
    """A bounded search over the chain found nothing within the probe depth."""


class WindowError(HahnError, ValueError):
    """A window of fundamentals is empty, unsorted, repeated or off-chain."""


class ParseError(HahnError, ValueError):
    def __init__(self, message: str, text: str = "", position: int = -1, expected: str = ""):
        self.text = text
        self.position = position
        self.expected = expected
        detail = message
        if position >= 0:
            detail = f"{message} at position {position}"
            if expected:
                detail += f" (expected {expected})"
        super().__init__(detail)


class ConfigError(HahnError, ValueError):
    pass
