"""Exception types shared across the package."""


class FreeautError(Exception):
    """Base class for all errors raised by this package."""


class ContextError(FreeautError):
    """Operands belong to different rings/algebras, or arities disagree."""


class DomainError(FreeautError):
    """An argument is outside the operation's domain (e.g. leading term of 0)."""


class NotXLinearError(FreeautError):
    """An endomorphism image is not homogeneous of degree 1 in the x-variables.

    Carries the 1-based generator index and the offending term (a word, or
    None when the problem is a pure coefficient part).
    """

    def __init__(self, generator: int, word=None, message: str | None = None):
        self.generator = generator
        self.word = word
        if message is None:
            message = f"image of generator {generator} is not x-linear"
            if word is not None:
                message += f" (offending term: {word})"
        super().__init__(message)


class NotInvertibleError(FreeautError):
    """A matrix or endomorphism required to be invertible is not."""


class ParseError(FreeautError):
    """Syntax error in an expression or endomorphism file."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        if line and col:
            message = f"{message} (line {line}, column {col})"
        elif line:
            message = f"{message} (line {line})"
        super().__init__(message)
