"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Input violates a documented precondition (bad letter, empty word, ...)."""


class UnsupportedInputError(ValueError):
    """Structurally valid input outside an operation's supported domain."""


class NoSuchPathError(RuntimeError):
    """Tracing a word failed at a missing edge of a non-cover graph."""

    def __init__(self, vertex: int, letter: int, position: int):
        self.vertex = vertex
        self.letter = letter
        self.position = position
        super().__init__(
            f"no edge labeled {letter} out of vertex {vertex} (letter position {position})"
        )


class ResourceGuardError(RuntimeError):
    """An enumeration exceeded a configured cap; results would be incomplete."""
