class ParseError(ValueError):
    """Malformed input text. ``lineno`` is 1-based, or None when not tied to a line."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
