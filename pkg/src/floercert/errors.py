from __future__ import annotations


class FloerError(Exception):
    """Error carrying a stable machine-readable code (e.g. ``NOT_MULTIRECT``)."""

    def __init__(self, code: str, message: str = ""):
        self.code = code
        self.message = message
        super().__init__("%s: %s" % (code, message) if message else code)
