"""Tiny whitespace-insensitive scanner shared by the text grammars."""

from __future__ import annotations

import re

from .errors import ParseError

_INT = re.compile(r"\d+")


class Scanner:
    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.accept(token):
            found = self.peek() or "end of input"
            self.fail(f"expected {token!r}, found {found!r}")

    def integer(self) -> int:
        self.skip_ws()
        m = _INT.match(self.text, self.pos)
        if m is None:
            found = self.peek() or "end of input"
            self.fail(f"expected integer, found {found!r}")
        self.pos = m.end()
        return int(m.group())

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def expect_end(self) -> None:
        if not self.at_end():
            self.fail(f"unexpected trailing input {self.text[self.pos:]!r}")

    def fail(self, message: str):
        offset = len(self.text[: self.pos].encode("utf-8"))
        raise ParseError(message, offset, self.text)
