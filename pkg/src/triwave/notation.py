"""
Text form of wavelet-group elements.

Grammar (whitespace-insensitive)::

    element := "(" "[" q "u" sep q "v" [glide] "," name "]" "," int ")"
    glide   := "+" "1/2" "z"
    sep     := "+" | "-"

``q`` is a triadic-half literal such as ``-5``, ``1/2``, ``2/3^2`` or
``1/(2*3^3)``. The printer always emits both coordinate terms and never the
glide term, so printed text parses back to an equal element.
"""

from __future__ import annotations

import re

from .catalog import GroupData, PointElementNotInD
from .group_core import WaveletElement, is_valid
from .scalar import HALF, LatticeVector, TriadicHalf, TriadicParseError


class ParseError(ValueError):
    """Malformed element text; ``position`` is the offending offset."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class InvalidForGroup(ValueError):
    """Well-formed text naming an element outside the given group."""

    pass


_LITERAL = re.compile(
    r"[+-]?\s*\d+(?:\s*/\s*(?:\(\s*2\s*\*\s*3\s*(?:\^\s*\d+\s*)?\)"
    r"|3\s*\^\s*\d+|\d+))?"
)
_NAME = re.compile(r"[A-Za-z0-9_]+")
_INT = re.compile(r"[+-]?\s*\d+")


class _Cursor:
    """Recursive-descent reader over the element text."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {char!r}, found {found!r}", self.pos)
        self.pos += 1

    def accept(self, char: str) -> bool:
        if self.peek() == char:
            self.pos += 1
            return True
        return False

    def match(self, pattern: re.Pattern, what: str) -> tuple[str, int]:
        self.skip()
        found = pattern.match(self.text, self.pos)
        if found is None:
            raise ParseError(f"expected {what}", self.pos)
        start = self.pos
        self.pos = found.end()
        return found.group(0), start

    def literal(self) -> TriadicHalf:
        text, start = self.match(_LITERAL, "a triadic literal")
        try:
            return TriadicHalf.parse(text)
        except TriadicParseError as error:
            raise ParseError(str(error), start) from error

    def sign(self) -> int:
        if self.accept("+"):
            return 1
        if self.accept("-"):
            return -1
        raise ParseError("expected '+' or '-'", self.pos)

    def end(self) -> None:
        if self.peek():
            raise ParseError("unexpected trailing text", self.pos)


def parse_element_parts(
    text: str,
) -> tuple[TriadicHalf, TriadicHalf, bool, str, int]:
    """
    Parse element text without a group.

    Returns:
        tuple: ``(a, b, has_glide, point_name, ell)``.

    Raises:
        ParseError: If the text does not follow the grammar.
    """
    cur = _Cursor(text)
    cur.expect("(")
    cur.expect("[")
    a = cur.literal()
    cur.expect("u")
    sign = cur.sign()
    b = cur.literal() * sign
    cur.expect("v")
    has_glide = False
    if cur.peek() == "+":
        cur.pos += 1
        glide_at = cur.pos
        if cur.literal() != HALF:
            raise ParseError("glide term must be 1/2 z", glide_at)
        cur.expect("z")
        has_glide = True
    elif cur.peek() == "-":
        raise ParseError("glide term must be added", cur.pos)
    cur.expect(",")
    name, _ = cur.match(_NAME, "a point-group element name")
    cur.expect("]")
    cur.expect(",")
    ell_text, _ = cur.match(_INT, "an integer dilation exponent")
    cur.expect(")")
    cur.end()
    return a, b, has_glide, name, int(ell_text.replace(" ", ""))


def parse_element(gd: GroupData, text: str) -> WaveletElement:
    """
    Parse text into an element of the wavelet group of ``gd``.

    Raises:
        ParseError: If the text does not follow the grammar.
        InvalidForGroup: If the point element, glide term or translation
            part does not fit the group.
    """
    a, b, has_glide, name, ell = parse_element_parts(text)
    x = LatticeVector(a, b)
    if has_glide:
        if gd.z is None:
            raise InvalidForGroup(f"{gd.name} has no glide vector")
        x = x + gd.z.halve()
    try:
        L = gd.element(name)
    except PointElementNotInD as error:
        raise InvalidForGroup(str(error)) from error
    element = WaveletElement(x, L, ell)
    if not is_valid(gd, element):
        raise InvalidForGroup(
            f"{format_element(element)} is not in the wavelet group of "
            f"{gd.name}"
        )
    return element


def format_element(g: WaveletElement) -> str:
    """Canonical text, e.g. ``([1/3 u + 1/2 v, s], -2)``."""
    b = g.x.b
    sep, coeff = ("-", -b) if b.num < 0 else ("+", b)
    return f"([{g.x.a} u {sep} {coeff} v, {g.L.name}], {g.ell})"
