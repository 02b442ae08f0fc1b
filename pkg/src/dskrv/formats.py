"""Text and JSON serialization for polynomials and basis certificates.

Polynomial text format, one term per line::

    alphabet: xy
    # comment
    1/1 xxy
    -2/1 xyx
    1/3 1        <- the word "1" is the empty word

JSON form: ``{"alphabet": "xy", "terms": [["1", "1", "xxy"], ...]}``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .ncpoly import ALPHABETS, Poly

__all__ = [
    "Certificate",
    "ParseError",
    "format_certificate",
    "format_poly",
    "parse_certificate",
    "parse_poly",
    "poly_from_json",
    "poly_to_json",
]

_TERM = re.compile(r"^([+-]?\d+)(?:/(\d+))?\s+(\S+)$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"{message} at line {line}" if line is not None else message)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_terms(lines: Iterable[tuple[int, str]], alphabet: str | None) -> Poly:
    terms: dict[str, Fraction] = {}
    for lineno, raw in lines:
        line = _strip(raw)
        if not line:
            continue
        if line.lower().startswith("alphabet:"):
            value = line.split(":", 1)[1].strip()
            if value not in ALPHABETS:
                raise ParseError(f"unknown alphabet {value!r}", lineno)
            if terms and value != alphabet:
                raise ParseError("alphabet header must precede the terms", lineno)
            alphabet = value
            continue
        m = _TERM.match(line)
        if not m:
            raise ParseError(f"malformed term {line!r}", lineno)
        num, den, word = m.groups()
        if den is not None and int(den) == 0:
            raise ParseError("zero denominator", lineno)
        c = Fraction(int(num), int(den) if den else 1)
        if word == "1":
            word = ""
        letters = alphabet or "xy"
        if not set(word) <= set(letters):
            raise ParseError(f"word {word!r} is not over alphabet {letters!r}", lineno)
        terms[word] = terms.get(word, 0) + c
    return Poly(terms, alphabet or "xy")


def parse_poly(text: str) -> Poly:
    """Parse the one-term-per-line text format (alphabet defaults to ``xy``)."""
    return _parse_terms(enumerate(text.splitlines(), start=1), None)


def format_poly(p: Poly, header: bool = True) -> str:
    lines = [f"alphabet: {p.alphabet}"] if header else []
    for w, c in p.sorted_items():
        lines.append(f"{c.numerator}/{c.denominator} {w or '1'}")
    return "\n".join(lines) + "\n"


def poly_to_json(p: Poly) -> dict:
    return {
        "alphabet": p.alphabet,
        "terms": [[str(c.numerator), str(c.denominator), w or "1"] for w, c in p.sorted_items()],
    }


def poly_from_json(data: dict | str) -> Poly:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    alphabet = data.get("alphabet", "xy")
    if alphabet not in ALPHABETS:
        raise ParseError(f"unknown alphabet {alphabet!r}")
    terms: dict[str, Fraction] = {}
    for i, entry in enumerate(data.get("terms", [])):
        try:
            num, den, word = entry
            num, den = int(num), int(den)
        except (TypeError, ValueError):
            raise ParseError(f"malformed term #{i}: {entry!r}") from None
        if den == 0:
            raise ParseError(f"zero denominator in term #{i}")
        word = "" if word == "1" else word
        if not set(word) <= set(alphabet):
            raise ParseError(f"word {word!r} is not over alphabet {alphabet!r}")
        terms[word] = terms.get(word, 0) + Fraction(num, den)
    return Poly(terms, alphabet)


# -- basis certificates ------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    weight: int
    normalization: str
    elements: tuple[Poly, ...]

    @property
    def dimension(self) -> int:
        return len(self.elements)


def format_certificate(cert: Certificate) -> str:
    out = [
        "# double shuffle basis certificate",
        f"weight: {cert.weight}",
        f"dimension: {cert.dimension}",
        f"normalization: {cert.normalization}",
    ]
    for i, p in enumerate(cert.elements, start=1):
        out.append(f"element: {i}")
        out.append(format_poly(p).rstrip("\n"))
    return "\n".join(out) + "\n"


def parse_certificate(text: str) -> Certificate:
    header: dict[str, tuple[int, str]] = {}
    blocks: list[list[tuple[int, str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        key = line.split(":", 1)[0].strip().lower() if ":" in line else None
        if key == "element":
            expected = len(blocks) + 1
            if line.split(":", 1)[1].strip() != str(expected):
                raise ParseError(f"expected element {expected}", lineno)
            blocks.append([])
        elif blocks:
            blocks[-1].append((lineno, raw))
        elif key in ("weight", "dimension", "normalization"):
            header[key] = (lineno, line.split(":", 1)[1].strip())
        elif line:
            raise ParseError(f"unexpected header line {line!r}", lineno)
    for key in ("weight", "dimension"):
        if key not in header:
            raise ParseError(f"missing {key!r} header")
    ints = {}
    for key in ("weight", "dimension"):
        lineno, value = header[key]
        try:
            ints[key] = int(value)
        except ValueError:
            raise ParseError(f"{key} must be an integer", lineno) from None
    elements = tuple(_parse_terms(block, None) for block in blocks)
    if len(elements) != ints["dimension"]:
        raise ParseError(f"dimension header says {ints['dimension']} but {len(elements)} elements follow")
    normalization = header.get("normalization", (0, ""))[1]
    return Certificate(ints["weight"], normalization, elements)
