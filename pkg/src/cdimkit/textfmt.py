"""Parsing and printing of scalars and sums of monomials.

The grammar is deliberately small: a polynomial is a signed sum of terms,
each term a ``*``-separated product of rational constants and powers
``var^k``.  No parentheses.  Scalars are integers, decimals or ``p/q``.
"""

import re
from fractions import Fraction

from .errors import ParseError

_NUMBER = re.compile(r"\d+(?:\.\d*)?(?:/\d+)?|\.\d+")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_INT = re.compile(r"-?\d+")


def parse_scalar(text):
    """Parse ``"3"``, ``"-1/2"`` or ``"0.25"`` into a Fraction."""
    s = text.strip()
    m = re.fullmatch(r"[+-]?(?:\d+(?:\.\d*)?(?:/\d+)?|\.\d+)", s)
    if not m:
        raise ParseError("malformed scalar", text, 0)
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ParseError("zero denominator", text, s.index("/") + 1) from None


def format_scalar(c):
    return str(Fraction(c))


def parse_terms(text, variables, allow_negative=False):
    """Return a list of ``(Fraction, exponent_tuple)`` pairs.

    ``variables`` is the ordered tuple of admissible names.  Repeated
    monomials are summed; zero results are dropped by the caller.
    """
    index = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    pos = 0
    L = len(text)
    out = []

    def skip():
        nonlocal pos
        while pos < L and text[pos].isspace():
            pos += 1

    skip()
    if pos == L:
        raise ParseError("empty expression", text, pos)
    first = True
    while True:
        skip()
        sign = 1
        if pos < L and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
            skip()
        elif not first:
            raise ParseError("expected '+' or '-'", text, pos)
        first = False
        coef = Fraction(sign)
        exps = [0] * n
        factors = 0
        while True:
            skip()
            m = _NUMBER.match(text, pos)
            if m:
                try:
                    coef *= Fraction(m.group())
                except ZeroDivisionError:
                    raise ParseError("zero denominator", text, pos) from None
                pos = m.end()
            else:
                m = _NAME.match(text, pos)
                if not m:
                    raise ParseError("expected number or variable", text, pos)
                name = m.group()
                if name not in index:
                    raise ParseError(f"unknown variable {name!r}", text, pos)
                pos = m.end()
                skip()
                k = 1
                if pos < L and text[pos] == "^":
                    pos += 1
                    skip()
                    mi = _INT.match(text, pos)
                    if not mi:
                        raise ParseError("expected integer exponent", text, pos)
                    k = int(mi.group())
                    if k < 0 and not allow_negative:
                        raise ParseError("negative exponent", text, pos)
                    pos = mi.end()
                exps[index[name]] += k
            factors += 1
            skip()
            if pos < L and text[pos] == "*":
                pos += 1
                continue
            break
        if factors == 0:
            raise ParseError("empty term", text, pos)
        out.append((coef, tuple(exps)))
        skip()
        if pos == L:
            return out
        if text[pos] not in "+-":
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)


def format_terms(terms, variables):
    """Print ``(coef, exponent)`` pairs in the given order."""
    if not terms:
        return "0"
    parts = []
    for coef, exps in terms:
        coef = Fraction(coef)
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(variables, exps) if k != 0
        )
        neg = coef < 0
        a = -coef if neg else coef
        if not mono:
            body = format_scalar(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_scalar(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)
