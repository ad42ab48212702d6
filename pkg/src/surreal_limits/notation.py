"""ASCII notation for ordinals and sign expansions.

Ordinals::

    ord   := term ('+' term)*
    term  := INT | 'w' ['^' oexp] ['*' INT]
    oexp  := INT | 'w' | '(' ord ')'

Sign expansions::

    expr  := item*
    item  := atom ['^' count]
    atom  := '+' | '-' | '(' expr ')'
    count := INT | 'w' ['^' oexp] ['*' INT] | '(' ord ')'

``(word)^w`` with a mixed word is a periodic tail and must come last.  The
whole text may instead be a rational literal (``3``, ``-5/8``) or a named
constant (``eps``, ``omega``...).  ``ω`` and ``−`` are accepted as aliases.
Whitespace is ignored between tokens.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ordinal import OMEGA, ZERO, Ordinal, add_ord, mul_fin_ord, omega_power
from .surreal import CONSTANTS, MINUS, PLUS, SignExpansion, from_rational

__all__ = [
    "NotationError",
    "parse_ordinal",
    "format_ordinal",
    "parse_surreal",
    "format_surreal",
    "surreal_to_json",
]

_RATIONAL = re.compile(r"^\s*-?\s*\d+\s*(/\s*\d+\s*)?$")


class NotationError(ValueError):
    """Syntax error with the offending character offset."""

    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


class _Parser:
    def __init__(self, text: str):
        self.text = text.replace("ω", "w").replace("−", "-").replace("·", "*")
        self.pos = 0

    def error(self, message):
        raise NotationError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def done(self):
        if self.peek() is not None:
            self.error("unexpected trailing input")

    # ordinals

    def ordinal(self) -> Ordinal:
        total = self.ord_term()
        while self.peek() == "+":
            self.pos += 1
            total = add_ord(total, self.ord_term())
        return total

    def ord_term(self) -> Ordinal:
        ch = self.peek()
        if ch is not None and ch.isdigit():
            return Ordinal.finite(self.integer())
        if ch != "w":
            self.error("expected an ordinal term")
        self.pos += 1
        exp = Ordinal.finite(1)
        if self.peek() == "^":
            self.pos += 1
            exp = self.ord_exponent()
        coeff = 1
        if self.peek() == "*":
            self.pos += 1
            coeff = self.integer()
        return omega_power(exp, coeff)

    def ord_exponent(self) -> Ordinal:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            e = self.ordinal()
            self.take(")")
            return e
        if ch == "w":
            self.pos += 1
            return OMEGA
        return Ordinal.finite(self.integer())

    def count(self) -> Ordinal:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            o = self.ordinal()
            self.take(")")
            return o
        return self.ord_term()

    # sign expansions: a group is (runs, tail)

    def expr(self, top: bool):
        runs: list = []
        tail = None
        while True:
            ch = self.peek()
            if ch is None or (ch == ")" and not top):
                return runs, tail
            start = self.pos
            if tail is not None:
                self.error("a periodic tail must come last")
            if ch in "+-":
                self.pos += 1
                group = ([(PLUS if ch == "+" else MINUS, ZERO + 1)], None)
            elif ch == "(":
                self.pos += 1
                group = self.expr(top=False)
                self.take(")")
            else:
                self.error(f"unexpected character {ch!r}")
            if self.peek() == "^":
                self.pos += 1
                group = self.repeat(group, self.count(), start)
            runs.extend(group[0])
            tail = group[1]

    def repeat(self, group, times: Ordinal, start: int):
        runs, tail = group
        if tail is not None:
            if times == 1:
                return group
            self.pos = start
            self.error("cannot repeat a group that ends in a periodic tail")
        signs = {s for s, _ in runs}
        if len(signs) <= 1:
            length = ZERO
            for _, n in runs:
                length = add_ord(length, n)
            if not signs or not times:
                return [], None
            if length.is_finite:
                return [(runs[0][0], mul_fin_ord(int(length), times))], None
            if times.is_finite:
                return [(runs[0][0], _repeat_add(length, int(times)))], None
            if len(length.terms) == 1:
                return [(runs[0][0], _monomial_times(length, times))], None
            self.pos = start
            self.error("transfinite repetition of this run length is not supported")
        if times.is_finite:
            return runs * int(times), None
        if times == OMEGA and all(n.is_finite for _, n in runs):
            word = [s for s, n in runs for _ in range(int(n))]
            return [], word
        self.pos = start
        self.error("a mixed word can only be repeated a finite number of times or w times")


def _repeat_add(a: Ordinal, k: int) -> Ordinal:
    total = ZERO
    for _ in range(k):
        total = add_ord(total, a)
    return total


def _monomial_times(a: Ordinal, r: Ordinal) -> Ordinal:
    """``(w^e * c) * r``: infinite terms of ``r`` shift exponents, the finite
    tail scales the coefficient."""
    (e, c), = a.terms
    total = ZERO
    for b, d in r.terms:
        if b.terms:
            total = add_ord(total, omega_power(add_ord(e, b), d))
        else:
            total = add_ord(total, omega_power(e, c * d))
    return total


def parse_ordinal(text: str) -> Ordinal:
    p = _Parser(text)
    o = p.ordinal()
    p.done()
    return o


def format_ordinal(a: Ordinal) -> str:
    return str(a)


def parse_surreal(text: str) -> SignExpansion:
    """Parse sign notation, a rational literal or a named constant."""
    stripped = text.strip()
    if stripped.replace("ω", "w") in CONSTANTS:
        return CONSTANTS[stripped.replace("ω", "w")]
    if stripped in CONSTANTS:
        return CONSTANTS[stripped]
    if _RATIONAL.match(stripped):
        return from_rational(Fraction(stripped.replace(" ", "")))
    p = _Parser(text)
    if p.peek() is None:
        return SignExpansion()
    runs, tail = p.expr(top=True)
    p.done()
    try:
        return SignExpansion(tuple(runs), tail)
    except ValueError as exc:
        raise NotationError(str(exc), text, 0) from exc


def _format_count(n: Ordinal) -> str:
    s = str(n)
    return s if len(n.terms) <= 1 else f"({s})"


def format_surreal(x: SignExpansion) -> str:
    if not x.runs and x.tail is None:
        return "0"
    parts = []
    for s, n in x.runs:
        if n.is_finite and int(n) <= 3:
            parts.append(str(s) * int(n))
        else:
            parts.append(f"{s}^{_format_count(n)}")
    if x.tail is not None:
        parts.append("(" + "".join(map(str, x.tail)) + ")^w")
    return " ".join(parts)


def surreal_to_json(x: SignExpansion) -> dict:
    return {
        "kind": "surreal",
        "text": format_surreal(x),
        "runs": [{"sign": str(s), "len": str(n)} for s, n in x.runs],
        "tail": None if x.tail is None else {"word": "".join(map(str, x.tail)), "repeat": "w"},
        "dom": str(x.dom),
    }
