"""Ordinals below epsilon-zero in Cantor normal form.

An :class:`Ordinal` is a tuple of ``(exponent, coefficient)`` terms with
strictly decreasing exponents, exponents being ordinals themselves.  Plain
Python ints are accepted anywhere an ordinal is expected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

__all__ = [
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "DomPattern",
    "as_ordinal",
    "cmp_ord",
    "add_ord",
    "left_sub",
    "mul_fin_ord",
    "divmod_by_finite",
    "is_limit",
    "least_limit_geq",
    "limsup_declared",
    "omega_power",
]

OrdinalLike = Union["Ordinal", int]


@dataclass(frozen=True, eq=False)
class Ordinal:
    terms: tuple[tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        prev = None
        for exp, coeff in self.terms:
            if not isinstance(exp, Ordinal):
                raise TypeError("exponents must be Ordinal instances")
            if not isinstance(coeff, int) or coeff < 1:
                raise ValueError(f"coefficient must be a positive int, got {coeff!r}")
            if prev is not None and cmp_ord(prev, exp) <= 0:
                raise ValueError("exponents must be strictly decreasing")
            prev = exp

    @classmethod
    def finite(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError(f"ordinals are non-negative, got {n}")
        return cls(((ZERO, n),)) if n else ZERO

    # -- queries ---------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    @property
    def finite_part(self) -> int:
        """Trailing finite coefficient (the ``j`` in ``lambda + j``)."""
        if self.terms and not self.terms[-1][0].terms:
            return self.terms[-1][1]
        return 0

    @property
    def infinite_part(self) -> "Ordinal":
        if self.terms and not self.terms[-1][0].terms:
            return Ordinal(self.terms[:-1])
        return self

    def __int__(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is not finite")
        return self.finite_part

    def __index__(self) -> int:
        return int(self)

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- comparison and arithmetic --------------------------------------

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.finite(other) if other >= 0 else None
            if other is None:
                return False
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self.is_finite:
            return hash(self.finite_part)
        return hash(self.terms)

    def __lt__(self, other):
        return cmp_ord(self, other) < 0

    def __le__(self, other):
        return cmp_ord(self, other) <= 0

    def __gt__(self, other):
        return cmp_ord(self, other) > 0

    def __ge__(self, other):
        return cmp_ord(self, other) >= 0

    def __add__(self, other):
        return add_ord(self, other)

    def __radd__(self, other):
        return add_ord(other, self)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, coeff in self.terms:
            if not exp.terms:
                parts.append(str(coeff))
                continue
            if exp == 1:
                base = "w"
            elif exp.is_finite or exp == OMEGA:
                base = f"w^{exp}"
            else:
                base = f"w^({exp})"
            parts.append(base if coeff == 1 else f"{base}*{coeff}")
        return "+".join(parts)

    def __repr__(self):
        return f"Ordinal('{self}')"


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def as_ordinal(a: OrdinalLike) -> Ordinal:
    if isinstance(a, Ordinal):
        return a
    if isinstance(a, int) and not isinstance(a, bool):
        return Ordinal.finite(a)
    raise TypeError(f"cannot interpret {a!r} as an ordinal")


def omega_power(exp: OrdinalLike, coeff: int = 1) -> Ordinal:
    """``w^exp * coeff``."""
    return Ordinal(((as_ordinal(exp), coeff),)) if coeff else ZERO


def cmp_ord(a: OrdinalLike, b: OrdinalLike) -> int:
    """Return -1, 0 or 1.  Lexicographic over CNF terms."""
    a, b = as_ordinal(a), as_ordinal(b)
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = cmp_ord(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def add_ord(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = as_ordinal(a), as_ordinal(b)
    if not b.terms:
        return a
    lead_exp, lead_coeff = b.terms[0]
    kept = []
    for exp, coeff in a.terms:
        c = cmp_ord(exp, lead_exp)
        if c > 0:
            kept.append((exp, coeff))
        elif c == 0:
            lead_coeff += coeff
            break
        else:
            break
    return Ordinal(tuple(kept) + ((lead_exp, lead_coeff),) + b.terms[1:])


def left_sub(a: OrdinalLike, c: OrdinalLike) -> Ordinal:
    """The unique ``b`` with ``a + b == c``; requires ``a <= c``."""
    a, c = as_ordinal(a), as_ordinal(c)
    if cmp_ord(a, c) > 0:
        raise ValueError(f"left_sub requires a <= c, got a={a}, c={c}")
    for i, (tc, ta) in enumerate(zip(c.terms, a.terms)):
        if tc == ta:
            continue
        (ec, kc), (ea, ka) = tc, ta
        if cmp_ord(ec, ea) > 0:
            return Ordinal(c.terms[i:])
        # same exponent, larger coefficient in c
        return Ordinal(((ec, kc - ka),) + c.terms[i + 1:])
    return Ordinal(c.terms[len(a.terms):])


def mul_fin_ord(m: int, r: OrdinalLike) -> Ordinal:
    """Ordinal product ``m * r`` for a positive integer ``m``."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    r = as_ordinal(r)
    j = r.finite_part
    if not j:
        return r
    return add_ord(r.infinite_part, m * j)


def divmod_by_finite(a: OrdinalLike, m: int) -> tuple[Ordinal, int]:
    if m < 1:
        raise ValueError("m must be a positive integer")
    a = as_ordinal(a)
    q, r = divmod(a.finite_part, m)
    return add_ord(a.infinite_part, q), r


def is_limit(a: OrdinalLike) -> bool:
    a = as_ordinal(a)
    return bool(a.terms) and bool(a.terms[-1][0].terms)


def least_limit_geq(a: OrdinalLike) -> Ordinal:
    a = as_ordinal(a)
    if is_limit(a):
        return a
    return add_ord(a.infinite_part, OMEGA)


@dataclass(frozen=True)
class DomPattern:
    """Declared shape of a sequence of birthdays.

    ``kind`` is one of ``"constant"``, ``"increasing"``, ``"spikes"`` (finitely
    many outliers, then increasing towards ``value``) or ``"limsup"`` (the
    limit superior itself is asserted, e.g. for birthdays that keep jumping
    between finite values and ``w``).
    """

    kind: str
    value: Ordinal

    KINDS = ("constant", "increasing", "spikes", "limsup")


def limsup_declared(pattern: DomPattern) -> Ordinal:
    if not isinstance(pattern, DomPattern) or pattern.kind not in DomPattern.KINDS:
        raise ValueError(f"unsupported birthday pattern: {pattern!r}")
    # every supported kind carries its limit superior directly; outliers in
    # "spikes" occur finitely often and never reach the tail
    return as_ordinal(pattern.value)


def enumerate_ordinals(max_terms: int = 3, exponents: Iterable[OrdinalLike] | None = None,
                       max_coeff: int = 4) -> list[Ordinal]:
    """All CNF ordinals with at most ``max_terms`` terms drawn from ``exponents``."""
    if exponents is None:
        exponents = [0, 1, 2, OMEGA, add_ord(OMEGA, 1), omega_power(1, 2)]
    exps = sorted({as_ordinal(e) for e in exponents}, reverse=True)
    out = [ZERO]

    def rec(start, terms):
        if len(terms) == max_terms:
            return
        for i in range(start, len(exps)):
            for k in range(1, max_coeff + 1):
                new = terms + ((exps[i], k),)
                out.append(Ordinal(new))
                rec(i + 1, new)

    rec(0, ())
    return out

