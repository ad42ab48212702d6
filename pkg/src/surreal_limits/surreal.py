"""Surreal numbers as sign expansions.

A :class:`SignExpansion` is a finite list of maximal sign runs whose lengths
are ordinals, optionally followed by a finite word repeated ``w`` times.  The
tail form only occurs after finite runs, so such numbers always have
birthday ``w``; it is how non-dyadic rationals are stored.

Every instance is canonicalized on construction, which makes structural
equality coincide with pointwise equality of the underlying sign functions.
"""

from __future__ import annotations

import enum
import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .ordinal import (
    OMEGA,
    ZERO,
    Ordinal,
    add_ord,
    as_ordinal,
    cmp_ord,
    divmod_by_finite,
    left_sub,
    omega_power,
)

__all__ = [
    "Sign",
    "PLUS",
    "MINUS",
    "SignExpansion",
    "EMPTY",
    "dom",
    "sign_at",
    "restrict",
    "is_simpler",
    "first_difference",
    "compare",
    "negate",
    "left_options",
    "right_options",
    "simplest_between",
    "add",
    "from_dyadic",
    "to_dyadic",
    "from_rational",
    "to_rational",
    "from_ordinal",
    "is_dyadic",
    "walk_signs",
    "rational_prefix",
    "rational_dom",
]


class Sign(enum.IntEnum):
    MINUS = -1
    PLUS = 1

    def __str__(self):
        return "+" if self is Sign.PLUS else "-"

    def __neg__(self):
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    @classmethod
    def coerce(cls, s) -> "Sign":
        if isinstance(s, Sign):
            return s
        if s in ("+", 1, True):
            return cls.PLUS
        if s in ("-", "−", -1):
            return cls.MINUS
        raise ValueError(f"not a sign: {s!r}")


PLUS = Sign.PLUS
MINUS = Sign.MINUS

Run = tuple[Sign, Ordinal]


def _merge_runs(runs: Iterable[tuple]) -> list[list]:
    merged: list[list] = []
    for s, length in runs:
        s, length = Sign.coerce(s), as_ordinal(length)
        if not length:
            continue
        if merged and merged[-1][0] is s:
            merged[-1][1] = add_ord(merged[-1][1], length)
        else:
            merged.append([s, length])
    return merged


def _primitive_root(word: tuple[Sign, ...]) -> tuple[Sign, ...]:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


def _canonical(runs: Iterable[tuple], tail: Optional[Iterable]) -> tuple[tuple[Run, ...], Optional[tuple[Sign, ...]]]:
    merged = _merge_runs(runs)
    if tail is None:
        return tuple((s, n) for s, n in merged), None
    word = tuple(Sign.coerce(s) for s in tail)
    if not word:
        raise ValueError("a periodic tail needs a nonempty word")
    if any(not n.is_finite for _, n in merged):
        raise ValueError("a periodic tail may only follow finite runs")
    word = _primitive_root(word)
    if len(word) == 1:
        merged = _merge_runs([*merged, (word[0], OMEGA)])
        return tuple((s, n) for s, n in merged), None

    # finite prefix as mutable (sign, int) runs
    prefix = [[s, int(n)] for s, n in merged]

    # shortest preperiod: pull trailing prefix signs into the word
    while prefix and prefix[-1][0] is word[-1]:
        word = (word[-1],) + word[:-1]
        prefix[-1][1] -= 1
        if not prefix[-1][1]:
            prefix.pop()

    # align both seams with run boundaries by emitting the word's first run
    if prefix or word[0] is word[-1]:
        k = 1
        while word[k] is word[0]:
            k += 1
        if prefix and prefix[-1][0] is word[0]:
            prefix[-1][1] += k
        else:
            prefix.append([word[0], k])
        word = word[k:] + word[:k]

    return tuple((s, Ordinal.finite(n)) for s, n in prefix), word


@dataclass(frozen=True)
class SignExpansion:
    """A surreal number given by its sign expansion.

    ``runs`` holds ``(sign, length)`` pairs, ``tail`` an optional word that
    repeats ``w`` times after the runs.  Input need not be canonical.
    """

    runs: tuple[Run, ...] = ()
    tail: Optional[tuple[Sign, ...]] = None

    def __post_init__(self):
        runs, tail = _canonical(self.runs, self.tail)
        object.__setattr__(self, "runs", runs)
        object.__setattr__(self, "tail", tail)

    @classmethod
    def from_signs(cls, signs: Iterable, tail: Optional[Iterable] = None) -> "SignExpansion":
        """Build from individual signs, e.g. ``from_signs("++-")``."""
        return cls(tuple((s, 1) for s in signs if not str(s).isspace()), tail)

    # -- basic queries ---------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.tail is None and all(n.is_finite for _, n in self.runs)

    @property
    def dom(self) -> Ordinal:
        return dom(self)

    def signs(self) -> tuple[int, ...]:
        """Signs of a finite expansion as a tuple of +1/-1."""
        if not self.is_finite:
            raise ValueError("expansion has infinite birthday")
        return tuple(itertools.chain.from_iterable(
            itertools.repeat(int(s), int(n)) for s, n in self.runs))

    def __bool__(self):
        return bool(self.runs) or self.tail is not None

    # -- operators -------------------------------------------------------

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __neg__(self):
        return negate(self)

    def __add__(self, other):
        return add(self, other)

    def __str__(self):
        from .notation import format_surreal

        return format_surreal(self)

    def __repr__(self):
        return f"SignExpansion('{self}')"


EMPTY = SignExpansion()


def _finite_from_tuple(signs: tuple[int, ...]) -> SignExpansion:
    return SignExpansion(tuple((s, 1) for s in signs))


# -- structure ----------------------------------------------------------


def dom(x: SignExpansion) -> Ordinal:
    total = ZERO
    for _, n in x.runs:
        total = add_ord(total, n)
    if x.tail is not None:
        total = add_ord(total, OMEGA)
    return total


def sign_at(x: SignExpansion, a) -> Optional[Sign]:
    """``x(a)``, or ``None`` when ``a`` is outside the domain."""
    a = as_ordinal(a)
    pos = ZERO
    for s, n in x.runs:
        end = add_ord(pos, n)
        if cmp_ord(a, end) < 0:
            return s
        pos = end
    if x.tail is None or not a.is_finite:
        return None
    _, r = divmod_by_finite(left_sub(pos, a), len(x.tail))
    return x.tail[r]


def restrict(x: SignExpansion, a) -> SignExpansion:
    a = as_ordinal(a)
    pos = ZERO
    out = []
    for s, n in x.runs:
        if cmp_ord(a, pos) <= 0:
            return SignExpansion(tuple(out))
        end = add_ord(pos, n)
        if cmp_ord(a, end) < 0:
            out.append((s, left_sub(pos, a)))
            return SignExpansion(tuple(out))
        out.append((s, n))
        pos = end
    if x.tail is None or not a.is_finite:
        return x
    k = int(left_sub(pos, a))
    q, r = divmod(k, len(x.tail))
    return SignExpansion(tuple(out) + tuple((s, 1) for s in x.tail * q + x.tail[:r]))


def is_simpler(x: SignExpansion, y: SignExpansion) -> bool:
    dx = dom(x)
    return cmp_ord(dx, dom(y)) < 0 and restrict(y, dx) == x


def _tail_runs(word: tuple[Sign, ...]) -> list[Run]:
    return [(s, Ordinal.finite(len(list(g)))) for s, g in itertools.groupby(word)]


def _run_stream(x: SignExpansion) -> Iterator[tuple[bool, int, Run]]:
    """Yield ``(in_tail, tail_index, run)`` forever through the tail."""
    for r in x.runs:
        yield False, -1, r
    if x.tail is not None:
        truns = _tail_runs(x.tail)
        for i in itertools.cycle(range(len(truns))):
            yield True, i, truns[i]


def first_difference(x: SignExpansion, y: SignExpansion) -> Optional[Ordinal]:
    """Least position where ``x`` and ``y`` differ, ``None`` if identical.

    Positions where exactly one of the two is defined count as differences.
    """
    if x == y:
        return None
    ix, iy = _run_stream(x), _run_stream(y)
    cx, cy = next(ix, None), next(iy, None)
    rx = cx[2][1] if cx else None
    ry = cy[2][1] if cy else None
    pos = ZERO
    seen = set()
    while True:
        if cx is None and cy is None:
            return None
        if cx is None or cy is None or cx[2][0] is not cy[2][0]:
            return pos
        if cx[0] and cy[0]:
            state = (cx[1], rx, cy[1], ry)
            if state in seen:
                return None
            seen.add(state)
        c = cmp_ord(rx, ry)
        if c == 0:
            pos = add_ord(pos, rx)
            cx, cy = next(ix, None), next(iy, None)
            rx = cx[2][1] if cx else None
            ry = cy[2][1] if cy else None
        elif c < 0:
            pos = add_ord(pos, rx)
            ry = left_sub(rx, ry)
            cx = next(ix, None)
            rx = cx[2][1] if cx else None
        else:
            pos = add_ord(pos, ry)
            rx = left_sub(ry, rx)
            cy = next(iy, None)
            ry = cy[2][1] if cy else None


def compare(x: SignExpansion, y: SignExpansion) -> int:
    """Return -1, 0 or 1, reading ``minus < undefined < plus`` at the first difference."""
    if x.is_finite and y.is_finite:
        return _cmp_tuples(x.signs(), y.signs())
    a = first_difference(x, y)
    if a is None:
        return 0
    sx = sign_at(x, a) or 0
    sy = sign_at(y, a) or 0
    return (sx > sy) - (sx < sy)


def negate(x: SignExpansion) -> SignExpansion:
    tail = None if x.tail is None else tuple(-s for s in x.tail)
    return SignExpansion(tuple((-s, n) for s, n in x.runs), tail)


# -- options, simplicity, addition --------------------------------------


def _key(signs: tuple[int, ...]) -> tuple[int, ...]:
    # a trailing 0 ("undefined") sorts between - and +, so native tuple
    # order on keys is the surreal order on finite expansions
    return signs + (0,)


def _cmp_tuples(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    ka, kb = _key(a), _key(b)
    return (ka > kb) - (ka < kb)


def _options(x: SignExpansion, which: Sign, include_empty: bool) -> list[SignExpansion]:
    if not x.is_finite:
        raise ValueError("option sets of infinite expansions are not supported")
    signs = x.signs()
    first = 0 if include_empty else 1
    return [_finite_from_tuple(signs[:i]) for i, s in enumerate(signs) if s == which and i >= first]


def left_options(x: SignExpansion, include_empty: bool = False) -> list[SignExpansion]:
    """Prefixes of ``x`` cut just before a ``+``, shortest first.

    The empty prefix (zero) is left out unless ``include_empty`` is set, so
    ``++-++--`` gives ``[+, ++-, ++-+]``.  Addition always uses the complete
    sets.
    """
    return _options(x, PLUS, include_empty)


def right_options(x: SignExpansion, include_empty: bool = False) -> list[SignExpansion]:
    """Prefixes of ``x`` cut just before a ``-``; see :func:`left_options`."""
    return _options(x, MINUS, include_empty)


def _simplest_tuples(lows, highs) -> tuple[int, ...]:
    lo = max(map(_key, lows), default=None)
    hi = min(map(_key, highs), default=None)
    if lo is not None and hi is not None and lo >= hi:
        raise ValueError("every lower bound must be below every upper bound")
    x: list[int] = []
    while True:
        k = tuple(x) + (0,)
        if lo is not None and k <= lo:
            x.append(1)
        elif hi is not None and k >= hi:
            x.append(-1)
        else:
            return tuple(x)


def simplest_between(lows: Iterable[SignExpansion], highs: Iterable[SignExpansion]) -> SignExpansion:
    """The earliest-born expansion strictly above every low and below every high."""
    lows, highs = list(lows), list(highs)
    if not all(v.is_finite for v in lows + highs):
        raise ValueError("simplest_between takes finite expansions only")
    return _finite_from_tuple(_simplest_tuples([v.signs() for v in lows], [v.signs() for v in highs]))


def _memo_enabled() -> bool:
    return os.environ.get("SURREAL_MEMO", "on").lower() not in ("off", "0", "false", "no")


def _add_tuples(x: tuple[int, ...], y: tuple[int, ...], memo: Optional[dict]) -> tuple[int, ...]:
    if memo is not None:
        hit = memo.get((x, y))
        if hit is not None:
            return hit
    # complete option sets: the empty prefix counts too
    lows, highs = [], []
    for i, s in enumerate(x):
        (lows if s > 0 else highs).append(_add_tuples(x[:i], y, memo))
    for i, s in enumerate(y):
        (lows if s > 0 else highs).append(_add_tuples(x, y[:i], memo))
    result = _simplest_tuples(lows, highs)
    if memo is not None:
        memo[(x, y)] = result
    return result


def add(x: SignExpansion, y: SignExpansion, memo: Optional[bool] = None) -> SignExpansion:
    """Sum of two finite expansions via their option sets.

    The memo table lives for one call only; ``memo=False`` (or the
    environment variable ``SURREAL_MEMO=off``) disables it.
    """
    if not (x.is_finite and y.is_finite):
        raise ValueError("addition is only supported for finite expansions")
    if memo is None:
        memo = _memo_enabled()
    return _finite_from_tuple(_add_tuples(x.signs(), y.signs(), {} if memo else None))


# -- conversions ---------------------------------------------------------


def is_dyadic(q) -> bool:
    d = Fraction(q).denominator
    return d & (d - 1) == 0


def _integer_runs(q: Fraction) -> tuple[list[Run], Fraction]:
    """Runs emitted before both walk bounds are finite, and the lower bound."""
    if q >= 0:
        c = math.ceil(q)
        if q == c:
            return [(PLUS, Ordinal.finite(c))], q
        return [(PLUS, Ordinal.finite(c)), (MINUS, Ordinal.finite(1))], Fraction(c - 1)
    f = math.floor(q)
    if q == f:
        return [(MINUS, Ordinal.finite(-f))], q
    return [(MINUS, Ordinal.finite(-f)), (PLUS, Ordinal.finite(1))], Fraction(f)


def from_dyadic(q) -> SignExpansion:
    """Finite expansion of a dyadic rational by the interval walk."""
    q = Fraction(q)
    if not is_dyadic(q):
        raise ValueError(f"{q} is not a dyadic rational")
    runs, lo = _integer_runs(q)
    if q.denominator == 1:
        return SignExpansion(tuple(runs))
    # both bounds finite with width 1; signs are the binary digits of t
    t = q - lo
    signs = []
    while t != Fraction(1, 2):
        if t > Fraction(1, 2):
            signs.append(PLUS)
            t = 2 * t - 1
        else:
            signs.append(MINUS)
            t = 2 * t
    return SignExpansion(tuple(runs) + tuple((s, 1) for s in signs))


def to_dyadic(x: SignExpansion) -> Fraction:
    """Replay the interval walk on a finite expansion."""
    if not x.is_finite:
        raise ValueError("to_dyadic needs a finite expansion")
    lo = hi = None
    c = Fraction(0)
    for s, n in x.runs:
        n = int(n)
        if s is PLUS and hi is None:
            lo, c = c + n - 1, c + n
            continue
        if s is MINUS and lo is None:
            hi, c = c - n + 1, c - n
            continue
        for _ in range(n):
            if s is PLUS:
                lo = c
            else:
                hi = c
            c = (lo + hi) / 2
    return c


def from_rational(q) -> SignExpansion:
    """Expansion of any rational; non-dyadics get a periodic tail."""
    q = Fraction(q)
    if is_dyadic(q):
        return from_dyadic(q)
    runs, lo = _integer_runs(q)
    t = q - lo
    seen: dict[Fraction, int] = {}
    signs: list[Sign] = []
    while t not in seen:
        seen[t] = len(signs)
        if t > Fraction(1, 2):
            signs.append(PLUS)
            t = 2 * t - 1
        else:
            signs.append(MINUS)
            t = 2 * t
    start = seen[t]
    return SignExpansion(tuple(runs) + tuple((s, 1) for s in signs[:start]), tuple(signs[start:]))


def to_rational(x: SignExpansion) -> Fraction:
    """Value of a finite or periodic-tail expansion."""
    if x.is_finite:
        return to_dyadic(x)
    if x.tail is None:
        raise ValueError("expansion has an infinite run and is not a rational")
    prefix = [s for s, n in x.runs for _ in range(int(n))]
    stream = itertools.chain(prefix, itertools.cycle(x.tail))
    lo = hi = None
    c = Fraction(0)
    used = 0
    while lo is None or hi is None:
        s = next(stream)
        used += 1
        if s is PLUS:
            lo = c
        else:
            hi = c
        if hi is None:
            c = lo + 1
        elif lo is None:
            c = hi - 1
        else:
            c = (lo + hi) / 2
    # remaining signs are binary digits of t = (value - lo) / (hi - lo)
    if used <= len(prefix):
        head = prefix[used:]
        word = list(x.tail)
    else:
        head = []
        k = (used - len(prefix)) % len(x.tail)
        word = list(x.tail[k:] + x.tail[:k])

    def bits(ss):
        v = 0
        for s in ss:
            v = 2 * v + (1 if s is PLUS else 0)
        return v

    period = Fraction(bits(word), 2 ** len(word) - 1)
    t = (bits(head) + period) / 2 ** len(head)
    return lo + t * (hi - lo)


def walk_signs(q) -> Iterator[Sign]:
    """Signs of ``q`` one at a time; stops after the last sign of a dyadic."""
    q = Fraction(q)
    lo = hi = None
    c = Fraction(0)
    while c != q:
        if q > c:
            yield PLUS
            lo = c
        else:
            yield MINUS
            hi = c
        if hi is None:
            c = lo + 1
        elif lo is None:
            c = hi - 1
        else:
            c = (lo + hi) / 2


def rational_prefix(q, depth: int) -> SignExpansion:
    """``restrict(from_rational(q), depth)`` without locating the period."""
    return SignExpansion(tuple((s, 1) for s in itertools.islice(walk_signs(q), depth)))


def rational_dom(q) -> Ordinal:
    q = Fraction(q)
    if not is_dyadic(q):
        return OMEGA
    return dom(from_dyadic(q))


def from_ordinal(a) -> SignExpansion:
    return SignExpansion(((PLUS, as_ordinal(a)),))


# -- named numbers ------------------------------------------------------

OMEGA_NUMBER = from_ordinal(OMEGA)
EPSILON = SignExpansion(((PLUS, 1), (MINUS, OMEGA)))
OMEGA_MINUS_ONE = SignExpansion(((PLUS, OMEGA), (MINUS, 1)))
OMEGA_PLUS_ONE = from_ordinal(add_ord(OMEGA, 1))
TWO_OMEGA = from_ordinal(omega_power(1, 2))
HALF_OMEGA = SignExpansion(((PLUS, OMEGA), (MINUS, OMEGA)))
SQRT_OMEGA = SignExpansion(((PLUS, OMEGA), (MINUS, omega_power(2))))
ONE_MINUS_EPSILON = SignExpansion(((PLUS, 1), (MINUS, 1), (PLUS, OMEGA)))

CONSTANTS = {
    "omega": OMEGA_NUMBER,
    "w": OMEGA_NUMBER,
    "eps": EPSILON,
    "omega_minus_one": OMEGA_MINUS_ONE,
    "omega_plus_one": OMEGA_PLUS_ONE,
    "two_omega": TWO_OMEGA,
    "half_omega": HALF_OMEGA,
    "sqrt_omega": SQRT_OMEGA,
    "one_minus_eps": ONE_MINUS_EPSILON,
}
