"""Independent oracles for the test-suite.

Nothing here calls into the code paths being checked: the interval walk is
re-implemented sign by sign with plain Fractions, and raw (non-canonical)
representations are evaluated pointwise without canonicalization.
"""

from fractions import Fraction
from itertools import product

from surreal_limits.ordinal import Ordinal, add_ord, as_ordinal, cmp_ord


def walk_oracle(q, n):
    """First ``n`` signs (+1/-1) of ``q`` by the literal interval walk."""
    q = Fraction(q)
    lo = hi = None
    c = Fraction(0)
    out = []
    while len(out) < n and c != q:
        if q > c:
            out.append(1)
            lo = c
        else:
            out.append(-1)
            hi = c
        if hi is None:
            c = lo + 1
        elif lo is None:
            c = hi - 1
        else:
            c = (lo + hi) / 2
    return out


def value_oracle(signs):
    """Replay the walk sign by sign."""
    lo = hi = None
    c = Fraction(0)
    for s in signs:
        if s > 0:
            lo = c
        else:
            hi = c
        if hi is None:
            c = lo + 1
        elif lo is None:
            c = hi - 1
        else:
            c = (lo + hi) / 2
    return c


def all_finite(max_len):
    """Every finite sign tuple of length <= max_len, shortest first."""
    for n in range(max_len + 1):
        yield from product((1, -1), repeat=n)


def raw_sign_at(runs, tail, a):
    """Sign of a raw ``(runs, tail)`` description at ordinal ``a``, or 0."""
    a = as_ordinal(a)
    pos = Ordinal()
    for s, n in runs:
        end = add_ord(pos, n)
        if cmp_ord(a, end) < 0 and cmp_ord(pos, end) < 0:
            return s
        pos = end
    if tail is None or not a.is_finite or not pos.is_finite:
        return 0
    return tail[(int(a) - int(pos)) % len(tail)]


def brute_simplest(lows, highs, max_len=8):
    """Earliest-born sign tuple strictly between the bounds, by value.

    Asserts uniqueness within the winning generation.
    """
    lv = [value_oracle(v) for v in lows]
    hv = [value_oracle(v) for v in highs]
    for n in range(max_len + 1):
        hits = [s for s in product((1, -1), repeat=n)
                if all(value_oracle(s) > v for v in lv) and all(value_oracle(s) < v for v in hv)]
        if hits:
            assert len(hits) == 1, hits
            return hits[0]
    raise AssertionError("nothing found; raise max_len")
