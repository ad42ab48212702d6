"""Acceptance criteria 1-12, one test (or parametrized group) per criterion.

Run ``pytest tests/test_acceptance.py`` for a PASS/FAIL line per criterion,
printed in the terminal summary.
"""

import random
import time
from fractions import Fraction
from itertools import product

import pytest

from helpers import all_finite, raw_sign_at, value_oracle, walk_oracle
from surreal_limits.limits import (
    LITERAL,
    Converged,
    LimitConfig,
    NoLimit,
    NotUnique,
    check_limit,
    get_family,
    limit_birthday,
    verify_candidate,
)
from surreal_limits.notation import parse_surreal as S
from surreal_limits.ordinal import (
    OMEGA,
    ZERO,
    Ordinal,
    add_ord,
    cmp_ord,
    enumerate_ordinals,
    left_sub,
    omega_power,
)
from surreal_limits.surreal import (
    SignExpansion,
    add,
    compare,
    from_dyadic,
    from_ordinal,
    from_rational,
    left_options,
    negate,
    restrict,
    right_options,
    sign_at,
    simplest_between,
    to_dyadic,
)

DEPTHS = tuple(Ordinal.finite(i) for i in range(1, 17))
STRICT64 = LimitConfig(horizon=64, depth_samples=DEPTHS)


def F(signs):
    return SignExpansion.from_signs(signs)


class Timer:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t


# 1 ---------------------------------------------------------------------------


def test_criterion_01_ordering_vectors():
    with Timer() as t:
        pairs = [("-++", "-+++"), ("--+-", "--+"), ("--+-++-", "--+"), ("++-+--", "++++--")]
        for a, b in pairs:
            assert compare(S(a), S(b)) == -1
            assert compare(S(b), S(a)) == 1
        # the last pair shares the prefix Z = ++
        z = S("++")
        assert restrict(S("++-+--"), 2) == z == restrict(S("++++--"), 2)
    assert t.elapsed < 1


# 2 ---------------------------------------------------------------------------


def test_criterion_02_option_sets():
    x = S("++-++--")
    lo, hi = left_options(x), right_options(x)
    assert lo == [S("+"), S("++-"), S("++-+")]
    assert hi == [S("++"), S("++-++"), S("++-++-")]
    assert simplest_between(lo, hi) == x


# 3 ---------------------------------------------------------------------------


def test_criterion_03_addition_oracle():
    with Timer() as t:
        short = list(all_finite(4))
        for a, b in product(short, short):
            assert to_dyadic(add(F(a), F(b))) == value_oracle(a) + value_oracle(b)
        rng = random.Random(3)
        for _ in range(1000):
            a = tuple(rng.choice((1, -1)) for _ in range(rng.randint(0, 12)))
            b = tuple(rng.choice((1, -1)) for _ in range(rng.randint(0, 12)))
            assert to_dyadic(add(F(a), F(b))) == value_oracle(a) + value_oracle(b)
    assert t.elapsed < 10


# 4 ---------------------------------------------------------------------------


def _by_birthday(max_len):
    return [(s, value_oracle(s)) for s in all_finite(max_len)]


def _brute(table, lows, highs):
    lv = [value_oracle(v) for v in lows]
    hv = [value_oracle(v) for v in highs]
    for s, v in table:
        if all(v > a for a in lv) and all(v < b for b in hv):
            return s
    raise AssertionError("no number found")


def _feasible(lows, highs):
    return all(value_oracle(a) < value_oracle(b) for a in lows for b in highs)


def test_criterion_04_simplest_between_brute_force():
    with Timer() as t:
        table = _by_birthday(6)
        pool = list(all_finite(5))
        # every pair of at-most-singleton bound sets
        sides = [[]] + [[p] for p in pool]
        for lows in sides:
            for highs in sides:
                if not _feasible(lows, highs):
                    continue
                got = simplest_between([F(v) for v in lows], [F(v) for v in highs])
                assert got.signs() == _brute(table, lows, highs)
        # plus random multi-element sets
        rng = random.Random(4)
        checked = 0
        while checked < 3000:
            lows = rng.sample(pool, rng.randint(0, 5))
            highs = rng.sample(pool, rng.randint(0, 5))
            if not _feasible(lows, highs):
                continue
            got = simplest_between([F(v) for v in lows], [F(v) for v in highs])
            assert got.signs() == _brute(table, lows, highs)
            checked += 1
    assert t.elapsed < 30


# 5 ---------------------------------------------------------------------------


def test_criterion_05_strict_limits():
    with Timer() as t:
        v = check_limit(get_family("naturals"), STRICT64)
        assert isinstance(v, Converged) and v.limit == S("+^w")

        g = get_family("geometric")
        v = check_limit(g, STRICT64)
        assert isinstance(v, Converged) and v.limit == S("+-+^w")
        for d in (3, 8, 16):
            assert not verify_candidate(g, S("1"), d, 64).passed

        v = check_limit(get_family("alternating"), STRICT64)
        assert isinstance(v, NoLimit) and v.position == ZERO

        v = check_limit(get_family("conway_fractions"), STRICT64)
        assert isinstance(v, Converged) and v.limit == S("+-+^w")
    assert t.elapsed < 5


# 6 ---------------------------------------------------------------------------


def test_criterion_06_ones_series():
    v = check_limit(get_family("ones_series"), STRICT64)
    assert isinstance(v, Converged) and v.limit == S("+^w")


# 7 ---------------------------------------------------------------------------


def test_criterion_07_harmonic_discrepancy():
    h = get_family("harmonic_series")
    v = check_limit(h, STRICT64)
    assert isinstance(v, Converged) and v.limit == S("+^w") and v.certified
    assert [r.depth for r in v.n0_table] == list(DEPTHS)
    # certificates checked independently: past n0(a), the first a signs of H_n are all +
    total = Fraction(0)
    sums = {}
    for n in range(1, 65):
        total += Fraction(1, n)
        sums[n] = total
    for r in v.n0_table:
        d = int(r.depth)
        assert r.n0 is None or r.n0 <= r.certified_n0
        for n in range(r.certified_n0 + 1, 65):
            assert walk_oracle(sums[n], d) == [1] * d
    notes = v.to_json()["notes"]
    assert any(n["kind"] == "discrepancy" and "divergent" in n["published_claim"]
               and n["computed_verdict"].startswith("converged") for n in notes)


# 8 ---------------------------------------------------------------------------


@pytest.mark.parametrize("name, want", [
    ("constant", OMEGA),
    ("naturals", OMEGA),
    ("spike", OMEGA),
    ("omega_multiples", omega_power(2)),
])
def test_criterion_08_birthdays(name, want):
    s = get_family(name)
    assert limit_birthday(s) == (want, "certified")
    if name == "omega_multiples":
        (note,) = s.notes
        assert note["kind"] == "erratum"
        assert note["published_value"] == "w^w" and note["computed_value"] == "w^2"


# 9 ---------------------------------------------------------------------------


def test_criterion_09_non_additivity():
    x = check_limit(get_family("naturals"), STRICT64).limit
    y = check_limit(get_family("ones_series"), STRICT64).limit
    assert x == y == S("+^w")
    two_omega = from_ordinal(omega_power(1, 2))
    assert two_omega == S("+^(w*2)")
    assert compare(two_omega, x) != 0


# 10 --------------------------------------------------------------------------


def test_criterion_10_literal_gap():
    nat = get_family("naturals")
    v = check_limit(nat, LimitConfig(policy=LITERAL, depth_samples=DEPTHS))
    assert isinstance(v, NotUnique)
    assert S("+^5") in v.candidates and S("+^w") in v.candidates
    v = check_limit(nat, LimitConfig(depth_samples=DEPTHS, candidates=(S("+^5"), S("+^w"))))
    assert isinstance(v, Converged) and v.limit == S("+^w")


# 11 --------------------------------------------------------------------------


def test_criterion_11_conversion_round_trips():
    with Timer() as t:
        for s in all_finite(7):
            x = F(s)
            assert from_dyadic(to_dyadic(x)) == x
            assert to_dyadic(x) == value_oracle(s)
        rng = random.Random(11)
        for _ in range(200):
            q = Fraction(rng.randint(-400, 400), rng.randint(1, 50))
            x = from_rational(q)
            want = walk_oracle(q, 64)
            got = [sign_at(x, i) for i in range(64)]
            assert [int(s) for s in got[:len(want)]] == want
            assert all(s is None for s in got[len(want):])
    assert t.elapsed < 10


# 12 --------------------------------------------------------------------------


def test_criterion_12_property_suites():
    rng = random.Random(12)
    ords = enumerate_ordinals(max_terms=2, max_coeff=3)
    for _ in range(3000):
        a, b, c = (rng.choice(ords) for _ in range(3))
        assert cmp_ord(a, b) == -cmp_ord(b, a)
        assert add_ord(add_ord(a, b), c) == add_ord(a, add_ord(b, c))
        lo, hi = sorted((a, b))
        assert add_ord(lo, left_sub(lo, hi)) == hi

    lengths = [o for o in ords if o != 0]

    def rand_x():
        if rng.random() < 0.3:
            runs = [(rng.choice((1, -1)), rng.randint(0, 3)) for _ in range(rng.randint(0, 3))]
            return runs, [rng.choice((1, -1)) for _ in range(rng.randint(1, 5))]
        return [(rng.choice((1, -1)), rng.choice(lengths)) for _ in range(rng.randint(0, 4))], None

    for _ in range(500):
        raw = [rand_x() for _ in range(3)]
        xs = [SignExpansion(tuple(r), t) for r, t in raw]
        # canonical form agrees pointwise with the raw description
        for (runs, tail), x in zip(raw, xs):
            probes = [Ordinal.finite(i) for i in range(12)]
            pos = Ordinal()
            for _, n in runs:
                pos = add_ord(pos, n)
                probes += [pos, add_ord(pos, 1)]
            for a in probes:
                got = sign_at(x, a)
                assert (0 if got is None else int(got)) == raw_sign_at(runs, tail, a)
        for x in xs:
            assert negate(negate(x)) == x
            assert compare(negate(x), x) == -compare(x, negate(x))
        a, b, c = xs
        assert compare(a, b) == -compare(b, a)
        assert (compare(a, b) == 0) == (a == b)
        if compare(a, b) <= 0 and compare(b, c) <= 0:
            assert compare(a, c) <= 0


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
