"""Convergence of surreal sequences via sign expansions.

A sequence converges to ``X`` when ``dom X`` is at most the sequence's limit
birthday ``b`` and, for every depth ``a < b``, the terms eventually agree
with ``X`` below ``a``.  The universal quantifier over depths is discharged by
sampling finitely many depths and, for the built-in families, by
stabilization certificates that bound ``n0`` at every depth.

Two agreement policies are available:

``strict``
    ``restrict(X_n, a) == restrict(X, a)``: the two sign functions coincide,
    definedness included, on every position below ``a``.
``literal``
    both sides are cut at ``min(a, dom X_n, dom X)`` first.  Every prefix of a
    limit then passes as well, so this policy can only report ``NotUnique``
    for a convergent family.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

from .ordinal import (
    OMEGA,
    ZERO,
    DomPattern,
    Ordinal,
    add_ord,
    as_ordinal,
    cmp_ord,
    enumerate_ordinals,
    is_limit,
    least_limit_geq,
    left_sub,
    limsup_declared,
    omega_power,
)
from .surreal import (
    EMPTY,
    MINUS,
    ONE_MINUS_EPSILON,
    PLUS,
    SignExpansion,
    dom,
    from_dyadic,
    from_ordinal,
    from_rational,
    rational_dom,
    rational_prefix,
    restrict,
    sign_at,
)

__all__ = [
    "Sequence",
    "LimitConfig",
    "Converged",
    "NoLimit",
    "NotUnique",
    "Inconclusive",
    "CandidateCheck",
    "birthday_probe",
    "limit_birthday",
    "check_limit",
    "verify_candidate",
    "default_depths",
    "series",
    "builtin_families",
    "get_family",
]

STRICT = "strict"
LITERAL = "literal"
POLICIES = (STRICT, LITERAL)


@dataclass(frozen=True)
class Sequence:
    """An indexed family ``n -> SignExpansion`` for ``n >= start``.

    ``value`` may give the exact rational value of each term; the checker
    then reads prefixes off the rational directly, which matters when the
    periodic tail of a term is too long to build.
    """

    name: str
    term: Callable[[int], SignExpansion]
    start: int = 1
    value: Optional[Callable[[int], Fraction]] = None
    dom_pattern: Optional[DomPattern] = None
    candidate_limit: Optional[SignExpansion] = None
    stabilization_index: Optional[Callable[[Ordinal], int]] = None
    oscillation_witness: Optional[tuple[Ordinal, str]] = None
    notes: tuple[dict, ...] = ()
    description: str = ""

    def indices(self, horizon: int) -> range:
        return range(self.start, horizon + 1)


@dataclass(frozen=True)
class LimitConfig:
    policy: str = STRICT
    horizon: int = 64
    depth_samples: Optional[tuple[Ordinal, ...]] = None
    probe_budget: int = 100_000
    candidates: Optional[tuple[SignExpansion, ...]] = None

    def __post_init__(self):
        if self.policy not in POLICIES:
            raise ValueError(f"policy must be one of {POLICIES}, got {self.policy!r}")
        if self.horizon < 2:
            raise ValueError("horizon must be at least 2")
        if self.depth_samples is not None:
            if not self.depth_samples:
                raise ValueError("depth_samples must be nonempty")
            object.__setattr__(self, "depth_samples",
                               tuple(as_ordinal(d) for d in self.depth_samples))
        if self.candidates is not None:
            object.__setattr__(self, "candidates", tuple(self.candidates))


# -- verdicts -------------------------------------------------------------


@dataclass(frozen=True)
class DepthRecord:
    depth: Ordinal
    n0: Optional[int]
    certified_n0: Optional[int] = None

    def to_json(self):
        return {"depth": str(self.depth), "n0": self.n0, "certified_n0": self.certified_n0}


def _surreal_json(x):
    from .notation import surreal_to_json

    return surreal_to_json(x)


@dataclass(frozen=True)
class Converged:
    limit: SignExpansion
    policy: str
    horizon: int
    depths: tuple[Ordinal, ...]
    n0_table: tuple[DepthRecord, ...]
    certified: bool
    birthday: Ordinal
    notes: tuple[dict, ...] = ()

    kind = "converged"

    def to_json(self):
        return {
            "kind": self.kind,
            "limit": _surreal_json(self.limit),
            "policy": self.policy,
            "horizon": self.horizon,
            "birthday": str(self.birthday),
            "depths": [str(d) for d in self.depths],
            "n0": [r.to_json() for r in self.n0_table],
            "certified": self.certified,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class NoLimit:
    position: Ordinal
    witnesses: tuple[int, ...]
    policy: str
    horizon: int
    reason: str = ""
    notes: tuple[dict, ...] = ()

    kind = "no_limit"

    def to_json(self):
        return {
            "kind": self.kind,
            "position": str(self.position),
            "witnesses": list(self.witnesses),
            "reason": self.reason,
            "policy": self.policy,
            "horizon": self.horizon,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class NotUnique:
    candidates: tuple[SignExpansion, ...]
    policy: str
    horizon: int
    depths: tuple[Ordinal, ...]
    notes: tuple[dict, ...] = ()

    kind = "not_unique"

    def to_json(self):
        return {
            "kind": self.kind,
            "candidates": [_surreal_json(c) for c in self.candidates],
            "policy": self.policy,
            "horizon": self.horizon,
            "depths": [str(d) for d in self.depths],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    policy: str
    horizon: int
    notes: tuple[dict, ...] = ()

    kind = "inconclusive"

    def to_json(self):
        return {
            "kind": self.kind,
            "reason": self.reason,
            "policy": self.policy,
            "horizon": self.horizon,
            "notes": list(self.notes),
        }


LimitVerdict = Union[Converged, NoLimit, NotUnique, Inconclusive]


@dataclass(frozen=True)
class CandidateCheck:
    """Outcome of :func:`verify_candidate`.

    ``n0`` is the least index after which every probed term agrees (the
    latest violation, or ``start - 1`` if there is none).  The check passes
    when at least one agreeing term follows it.
    """

    passed: bool
    n0: int
    counterexample: Optional[int]

    def __iter__(self):
        yield self.passed
        yield self.n0 if self.passed else self.counterexample


# -- probing --------------------------------------------------------------


class _Probe:
    """Per-check cache of terms, prefixes and birthdays."""

    def __init__(self, seq: Sequence):
        self.seq = seq
        self._terms: dict[int, SignExpansion] = {}
        self._doms: dict[int, Ordinal] = {}
        self._prefix: dict[tuple[int, Ordinal], SignExpansion] = {}

    def term(self, n):
        if n not in self._terms:
            self._terms[n] = self.seq.term(n)
        return self._terms[n]

    def dom(self, n):
        if n not in self._doms:
            if self.seq.value is not None:
                self._doms[n] = rational_dom(self.seq.value(n))
            else:
                self._doms[n] = dom(self.term(n))
        return self._doms[n]

    def restrict(self, n, depth: Ordinal):
        key = (n, depth)
        if key not in self._prefix:
            if self.seq.value is not None:
                # rational terms have birthday at most w
                if depth.is_finite:
                    r = rational_prefix(self.seq.value(n), int(depth))
                else:
                    r = self.term(n)
            else:
                r = restrict(self.term(n), depth)
            self._prefix[key] = r
        return self._prefix[key]

    def sign_at(self, n, pos: Ordinal):
        return sign_at(self.restrict(n, add_ord(pos, 1)), pos)


def _agrees(probe: _Probe, n: int, x: SignExpansion, depth: Ordinal, policy: str) -> bool:
    if policy == STRICT:
        return probe.restrict(n, depth) == restrict(x, depth)
    beta = min(depth, probe.dom(n), dom(x))
    return probe.restrict(n, beta) == restrict(x, beta)


def _verify(probe: _Probe, x, depth, horizon, policy) -> CandidateCheck:
    seq = probe.seq
    last_bad = None
    for n in seq.indices(horizon):
        if not _agrees(probe, n, x, depth, policy):
            last_bad = n
    if last_bad is None:
        return CandidateCheck(True, seq.start - 1, None)
    if last_bad < horizon:
        return CandidateCheck(True, last_bad, None)
    return CandidateCheck(False, last_bad, last_bad)


def verify_candidate(s: Sequence, x: SignExpansion, depth, horizon: int,
                     policy: str = STRICT) -> CandidateCheck:
    """Least ``n0`` such that terms ``n0 < n <= horizon`` agree with ``x`` below ``depth``."""
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    return _verify(_Probe(s), x, as_ordinal(depth), horizon, policy)


def birthday_probe(s: Sequence, horizon: int) -> list[Ordinal]:
    if horizon < 1:
        raise ValueError("horizon must be positive")
    probe = _Probe(s)
    return [probe.dom(n) for n in s.indices(horizon)]


def limit_birthday(s: Sequence, horizon: int = 64) -> tuple[Ordinal, str]:
    """``(b, "certified")`` from a declared pattern, else a probe estimate."""
    if s.dom_pattern is not None:
        return least_limit_geq(limsup_declared(s.dom_pattern)), "certified"
    doms = birthday_probe(s, horizon)
    tail = doms[len(doms) // 2:]
    return least_limit_geq(max(tail)), "heuristic"


def default_depths(b: Ordinal) -> tuple[Ordinal, ...]:
    """Depth samples below ``b``: 1..16 for ``b = w``, else a spread that
    includes positions just after limit ordinals."""
    b = as_ordinal(b)
    if b == OMEGA:
        return tuple(Ordinal.finite(k) for k in range(1, 17))
    picks = {Ordinal.finite(k) for k in range(1, 9)}
    for lam in enumerate_ordinals(max_terms=2, exponents=[1, 2, OMEGA], max_coeff=3):
        if is_limit(lam):
            for j in range(4):
                picks.add(add_ord(lam, j))
    return tuple(sorted(d for d in picks if d < b))


def _pool_from(base: SignExpansion, depths: Iterable[Ordinal]) -> list[SignExpansion]:
    """``base`` and its prefixes at the sampled depths and at run boundaries."""
    cuts = {ZERO, *depths}
    pos = ZERO
    for _, n in base.runs:
        pos = add_ord(pos, n)
        cuts.add(pos)
    pool = {restrict(base, c) for c in cuts}
    pool.add(base)
    return sorted(pool, key=lambda x: (dom(x), x))


def _candidate_from_probe(probe: _Probe, depths, b: Ordinal, horizon: int) -> Optional[SignExpansion]:
    seq = probe.seq
    idx = list(seq.indices(horizon))
    half = idx[len(idx) // 2:]
    best = None
    for d in sorted(depths):
        prefixes = {probe.restrict(n, d) for n in half}
        if len(prefixes) != 1:
            break
        best = (d, prefixes.pop())
    if best is None:
        return None
    d, p = best
    if dom(p) < d:
        # every late term is exactly p
        return p
    if p.tail is not None:
        return p
    if p.is_finite and b >= OMEGA:
        periodic = _periodic_guess(p.signs())
        if periodic is not None:
            return periodic
    if not p.runs:
        return None
    *head, (sign, length) = p.runs
    before = dom(SignExpansion(tuple(head)))
    if not before < b:
        return None
    return SignExpansion(tuple(head) + ((sign, left_sub(before, b)),))


def _periodic_guess(signs: tuple[int, ...]) -> Optional[SignExpansion]:
    n = len(signs)
    best = None
    for p in range(2, n // 3 + 1):
        k = n - p
        while k > 0 and signs[k - 1] == signs[k - 1 + p]:
            k -= 1
        if n - k >= 3 * p and (best is None or (k, p) < best[:2]):
            best = (k, p)
    if best is None:
        return None
    k, p = best
    word = signs[k:k + p]
    if len(set(word)) < 2:
        return None
    return SignExpansion(tuple((s, 1) for s in signs[:k]), word)


def _oscillation(probe: _Probe, pos: Ordinal, horizon: int) -> Optional[tuple[int, int]]:
    idx = list(probe.seq.indices(horizon))
    half = idx[len(idx) // 2:]
    last = {}
    for n in half:
        last[probe.sign_at(n, pos)] = n
    if PLUS in last and MINUS in last:
        return tuple(sorted((last[PLUS], last[MINUS])))
    return None


def _table(probe, x, depths, horizon, policy, certificate):
    """Per-depth records for ``x``, or ``(None, reason)`` on failure."""
    records = []
    for d in depths:
        chk = _verify(probe, x, d, horizon, policy)
        if certificate is not None:
            cert = certificate(d)
            if chk.n0 > cert:
                return None, f"certificate refuted at depth {d}: term {chk.n0} disagrees after n0={cert}"
            records.append(DepthRecord(d, chk.n0 if chk.passed else None, cert))
        else:
            if not chk.passed or chk.n0 > horizon // 2:
                return None, f"no stabilization observed at depth {d} within the horizon"
            records.append(DepthRecord(d, chk.n0))
    return tuple(records), ""


def check_limit(s: Sequence, cfg: LimitConfig = LimitConfig()) -> LimitVerdict:
    b, _ = limit_birthday(s, cfg.horizon)
    depths = cfg.depth_samples or default_depths(b)
    for d in depths:
        if not d < b:
            raise ValueError(f"depth sample {d} is not below the limit birthday {b}")
    horizon = min(cfg.horizon, s.start + cfg.probe_budget - 1)
    probe = _Probe(s)
    notes = tuple(s.notes)

    def inconclusive(reason):
        return Inconclusive(reason, cfg.policy, horizon, notes)

    if cfg.policy == STRICT and s.oscillation_witness is not None:
        pos, desc = s.oscillation_witness
        pos = as_ordinal(pos)
        if not pos < b:
            return inconclusive(f"oscillation witness at {pos} is not below {b}")
        seen = _oscillation(probe, pos, horizon)
        if seen is None:
            return inconclusive(f"oscillation at position {pos} not observed in the probe")
        return NoLimit(pos, seen, cfg.policy, horizon, desc, notes)

    if cfg.candidates is not None:
        base = None
        pool = list(cfg.candidates)
    else:
        base = s.candidate_limit
        if base is None:
            base = _candidate_from_probe(probe, depths, b, horizon)
        if cfg.policy == STRICT:
            pool = [] if base is None else [base]
        else:
            pool = [EMPTY] if base is None else _pool_from(base, depths)

    pool = [x for x in pool if dom(x) <= b]
    if not pool:
        return inconclusive("no candidate limit of birthday at most the limit birthday")

    survivors = []
    last_reason = ""
    for x in pool:
        cert = s.stabilization_index if (s.candidate_limit is not None and x == s.candidate_limit) else None
        table, reason = _table(probe, x, depths, horizon, cfg.policy, cert)
        if table is None:
            last_reason = reason
            continue
        survivors.append((x, table, cert is not None))

    if not survivors:
        return inconclusive(last_reason or "no candidate passed")
    if len(survivors) > 1:
        cands = tuple(x for x, _, _ in survivors)
        if cfg.policy == LITERAL:
            return NotUnique(cands, cfg.policy, horizon, tuple(depths), notes)
        return inconclusive("several candidates agree at every sampled depth; sample deeper")
    x, table, certified = survivors[0]
    return Converged(x, cfg.policy, horizon, tuple(depths), table, certified, b, notes)


# -- series -----------------------------------------------------------------


class _PartialSums:
    def __init__(self, terms: Callable[[int], Fraction]):
        self.terms = terms
        self.sums = [Fraction(0)]
        self.lock = threading.Lock()

    def __call__(self, n: int) -> Fraction:
        with self.lock:
            while len(self.sums) <= n:
                k = len(self.sums)
                self.sums.append(self.sums[-1] + Fraction(self.terms(k)))
            return self.sums[n]


def series(terms: Callable[[int], Fraction], name: str = "series", **certificates) -> Sequence:
    """Sequence of partial sums ``sum(terms(k) for k in 1..n)``, summed exactly."""
    partial = _PartialSums(terms)
    return Sequence(
        name=name,
        term=lambda n: from_rational(partial(n)),
        value=partial,
        **certificates,
    )


# -- built-in families --------------------------------------------------------


def _finite_depth(a: Ordinal) -> int:
    a = as_ordinal(a)
    if not a.is_finite:
        raise ValueError(f"certificate only covers finite depths, got {a}")
    return int(a)


def constant(c: Union[SignExpansion, Fraction, int] = 1, name: str = "constant") -> Sequence:
    if not isinstance(c, SignExpansion):
        c = from_rational(c)
    return Sequence(
        name=name,
        term=lambda n: c,
        dom_pattern=DomPattern("constant", dom(c)),
        candidate_limit=c,
        stabilization_index=lambda a: 0,
        description=f"X_n = {c}",
    )


def _omega_coefficient(a: Ordinal) -> int:
    a = as_ordinal(a)
    inf = a.infinite_part
    if not inf:
        return 0
    if len(inf.terms) != 1 or inf.terms[0][0] != 1:
        raise ValueError(f"certificate only covers depths below w^2, got {a}")
    return inf.terms[0][1]


def _harmonic_n0(a: Ordinal) -> int:
    # H_n > ln(n + 1) > a - 1 once n + 1 > e^(a - 1)
    m = _finite_depth(a)
    return max(0, math.ceil(math.exp(m - 1)))


def builtin_families() -> dict[str, Sequence]:
    one_minus_eps = ONE_MINUS_EPSILON
    fams = [
        constant(1),
        Sequence(
            name="naturals",
            term=lambda n: from_ordinal(n),
            dom_pattern=DomPattern("increasing", OMEGA),
            candidate_limit=from_ordinal(OMEGA),
            stabilization_index=_finite_depth,
            description="X_n = n",
        ),
        Sequence(
            name="geometric",
            term=lambda n: from_dyadic(1 - Fraction(1, 2 ** n)),
            value=lambda n: 1 - Fraction(1, 2 ** n),
            dom_pattern=DomPattern("increasing", OMEGA),
            candidate_limit=one_minus_eps,
            stabilization_index=lambda a: max(0, _finite_depth(a) - 2),
            description="X_n = 1 - 1/2^n",
        ),
        Sequence(
            name="alternating",
            term=lambda n: from_dyadic(Fraction((-1) ** n, 2 ** n)),
            value=lambda n: Fraction((-1) ** n, 2 ** n),
            start=0,
            dom_pattern=DomPattern("increasing", OMEGA),
            oscillation_witness=(ZERO, "the first sign alternates"),
            description="X_n = (-1)^n / 2^n, n >= 0",
        ),
        Sequence(
            name="conway_fractions",
            term=lambda n: from_rational(Fraction(n, n + 1)),
            value=lambda n: Fraction(n, n + 1),
            dom_pattern=DomPattern("limsup", OMEGA),
            candidate_limit=one_minus_eps,
            # 1 - 1/2^(a-2) < n/(n+1) as soon as n >= 2^(a-2)
            stabilization_index=lambda a: max(0, 2 ** (_finite_depth(a) - 2) - 1),
            description="X_n = n/(n+1)",
        ),
        Sequence(
            name="omega_multiples",
            term=lambda n: from_ordinal(omega_power(1, n)),
            dom_pattern=DomPattern("increasing", omega_power(2)),
            candidate_limit=from_ordinal(omega_power(2)),
            stabilization_index=_omega_coefficient,
            notes=({
                "kind": "erratum",
                "subject": "limit birthday of X_n = n*w",
                "published_value": "w^w",
                "computed_value": "w^2",
                "reason": "dom(n*w) = w*n, whose limit superior w^2 is already a limit ordinal",
            },),
            description="X_n = n*w = +^(w*n)",
        ),
        Sequence(
            name="spike",
            term=_spike_term,
            dom_pattern=DomPattern("spikes", OMEGA),
            candidate_limit=from_ordinal(OMEGA),
            stabilization_index=lambda a: _finite_depth(a) + 1,
            description="birthdays 1, w^w, 2, 3, 4, ...",
        ),
        series(lambda k: 1, name="ones_series",
               dom_pattern=DomPattern("increasing", OMEGA),
               candidate_limit=from_ordinal(OMEGA),
               stabilization_index=_finite_depth,
               description="partial sums of 1 + 1 + 1 + ..."),
        series(lambda k: Fraction(1, k), name="harmonic_series",
               dom_pattern=DomPattern("spikes", OMEGA),
               candidate_limit=from_ordinal(OMEGA),
               stabilization_index=_harmonic_n0,
               notes=({
                   "kind": "discrepancy",
                   "subject": "harmonic series",
                   "published_claim": "divergent",
                   "computed_verdict": "converged to +^w",
                   "reason": ("at every finite depth a the partial sums exceed a - 1 eventually, "
                              "so their first a signs are all +; the fractional part never "
                              "enters the convergence condition"),
               },),
               description="partial sums of 1 + 1/2 + 1/3 + ..."),
    ]
    return {s.name: s for s in fams}


def _spike_term(n: int) -> SignExpansion:
    if n == 2:
        return from_ordinal(omega_power(OMEGA))
    return from_ordinal(1 if n == 1 else n - 1)


def get_family(name: str) -> Sequence:
    fams = builtin_families()
    if name not in fams:
        raise KeyError(f"unknown family {name!r}; choose from {', '.join(fams)}")
    return fams[name]
