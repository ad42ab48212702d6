"""Surreal numbers as sign expansions, and a sign-expansion notion of limits."""

from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    DomPattern,
    Ordinal,
    add_ord,
    cmp_ord,
    divmod_by_finite,
    is_limit,
    least_limit_geq,
    left_sub,
    limsup_declared,
    mul_fin_ord,
    omega_power,
)
from .surreal import (
    EMPTY,
    EPSILON,
    HALF_OMEGA,
    MINUS,
    OMEGA_MINUS_ONE,
    OMEGA_NUMBER,
    OMEGA_PLUS_ONE,
    ONE_MINUS_EPSILON,
    PLUS,
    SQRT_OMEGA,
    TWO_OMEGA,
    Sign,
    SignExpansion,
    add,
    compare,
    dom,
    first_difference,
    from_dyadic,
    from_ordinal,
    from_rational,
    is_simpler,
    left_options,
    negate,
    restrict,
    right_options,
    sign_at,
    simplest_between,
    to_dyadic,
    to_rational,
)
from .notation import NotationError, format_surreal, parse_ordinal, parse_surreal
from .limits import (
    Converged,
    Inconclusive,
    LimitConfig,
    NoLimit,
    NotUnique,
    Sequence,
    birthday_probe,
    builtin_families,
    check_limit,
    limit_birthday,
    series,
    verify_candidate,
)

__version__ = "0.1.0"
