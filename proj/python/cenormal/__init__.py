"""Digit streams, strong-normality statistics and exact oracles for
generalized Copeland-Erdos numbers."""

from ._core import (
    CapExceeded,
    CenormalError,
    DomainError,
    OverflowError,
    ParseError,
    SequenceExhausted,
    SequenceSpec,
    StreamCursor,
    UndefinedStatistic,
    alpha_threshold,
    comparison_deficit,
    count_digits,
    d_exact,
    d_leading,
    digit_length,
    excess_lower_bound,
    hypothesis_report,
    lil_bound,
    lil_statistic,
    ones_exact_champernowne,
    ones_excess_leading,
    repetitions,
    to_digits,
    trajectory,
    verify_champernowne,
)


def digits(spec: str, base: int, c=1, n: int = 0) -> list[int]:
    """First n digits of xi_{A,b,c} for the sequence spec string A."""
    return StreamCursor(spec, base, c).read(n)


__all__ = [name for name in dir() if not name.startswith("_")]
