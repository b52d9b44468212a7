"""Closed-form false-positive, fill and clash model for all filter kinds."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

LN2 = math.log(2)


class OutOfModelError(ValueError):
    """A first-order clash sum exceeded 1 and no longer approximates a probability."""


@dataclass(frozen=True)
class FilterParams:
    m: int
    n: int
    k: float

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")
        if not self.k > 0:
            raise ValueError(f"k must be positive, got {self.k}")


def _log_zero_survival(p: FilterParams) -> float:
    # log of (1 - 1/m)^(k n), stable for huge m and n
    return p.k * p.n * math.log1p(-1.0 / p.m)


def expected_foz(p: FilterParams) -> float:
    if p.m < 2:
        raise ValueError("expected fraction of zeros needs m >= 2")
    return math.exp(_log_zero_survival(p))


def fpr_exact(p: FilterParams) -> float:
    """``(1 - (1 - 1/m)^(kn))^k``, evaluated in log space."""
    if p.m < 2:
        raise ValueError("exact false-positive rate needs m >= 2")
    if p.n == 0:
        return 0.0
    ones = -math.expm1(_log_zero_survival(p))
    return math.exp(p.k * math.log(ones))


def fpr_approx(p: FilterParams) -> float:
    """``(1 - exp(-kn/m))^k``."""
    if p.n == 0:
        return 0.0
    ones = -math.expm1(-p.k * p.n / p.m)
    return math.exp(p.k * math.log(ones))


def optimal_k(m: int, n: int) -> float:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return m / n * LN2


def fpr_rational(foz: float, k: float) -> float:
    """FPR of a rational filter whose bits have fraction of zeros ``foz``.

    A random non-member probes ``floor(k)`` bits, plus one more with
    probability ``k - floor(k)``.
    """
    whole = math.floor(k)
    frac = k - whole
    return (1.0 - foz) ** whole * (1.0 - frac * foz)


def expected_foz_rational(m: int, n: int, k: float) -> float:
    """Expected fraction of zeros after ``n`` inserts into a rational filter.

    Each insert probes ``floor(k)`` bits and, with probability
    ``k - floor(k)``, one more. Equals ``(1 - 1/m)^(kn)`` for integer ``k``
    and stays exact for one-bit blocks.
    """
    if m < 1 or n < 0 or k < 0:
        raise ValueError(f"invalid parameters m={m}, n={n}, k={k}")
    whole = math.floor(k)
    frac = k - whole
    if m == 1 and whole:
        return float(n == 0)
    per_insert = (whole * math.log1p(-1.0 / m) if whole else 0.0) + math.log1p(-frac / m)
    return math.exp(n * per_insert)


def fpr_block_product(blocks: Sequence[tuple[int, float]], n: int) -> float:
    """Product of per-block ``fpr_approx`` for ``(size, k_j)`` blocks sharing ``n``."""
    if not blocks:
        raise ValueError("need at least one block")
    out = 1.0
    for size, k in blocks:
        out *= fpr_approx(FilterParams(size, n, k))
    return out


def fpr_block_rational(blocks: Sequence[tuple[int, float]], n: int) -> float:
    """Block product using the rational model with each block's expected fill."""
    if not blocks:
        raise ValueError("need at least one block")
    out = 1.0
    for size, k in blocks:
        out *= fpr_rational(expected_foz_rational(size, n, k), k)
    return out


def _clash_sum(m: int, k: int) -> float:
    return k * (k - 1) / 2 / m


def _clash_interp(m: int, k: float) -> float:
    # linear interpolation between the bracketing integer hash counts
    lo = math.floor(k)
    frac = k - lo
    value = _clash_sum(m, lo)
    if frac:
        value += frac * (_clash_sum(m, lo + 1) - value)
    return value


def clash_prob_standard(m: int, k: float) -> float:
    """Sum over ``i < k`` of ``i / m``: chance that two probes of one element coincide."""
    if m < 1 or not k >= 1:
        raise ValueError(f"need m >= 1 and k >= 1, got m={m}, k={k}")
    value = _clash_interp(m, k)
    if value > 1.0:
        raise OutOfModelError(f"clash sum {value:.3f} > 1 for m={m}, k={k}")
    return value


def clash_prob_block(blocks: Sequence[tuple[int, float]]) -> float:
    if not blocks:
        raise ValueError("need at least one block")
    value = 0.0
    for size, k in blocks:
        if size < 1 or k < 0:
            raise ValueError(f"invalid block ({size}, {k})")
        value += _clash_interp(size, k) if k >= 1 else 0.0
    if value > 1.0:
        raise OutOfModelError(f"block clash sum {value:.3f} > 1")
    return value
