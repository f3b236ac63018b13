"""Terminating hypergeometric series and log-domain combinatorics.

Every closed form in this package bottoms out in one of two terminating
series: Kummer's confluent 1F1(-m; b; z) with a nonpositive-integer first
parameter, or Gauss' 2F1(-m1, -m2; c; z) with two nonpositive-integer
upper parameters.  In the parameter ranges the model actually uses
(z = -N*cot(theta)**2 <= 0 for 1F1, z in [0, 1] with c >= 1 for 2F1)
every term of both series is nonnegative, so the sums are free of
cancellation and can be accumulated in the log domain.  That keeps them
finite and accurate for atom numbers far beyond what raw factorials allow.

All evaluators track term signs anyway, so they remain correct for
arguments outside the same-sign regime (at reduced accuracy if
cancellation occurs there).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "TerminatingSeriesResult",
    "kummer_1f1_neg",
    "kummer_1f1_neg_detailed",
    "kummer_1f1_neg_log",
    "gauss_2f1_negneg",
    "gauss_2f1_negneg_detailed",
    "gauss_2f1_negneg_log",
    "log_binomial",
]


@dataclass(frozen=True)
class TerminatingSeriesResult:
    """Value of a terminating hypergeometric sum.

    ``terms_summed`` is the length of the terminating series, i.e. the
    degree of the terminating parameter plus one (trailing exact zeros,
    as for z = 0, are counted as summed).
    """

    value: float
    terms_summed: int


def _check_nonneg_int(value: int, name: str) -> int:
    if not isinstance(value, (int,)) or isinstance(value, bool) or value < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
    return value


def _signed_log_sum(signs: list[float], logs: list[float]) -> tuple[float, float]:
    """Return (sign, log|sum|) of sum_i signs[i] * exp(logs[i])."""
    top = max(logs)
    if top == -math.inf:
        return 0.0, -math.inf
    acc = 0.0
    for s, l in zip(signs, logs):
        acc += s * math.exp(l - top)
    if acc == 0.0:
        return 0.0, -math.inf
    return math.copysign(1.0, acc), top + math.log(abs(acc))


def _sum_terminating(ratio_num, ratio_den, n_terms: int) -> tuple[float, float]:
    """Sign-tracked log-domain sum of a terminating series.

    The series starts at 1 and the k-th to (k+1)-th term ratio is
    ratio_num(k) / ratio_den(k).  A zero denominator factor means the
    series hits a pole before terminating.
    """
    signs = [1.0]
    logs = [0.0]
    sign_t, log_t = 1.0, 0.0
    for k in range(n_terms - 1):
        num = ratio_num(k)
        den = ratio_den(k)
        if den == 0.0:
            raise ValueError(
                f"series parameter pole crossed at term {k + 1} (zero Pochhammer factor)"
            )
        if num == 0.0:
            break  # all remaining terms are exactly zero
        sign_t *= math.copysign(1.0, num) * math.copysign(1.0, den)
        log_t += math.log(abs(num)) - math.log(abs(den))
        signs.append(sign_t)
        logs.append(log_t)
    return _signed_log_sum(signs, logs)


def kummer_1f1_neg_log(m: int, b: float, z: float) -> tuple[float, float]:
    """(sign, log|value|) of 1F1(-m; b; z); useful when the value overflows."""
    _check_nonneg_int(m, "m")
    return _sum_terminating(
        lambda k: -(m - k) * z,
        lambda k: (b + k) * (k + 1),
        m + 1,
    )


def kummer_1f1_neg_detailed(m: int, b: float, z: float) -> TerminatingSeriesResult:
    sign, log_abs = kummer_1f1_neg_log(m, b, z)
    return TerminatingSeriesResult(value=sign * math.exp(log_abs), terms_summed=m + 1)


def kummer_1f1_neg(m: int, b: float, z: float) -> float:
    """Kummer's function 1F1(-m; b; z) for integer m >= 0.

    Evaluated as the finite sum sum_{k=0}^{m} (-m)_k z^k / ((b)_k k!),
    accumulated in the log domain with sign tracking.  Raises ValueError
    if b is a nonpositive integer whose pole lies inside the summation
    range (b + k = 0 for some k < m).
    """
    return kummer_1f1_neg_detailed(m, b, z).value


def gauss_2f1_negneg_log(m1: int, m2: int, c: float, z: float) -> tuple[float, float]:
    """(sign, log|value|) of 2F1(-m1, -m2; c; z)."""
    _check_nonneg_int(m1, "m1")
    _check_nonneg_int(m2, "m2")
    n_terms = min(m1, m2) + 1
    return _sum_terminating(
        lambda k: (m1 - k) * (m2 - k) * z,
        lambda k: (c + k) * (k + 1),
        n_terms,
    )


def gauss_2f1_negneg_detailed(m1: int, m2: int, c: float, z: float) -> TerminatingSeriesResult:
    sign, log_abs = gauss_2f1_negneg_log(m1, m2, c, z)
    return TerminatingSeriesResult(
        value=sign * math.exp(log_abs), terms_summed=min(m1, m2) + 1
    )


def gauss_2f1_negneg(m1: int, m2: int, c: float, z: float) -> float:
    """Gauss' function 2F1(-m1, -m2; c; z) for integers m1, m2 >= 0.

    Finite sum of min(m1, m2) + 1 terms; same log-domain accumulation and
    pole handling as :func:`kummer_1f1_neg`.
    """
    return gauss_2f1_negneg_detailed(m1, m2, c, z).value


def log_binomial(n: int, k: int) -> float:
    """Natural log of the binomial coefficient C(n, k)."""
    _check_nonneg_int(n, "n")
    _check_nonneg_int(k, "k")
    if k > n:
        raise ValueError(f"k must not exceed n, got k={k}, n={n}")
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
