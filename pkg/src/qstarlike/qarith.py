"""Scalar q-arithmetic: q-numbers, q-factorials, q-Pochhammer symbols, integer Gamma_q.

All functions are pure and operate on plain Python scalars at double
precision (the single global precision choice for the whole package).
They are safe to call concurrently from any number of threads.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = [
    "LambdaConvention",
    "QContext",
    "q_number",
    "q_number_real",
    "q_factorial",
    "q_pochhammer",
    "q_gamma_int",
]


class LambdaConvention(enum.Enum):
    """Normalization used for the convolution-kernel coefficients.

    LIMIT_CONSISTENT makes the kernel tend to z^p / (1-z)^(mu+1) as q -> 1-,
    so the operator reduces to the classical Ruscheweyh convolution.
    PAPER_LITERAL keeps the raw shifted-index normalization; it does not
    reproduce that limit and is retained for fidelity studies only.
    """

    LIMIT_CONSISTENT = "limit"
    PAPER_LITERAL = "literal"


def _check_q(q: float) -> float:
    q = float(q)
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must lie strictly inside (0, 1), got {q}")
    return q


@dataclass(frozen=True)
class QContext:
    """Parameter bundle (p, q, mu) plus the kernel normalization flag.

    p is the valence (leading exponent z^p), q the deformation parameter,
    mu the kernel order.  Every operator and bound in the package is a
    function of this context.
    """

    p: int
    q: float
    mu: float
    lambda_convention: LambdaConvention = LambdaConvention.LIMIT_CONSISTENT

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool) or self.p < 1:
            raise ValueError(f"p must be an integer >= 1, got {self.p!r}")
        _check_q(self.q)
        if not float(self.mu) > -1.0:
            raise ValueError(f"mu must exceed -1, got {self.mu}")


def q_number(n: int, q: float) -> float:
    """[n, q] = 1 + q + ... + q^(n-1), with [0, q] = 0.

    Computed as the explicit power sum rather than (1 - q^n)/(1 - q): the
    closed form cancels catastrophically as q -> 1-, and the classical-limit
    regressions push q to 1 - 1e-8.
    """
    _check_q(q)
    if n != int(n) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    total = 0.0
    power = 1.0
    for _ in range(int(n)):
        total += power
        power *= q
    return total


def q_number_real(x: float, q: float) -> float:
    """[x, q] = (1 - q^x)/(1 - q) for real x > 0.

    Integer x dispatches to the power sum so the two agree exactly; the
    general case goes through expm1/log, which stays accurate near q = 1.
    """
    _check_q(q)
    x = float(x)
    if x <= 0.0:
        raise ValueError(f"x must be positive, got {x}")
    if x.is_integer():
        return q_number(int(x), q)
    return -math.expm1(x * math.log(q)) / (1.0 - q)


def q_factorial(n: int, q: float) -> float:
    """[n, q]! = [1, q] [2, q] ... [n, q], with [0, q]! = 1.

    Defined only for n = 0 or positive integers; anything else is rejected.
    """
    _check_q(q)
    if n != int(n) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    result = 1.0
    for j in range(1, int(n) + 1):
        result *= q_number(j, q)
    return result


def q_pochhammer(x: float, n: int, q: float) -> float:
    """[x, q]_n = [x, q] [x+1, q] ... [x+n-1, q] for x > 0, with empty product 1."""
    _check_q(q)
    if n != int(n) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    if float(x) <= 0.0:
        raise ValueError(f"x must be positive, got {x}")
    result = 1.0
    for j in range(int(n)):
        result *= q_number_real(float(x) + j, q)
    return result


def q_gamma_int(n: int, q: float) -> float:
    """Gamma_q at a positive integer: Gamma_q(n) = [n-1, q]!.

    Fixed by Gamma_q(1) = 1 and the recurrence Gamma_q(x+1) = [x, q] Gamma_q(x)
    restricted to integers; non-integer arguments are out of scope.
    """
    if n != int(n) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    return q_factorial(int(n) - 1, q)
