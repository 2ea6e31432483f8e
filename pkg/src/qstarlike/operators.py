"""q-difference and convolution operators, classical limits, q-Bernardi integral.

The central object is the kernel Phi_p(q, mu; z) = z^p + sum Lambda_(n+p) z^(n+p)
and the operator L f = Phi_p * f (Hadamard product).  As q -> 1- with the
limit-consistent normalization, L reduces to the classical Ruscheweyh
convolution with z^p / (1-z)^(mu+1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qarith import LambdaConvention, QContext, q_number, q_number_real
from .series import NormalizedMember, TruncSeries, evaluate, hadamard

__all__ = [
    "LambdaTable",
    "BernardiParams",
    "q_derivative",
    "lambda_coeff",
    "lambda_table",
    "phi_kernel",
    "apply_L",
    "ruscheweyh_classical",
    "bernardi_series",
    "bernardi_jackson",
    "JACKSON_CUTOFF",
]

#: Jackson sums stop once q^k drops below this, or at the term cap.
JACKSON_CUTOFF = 1e-12


def _qnum_array(ks: np.ndarray, q: float) -> np.ndarray:
    # vectorized [k, q]; expm1/log keeps full accuracy near q = 1
    return -np.expm1(ks * math.log(q)) / (1.0 - q)


def q_derivative(f: TruncSeries, q: float) -> TruncSeries:
    """Termwise q-difference: c_k z^k -> [k, q] c_k z^(k-1).

    Agrees with the quotient (f(z) - f(qz)) / (z (1 - q)) at every point.
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must lie strictly inside (0, 1), got {q}")
    ks = np.arange(f.lead, f.lead + f.coeffs.size, dtype=float)
    scaled = _qnum_array(ks, q) * f.coeffs
    if f.lead >= 1:
        return TruncSeries(f.lead - 1, scaled)
    if scaled.size == 1:
        return TruncSeries(0, [0.0])
    return TruncSeries(0, scaled[1:])


def lambda_coeff(n: int, ctx: QContext) -> float:
    """Kernel coefficient Lambda at offset n >= 1 past the leading exponent.

    LIMIT_CONSISTENT: [mu+1, q]_n / [n, q]!  (tends to the binomial
    coefficients of (1-z)^-(mu+1) as q -> 1-, matching the stated kernel
    limit; equals 1 identically when mu = 0).
    PAPER_LITERAL: [mu+1, q]_(n+p) / [n+p, q]!  (shifted indexing; does not
    reproduce the classical limit, kept behind the flag for comparison).
    """
    if n != int(n) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    if ctx.lambda_convention is LambdaConvention.PAPER_LITERAL:
        m = int(n) + ctx.p
    else:
        m = int(n)
    # interleaved ratio product: the separate Pochhammer and factorial
    # products overflow for large m, the factorwise ratios never do (and at
    # mu = 0 every factor is exactly 1)
    value = 1.0
    for j in range(1, m + 1):
        value *= q_number_real(ctx.mu + float(j), ctx.q) / q_number(j, ctx.q)
    return value


@dataclass(frozen=True)
class LambdaTable:
    """Precomputed kernel coefficients Lambda_(p+1) .. Lambda_(p+N), all positive."""

    ctx: QContext
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=float, copy=True).reshape(-1)
        if arr.size and not np.all(arr > 0.0):
            raise ValueError("kernel coefficients must be positive")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)


def lambda_table(ctx: QContext, order: int) -> LambdaTable:
    """Lambda values for offsets n = 1 .. order (may be shared across threads)."""
    return LambdaTable(ctx, [lambda_coeff(n, ctx) for n in range(1, order + 1)])


def phi_kernel(ctx: QContext, order: int) -> TruncSeries:
    """The kernel series z^p + sum_(n>=1) Lambda_(n+p) z^(n+p), truncated."""
    coeffs = np.empty(order + 1, dtype=complex)
    coeffs[0] = 1.0
    coeffs[1:] = lambda_table(ctx, order).values
    return TruncSeries(ctx.p, coeffs)


def apply_L(f: NormalizedMember) -> TruncSeries:
    """L f = Phi_p * f: termwise scaling by Lambda, leading coefficient kept at 1."""
    kernel = phi_kernel(f.ctx, f.series.trunc_order)
    return hadamard(kernel, f.series)


def ruscheweyh_classical(f: TruncSeries, mu: float) -> TruncSeries:
    """Classical convolution with z^p / (1-z)^(mu+1): factor (mu+1)_n / n! at offset n.

    Independent limit oracle for apply_L; uses ordinary Pochhammer products.
    """
    if not mu > -1.0:
        raise ValueError(f"mu must exceed -1, got {mu}")
    out = np.array(f.coeffs, dtype=complex)
    fac = 1.0
    for n in range(1, out.size):
        fac *= (mu + n) / n
        out[n] *= fac
    return TruncSeries(f.lead, out)


@dataclass(frozen=True)
class BernardiParams:
    """Integral-averaging parameter eta > -p for the q-Bernardi operator."""

    eta: float
    ctx: QContext

    def __post_init__(self) -> None:
        if not float(self.eta) + self.ctx.p > 0.0:
            raise ValueError(f"eta must exceed -p = {-self.ctx.p}, got {self.eta}")


def bernardi_series(f: NormalizedMember, bp: BernardiParams) -> TruncSeries:
    """Series form of the q-Bernardi transform: scale offset n by [eta+p,q]/[eta+p+n,q]."""
    ctx = bp.ctx
    base = q_number_real(bp.eta + ctx.p, ctx.q)
    factors = np.array(
        [base / q_number_real(bp.eta + ctx.p + n, ctx.q) for n in range(f.series.coeffs.size)]
    )
    return TruncSeries(ctx.p, factors * f.series.coeffs)


def bernardi_jackson(
    f: NormalizedMember,
    bp: BernardiParams,
    z: complex,
    terms: int = 4096,
    allow_noninteger_eta: bool = False,
) -> complex:
    """Jackson-integral form: ([eta+p,q]/z^eta) * integral_0^z t^(eta-1) f(t) d_q t.

    The q-integral is the sum z (1-q) sum_k q^k g(q^k z) with g(t) = t^(eta-1) f(t),
    truncated once q^k < JACKSON_CUTOFF or after `terms` terms, whichever
    comes first.  Non-integer eta would need a branch choice for t^(eta-1);
    the default rejects it, and opting in uses principal powers.
    """
    if terms < 1:
        raise ValueError("terms must be positive")
    eta = float(bp.eta)
    integral_eta = eta.is_integer()
    if not integral_eta and not allow_noninteger_eta:
        raise ValueError(
            "non-integer eta needs allow_noninteger_eta=True (principal powers; experimental)"
        )
    ctx = bp.ctx
    z = complex(z)
    if z == 0.0:
        return 0.0 + 0.0j
    q = ctx.q
    total = 0.0 + 0.0j
    qk = 1.0
    for _ in range(terms):
        if qk < JACKSON_CUTOFF:
            break
        t = qk * z
        if integral_eta:
            tpow = t ** (int(eta) - 1)
        else:
            tpow = t ** (eta - 1.0)
        total += qk * tpow * evaluate(f.series, t)
        qk *= q
    jackson = z * (1.0 - q) * total
    if integral_eta:
        zpow = z ** int(eta)
    else:
        zpow = z**eta
    return q_number_real(eta + ctx.p, q) * jackson / zpow
