"""Closed-form coefficient and functional bounds, and the functionals they cap.

Everything here is a pure calculator: given a QContext and JanowskiParams it
returns the sharp-constant side of an inequality; the observed side comes
from a concrete series (usually an oracle-generated member).
"""
from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass

import numpy as np

from .classify import JanowskiParams
from .operators import lambda_coeff
from .qarith import LambdaConvention, QContext, q_number, q_number_real
from .series import NormalizedMember

__all__ = [
    "PsiTable",
    "BoundReport",
    "BOUND_TOL",
    "psi",
    "psi_values",
    "psi_table",
    "coeff_bound",
    "fekete_szego_bound",
    "fekete_szego_value",
    "third_functional_value",
    "third_functional_bound",
    "bernardi_coeff_bound",
    "bernardi_fekete_bound",
    "make_report",
    "member_majorant",
    "write_csv",
]

#: Absolute tolerance for bound-vs-observed comparisons at double precision.
BOUND_TOL = 1e-9


def psi(n: int, ctx: QContext) -> float:
    """psi_n = [p,q] / ([n+p,q] - [p,q]).

    The denominator is evaluated through the exact identity
    [n+p,q] - [p,q] = q^p [n,q], which avoids cancellation as q -> 1-.
    """
    if n != int(n) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    q = ctx.q
    return q_number(ctx.p, q) / (q**ctx.p * q_number(int(n), q))


def psi_values(ctx: QContext, order: int) -> np.ndarray:
    return np.array([psi(n, ctx) for n in range(1, order + 1)])


@dataclass(frozen=True)
class PsiTable:
    """psi_1 .. psi_N; positive and strictly decreasing, tending to p/n as q -> 1-."""

    ctx: QContext
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=float, copy=True).reshape(-1)
        if arr.size and (not np.all(arr > 0.0) or np.any(np.diff(arr) >= 0.0)):
            raise ValueError("psi values must be positive and strictly decreasing")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)


def psi_table(ctx: QContext, order: int) -> PsiTable:
    return PsiTable(ctx, psi_values(ctx, order))


def coeff_bound(n: int, ctx: QContext, jp: JanowskiParams) -> float:
    """Growth cap for |a_(p+n)| over the whole class.

    n = 1: (A-B) psi_1 / Lambda_(p+1); for n >= 2 the same with the product
    prod_(t<n) (1 + (A-B) psi_t), each factor being 1 + (A-B) psi_t since
    [p,q](A-B) / ([p+t,q] - [p,q]) = (A-B) psi_t.
    """
    if n != int(n) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    span = jp.A - jp.B
    value = span * psi(n, ctx) / lambda_coeff(n, ctx)
    for t in range(1, int(n)):
        value *= 1.0 + span * psi(t, ctx)
    return value


def fekete_szego_bound(lam: complex, ctx: QContext, jp: JanowskiParams) -> float:
    """Cap for |a_(p+2) - lam a_(p+1)^2| over the class, lam complex.

    The brace in the source inequality is read as max{1, |upsilon|}; any
    other reading makes the underlying quadratic-coefficient lemma unusable.
    """
    span = jp.A - jp.B
    psi1, psi2 = psi(1, ctx), psi(2, ctx)
    lam1, lam2 = lambda_coeff(1, ctx), lambda_coeff(2, ctx)
    upsilon = (jp.B - span * psi1) + (lam2 * psi1**2 / (lam1**2 * psi2)) * span * complex(lam)
    return span * psi2 / lam2 * max(1.0, abs(upsilon))


def fekete_szego_value(f: NormalizedMember, lam: complex) -> float:
    """|a_(p+2) - lam a_(p+1)^2| for a concrete series."""
    if f.series.trunc_order < 2:
        raise ValueError("series must retain at least two coefficients past the lead")
    a1 = f.series.coeffs[1]
    a2 = f.series.coeffs[2]
    return abs(a2 - complex(lam) * a1 * a1)


def third_functional_value(f: NormalizedMember, ctx: QContext | None = None) -> float:
    """The third-coefficient functional
    |a_(p+3) - ((q+2)/(q^2+q+1)) (L1 L2 / L3) a_(p+2) a_(p+1) + (1/[3,q]) (L1^3 / L3) a_(p+1)^3|

    with L_n the kernel coefficients of the active convention.  The two
    rational factors are exactly psi_3 (1/psi_1 + 1/psi_2) and psi_3 / psi_1,
    which is what collapses the functional onto the cubic-coefficient lemma.
    """
    ctx = ctx or f.ctx
    if f.series.trunc_order < 3:
        raise ValueError("series must retain at least three coefficients past the lead")
    q = ctx.q
    a1, a2, a3 = f.series.coeffs[1], f.series.coeffs[2], f.series.coeffs[3]
    l1, l2, l3 = (lambda_coeff(n, ctx) for n in (1, 2, 3))
    c2 = (q + 2.0) / (q * q + q + 1.0)
    c3 = 1.0 / q_number(3, q)
    return abs(a3 - c2 * (l1 * l2 / l3) * a2 * a1 + c3 * (l1**3 / l3) * a1**3)


def third_functional_bound(ctx: QContext, jp: JanowskiParams) -> float:
    """(A-B) (4(2B-1)^2 + 1) / (8 Lambda_(p+3)) psi_3.

    4(2B-1)^2 + 1 = 16B^2 - 16B + 5 identically.  The derivation behind this
    constant needs B <= -1/4; for larger B the formula undershoots and the
    inequality can fail (see tests for a concrete witness).
    """
    span = jp.A - jp.B
    factor = (4.0 * (2.0 * jp.B - 1.0) ** 2 + 1.0) / 8.0
    return span * factor * psi(3, ctx) / lambda_coeff(3, ctx)


def bernardi_coeff_bound(n: int, bp, jp: JanowskiParams) -> float:
    """coeff_bound(n) shrunk by the Bernardi factor [eta+p,q]/[eta+p+n,q]."""
    ctx = bp.ctx
    factor = q_number_real(bp.eta + ctx.p, ctx.q) / q_number_real(bp.eta + ctx.p + n, ctx.q)
    return factor * coeff_bound(n, ctx, jp)


def bernardi_fekete_bound(sigma: complex, bp, jp: JanowskiParams) -> float:
    """Cap for |b_(p+2) - sigma b_(p+1)^2| after the Bernardi transform.

    Equals ([eta+p,q]/[eta+p+2,q]) * fekete_szego_bound at the effective
    lam = sigma [eta+p,q][eta+p+2,q]/[eta+p+1,q]^2.
    """
    ctx = bp.ctx
    q = ctx.q
    e0 = q_number_real(bp.eta + ctx.p, q)
    e1 = q_number_real(bp.eta + ctx.p + 1, q)
    e2 = q_number_real(bp.eta + ctx.p + 2, q)
    effective = complex(sigma) * e0 * e2 / (e1 * e1)
    return (e0 / e2) * fekete_szego_bound(effective, ctx, jp)


@dataclass(frozen=True)
class BoundReport:
    """Observed functional value vs. its bound; slack = bound - value."""

    functional_value: float
    bound: float
    satisfied: bool
    slack: float


def make_report(value: float, bound: float, tol: float = BOUND_TOL) -> BoundReport:
    slack = bound - value
    return BoundReport(value, bound, slack >= -tol, slack)


def member_majorant(ctx: QContext, jp: JanowskiParams, safety: float = 1.05) -> tuple[float, float]:
    """Geometric envelope (c, s) with coeff_bound(n) <= c * s^(n+p) for all n >= 1.

    s is the asymptotic step ratio of the bound sequence times a safety
    margin; c is the maximum of bound_n / s^(n+p) over a scan long enough
    that the stepwise ratio has settled below s (asserted on the scan tail).
    Intended as the majorant argument of series.tail_bound for class members.
    """
    span = jp.A - jp.B
    q, p = ctx.q, ctx.p
    # psi_n decreases to [p,q](1-q)/q^p, so the bound's step ratio tends
    # to 1 + span*psi_inf; the scan runs in log space to dodge overflow
    psi_inf = q_number(p, q) * (1.0 - q) / q**p
    s = safety * (1.0 + span * psi_inf)
    log_s = math.log(s)
    shift = p if ctx.lambda_convention is LambdaConvention.PAPER_LITERAL else 0
    log_bound = math.log(coeff_bound(1, ctx, jp))
    c = math.exp(log_bound - (1 + p) * log_s)
    psi_n = psi(1, ctx)
    scan = 384
    steps = []
    for n in range(1, scan + 1):
        psi_next = psi(n + 1, ctx)
        lam_ratio = q_number(n + 1 + shift, q) / q_number_real(ctx.mu + n + 1 + shift, q)
        step = (psi_next / psi_n) * lam_ratio * (1.0 + span * psi_n)
        steps.append(step)
        log_bound += math.log(step)
        c = max(c, math.exp(log_bound - (n + 1 + p) * log_s))
        psi_n = psi_next
    if not all(st < s for st in steps[-16:]):
        raise ValueError("majorant ratio not dominant after scan; increase safety")
    return c, s


def write_csv(rows: list[dict], dest, columns: list[str]) -> None:
    """CSV with '.' decimal separator and 15 significant digits, unconditionally."""

    def fmt(v):
        if isinstance(v, float):
            return f"{v:.15g}"
        return v

    def _write(fh):
        writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: fmt(row[k]) for k in columns})

    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            _write(fh)
    elif isinstance(dest, io.TextIOBase) or hasattr(dest, "write"):
        _write(dest)
    else:
        raise TypeError(f"cannot write CSV to {type(dest)!r}")
