"""A quick tour of the scalar q-calculus layer and the series operators.

Walks from q-numbers to the convolution operator and its classical limit:
as q -> 1- every q-quantity collapses onto its ordinary counterpart, which
is the main sanity anchor the package is tested against.

Run:  python3 demos/q_calculus_tour.py
"""
import numpy as np

from qstarlike import (
    QContext,
    TruncSeries,
    apply_L,
    NormalizedMember,
    evaluate,
    lambda_coeff,
    q_derivative,
    q_factorial,
    q_gamma_int,
    q_number,
    q_pochhammer,
    ruscheweyh_classical,
)

print("q-numbers [n, q] interpolate the integers:")
for q in (0.3, 0.9, 0.999, 1 - 1e-8):
    row = "  q = {:<10g}".format(q) + "  ".join(
        f"[{n}]={q_number(n, q):.6f}" for n in (1, 2, 3, 5)
    )
    print(row)

print("\nfactorials and friends at q = 0.5:")
print("  [3,q]! =", q_factorial(3, 0.5), " (1 * 1.5 * 1.75)")
print("  [2,q]_2 =", q_pochhammer(2, 2, 0.5), " ([2][3])")
print("  Gamma_q(4) =", q_gamma_int(4, 0.5), " (= [3,q]!)")

print("\nthe q-derivative acts termwise, c_k z^k -> [k,q] c_k z^(k-1):")
f = TruncSeries(1, [1, 1, 1])
print("  d_q(z + z^2 + z^3) at q=0.5 ->", np.round(q_derivative(f, 0.5).coeffs.real, 4))
z = 0.3 + 0.2j
lhs = evaluate(q_derivative(f, 0.5), z)
rhs = (evaluate(f, z) - evaluate(f, 0.5 * z)) / (z * 0.5)
print("  difference-quotient check:", abs(lhs - rhs))

print("\nkernel coefficients tend to the binomial weights of (1-z)^-(mu+1):")
for n in (1, 2, 3):
    near_one = lambda_coeff(n, QContext(1, 1 - 1e-8, 2.0))
    classical = np.prod([(3.0 + j) / (1.0 + j) for j in range(n)])
    print(f"  n={n}:  q->1 value {near_one:.6f}   classical (mu+1)_n/n! = {classical:.6f}")

print("\noperator vs. its classical convolution limit (q = 1 - 1e-6, mu = 2.5):")
ctx = QContext(2, 1 - 1e-6, 2.5)
member = NormalizedMember(ctx, TruncSeries(2, [1, 0.4, 0.1, 0.02]))
lq = apply_L(member)
classical = ruscheweyh_classical(member.series, 2.5)
dev = np.max(np.abs(lq.coeffs - classical.coeffs) / np.abs(classical.coeffs))
print("  max relative coefficient deviation:", dev)
