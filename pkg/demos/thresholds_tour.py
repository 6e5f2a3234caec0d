"""Walk through the convergence thresholds of the knot partition function.

The alternating-knot partition function Z_a(beta) = sum over knots of
q^(-beta (Cr + g)) converges for beta above a threshold and diverges
below another; between them the counting bounds are silent.  This
script prints both thresholds for a sweep of weight bases q, checks the
defining equations behind the q = 2 constants, and locates the
crossover point where the exponential factor q^(-beta) starts to win
against the polynomial growth of the knot count.

Run:  python3 demos/thresholds_tour.py
"""

import math

from knotstat.partition import (
    beta_minus_rhs_constant,
    bound_gap_F,
    crossover_x,
    lambda_beta,
    threshold_beta_minus,
    threshold_beta_plus,
    threshold_beta_tilde,
    threshold_report,
)


def main() -> None:
    print("convergence thresholds by weight base")
    print(f"{'q':>6}  {'beta_plus':>10}  {'beta_minus':>10}  {'beta~minus':>10}")
    for q in (2, 3, 5, 10, 31, 100, 1000):
        report = threshold_report(q)
        print(
            f"{q:>6}  {report.beta_plus:>10.4f}  {report.beta_minus:>10.4f}"
            f"  {report.beta_tilde_minus:>10.4f}"
        )

    print()
    beta_plus = threshold_beta_plus()
    print(f"beta_plus              = {beta_plus:.6f}  (q-independent)")
    rhs = beta_minus_rhs_constant()
    print(f"2 ln 20 - 6 ln ln 2    = {rhs:.6f}")
    bm2 = threshold_beta_minus(2)
    print(f"beta_minus(2)          = {bm2:.6f}")
    print(f"  residual of beta - 6 ln lambda_beta - rhs: "
          f"{bm2 - 6 * math.log(lambda_beta(bm2, 2)) - rhs:+.2e}")

    print()
    f2 = bound_gap_F(2)
    print(f"F(2)                   = {f2:.4f}  (gap between the bounds at q = 2)")
    x = crossover_x()
    print(f"crossover x            = {x:.6f}")
    print(f"  ln 2 - {rhs:.4f} ln x  = {math.log(2) - rhs * math.log(x):+.2e}")

    print()
    print("lambda_beta along the q = 2 axis (the Dirichlet-series root):")
    for beta in (1.0, threshold_beta_tilde(2), 2.0, 5.0, beta_plus):
        lam = lambda_beta(beta, 2)
        print(f"  beta = {beta:7.4f}   lambda = {lam:.10f}")


if __name__ == "__main__":
    main()
