"""floquet_modes.py

Floquet decomposition of a periodic linear system.

The fundamental solution of x'(t) = A(t) x(t) with A periodic of period
T factors as Y(t) = P(t) exp(B t) with P itself T-periodic; the
eigenvalues of the monodromy Y(T) (the multipliers) equal exp(sigma(B) T).
This script computes the decomposition for a system built around a known
orbit -- coefficient A(t) = R'(t) R(t)^-1 + R(t) D R(t)^-1 with R a
rotation and D = diag(0.1, -0.2) -- so every quantity has a closed form
to compare against:

    multipliers      exp(0.1 T), exp(-0.2 T)
    generator eigs   0.1, -0.2 (up to the logarithm's branch)

The construction uses plain RK4 on the matrix equation plus a Schur-based
principal logarithm, both checked against their own refinement estimates.
"""

import numpy as np

from pyrastab import floquet_decompose, multipliers, ode_monodromy
from pyrastab.benchmarks import get_case


def main() -> None:
    problem = get_case("orbit-unstable").problem()
    period = problem.period

    mono = ode_monodromy(problem)
    print(f"period T = {period:.6f}, dimension {problem.dimension}")
    print(f"monodromy step-doubling error estimate: {mono.error_estimate:.2e}")
    print()

    dec = floquet_decompose(mono)
    print("generator B = log(Y(T)) / T, residual of exp(BT) vs Y(T):",
          f"{dec.log_residual:.2e}")
    print("branch points (multiplier -> principal exponent):")
    for bp in dec.branches:
        tag = "  [on the log branch cut]" if bp.on_negative_axis else ""
        print(f"  {bp.multiplier:+.6f}  ->  {bp.exponent:+.6f}{tag}")
    print()

    # closed forms for this construction
    want = sorted(np.exp(np.array([0.1, -0.2]) * period))
    got = sorted(np.abs(np.linalg.eigvals(mono.matrix)))
    print("multipliers vs exp(diag * T):")
    for g, w in zip(got, want):
        print(f"  {g:12.6f}   vs {w:12.6f}   (gap {abs(g - w):.2e})")
    print()

    # P must be T-periodic and reconstruct Y everywhere, not only at T
    worst_p = worst_y = 0.0
    for t in np.linspace(0.0, period, 16):
        p_t = dec.periodic_factor(t)
        worst_p = max(worst_p, np.linalg.norm(dec.periodic_factor(t + period) - p_t))
        worst_y = max(
            worst_y, np.linalg.norm(mono.value_at(t) - p_t @ dec.exponential_factor(t))
        )
    print(f"max |P(t+T) - P(t)| over 16 samples:      {worst_p:.2e}")
    print(f"max |Y(t) - P(t) exp(Bt)| over 16 samples: {worst_y:.2e}")
    print()

    report = multipliers(mono)
    print("clustered multiplier report:")
    print(f"  outside unit circle: {report.outside_count}")
    print(f"  on the circle:       {report.circle_count}")
    print(f"  at 1 (alg, geo):     ({report.unit_algebraic}, {report.unit_geometric})")
    print(f"  real > 1 count:      {report.real_greater_one()}")


if __name__ == "__main__":
    main()
