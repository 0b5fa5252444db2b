"""persistent_root.py

The real root that no gain removes.

For x' = a x + k [x(t) - x(t-T)] with a > 0, the function
h(m) = m - a - k (1 - exp(-mT)) satisfies h(0) = -a < 0 and h(m) -> +inf
as m grows, so a real root m > 0 exists for *every* real k; the feedback
moves it around but cannot push it across the axis.  The first table
sweeps the gain and locates that root with certified multiplicity.

The matrix analogue replaces parity-by-hand with a homotopy: scale the
feedback by alpha from 0 to 1, track the certified right-half-plane
count, and watch it stay positive.  Roots can leave only through the
imaginary axis in conjugate pairs, so an odd count at alpha = 0 (here
one unstable direction of a 3x3 saddle) forces at least one unstable
root at alpha = 1 regardless of the gain matrix.
"""

import numpy as np

from pyrastab import CharacteristicMatrix, Region, find_roots, homotopy_trace

A = 0.05
DELAY = 2.0 * np.pi


def main() -> None:
    print(f"scalar rate a = {A}, delay T = {DELAY:.4f}")
    print()
    print("  gain k     real unstable root")
    for k in np.linspace(-2.0, 2.0, 9):
        cm = CharacteristicMatrix(np.array([[A]]), np.array([[k]]), DELAY)
        region = Region(1e-8, A + 2.0 * abs(k) + 1.2, 0.5)
        report = find_roots(cm, region)
        real = [r for r in report.all_roots if abs(r.value.imag) < 1e-9]
        root = max(real, key=lambda r: r.value.real)
        print(f"  {k:+6.2f}     {root.value.real:.10f}")
    print()

    rng = np.random.default_rng(7)
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    jac = q @ np.diag([1.0, -1.0, -2.0]) @ q.T
    gain = 0.4 * rng.standard_normal((3, 3))
    print("3x3 saddle (eigenvalues 1, -1, -2) under a random dense gain;")
    print("right-half-plane count along the feedback homotopy:")
    trace = homotopy_trace(CharacteristicMatrix(jac, gain, DELAY))
    print("  alpha:", "  ".join(f"{a:.3f}" for a in trace.alphas))
    print("  count:", "  ".join(f"{c:5d}" for c in trace.unstable_counts()))
    print()
    print("the count never touches zero: an odd starting parity is a")
    print("topological obstruction, not a tuning problem.")


if __name__ == "__main__":
    main()
