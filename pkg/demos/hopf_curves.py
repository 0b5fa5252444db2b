"""hopf_curves.py

Critical-gain curves of the scalar unstable equation

    x'(t) = a x(t) + k [x(t) - x(t - T)],        a > 0,

and the crossing law that makes them useful.  A complex gain k puts a
characteristic root exactly at i*omega when k = (i*omega - a) / (1 -
exp(-i*omega*T)); sweeping omega through one period-window of the
exponential yields one curve ("branch") per window.  Two facts are worth
seeing numerically:

  * along every branch the real part of the critical gain strictly
    decreases as omega grows, so each branch is a graph over the real
    axis and the branches never fold back;

  * stepping across a branch transversally changes the number of
    right-half-plane roots by exactly 2 (a complex pair crosses the
    axis), never by 1, which is the arithmetic behind the persistent
    instability of this family.
"""

import numpy as np

from pyrastab import critical_gain, hopf_curves, unstable_count_for_gain

RATE = 0.05
DELAY = 2.0 * np.pi


def main() -> None:
    family = hopf_curves(RATE, DELAY, branches=(0, 1, 2), samples=200)

    print(f"scalar rate a = {RATE}, delay T = {DELAY:.6f}")
    print()
    print("branch   omega window          Re k* range               monotone")
    for branch in family.branches:
        re = branch.gains.real
        drops = np.all(np.diff(re) < 0.0)
        print(
            f"  {branch.index}      [{branch.omegas[0]:7.4f}, {branch.omegas[-1]:7.4f}]"
            f"   [{re[-1]:+9.5f}, {re[0]:+9.5f}]   {'yes' if drops else 'NO'}"
        )

    # probe the crossing law at mid-branch points: counts on the two sides
    # of the curve differ by exactly 2, the larger count on the +delta side
    print()
    print("crossing probes (delta = 1e-3 relative):")
    print("branch  omega     k*                     left  right")
    base = 2.0 * np.pi / DELAY
    for m in (0, 1, 2):
        omega = (m + 0.5) * base
        k_star = complex(critical_gain(RATE, DELAY, omega))
        delta = 1e-3 * max(1.0, abs(k_star))
        left = unstable_count_for_gain(RATE, DELAY, k_star - delta)
        right = unstable_count_for_gain(RATE, DELAY, k_star + delta)
        print(
            f"  {m}     {omega:6.3f}   {k_star.real:+8.5f} {k_star.imag:+8.5f}i"
            f"   {left:3d}   {right:3d}   (jump {right - left:+d})"
        )

    print()
    print("every jump is +2: no real gain, however tuned, can walk the count")
    print("from odd to zero, because each crossing retires roots in pairs.")


if __name__ == "__main__":
    main()
