"""Characteristic spectra, exclusion rules, Hopf curves, and gain loci.

Scalar root oracles come from bisection on the real root equation
m = a + k (1 - exp(-m T)), which is independent of the contour-integral
machinery under test.  Two-dimensional rotation blocks are checked
against their complex scalarization.
"""

import numpy as np
import pytest
import scipy.optimize

from pyrastab.equilibria import (
    CharacteristicMatrix,
    Region,
    characteristic_matrix,
    check_resonance_invariance,
    count_roots,
    critical_gain,
    default_region,
    eigenvalue_locus,
    equilibrium_verdicts,
    find_roots,
    GainPath,
    homotopy_trace,
    hopf_curves,
    resonating_center,
    scalar_characteristic,
    unstable_count_for_gain,
)
from pyrastab.errors import InputError, NumericalError
from pyrastab.fields import LinearField
from pyrastab.problems import DelayFeedback, EquilibriumProblem


def _real_root_oracle(a, k, delay):
    hi = a + 2 * abs(k) + 1.0
    return scipy.optimize.brentq(
        lambda m: m - a - k * (1.0 - np.exp(-m * delay)), 0.0, hi, xtol=1e-15
    )


def _equilibrium(jac, gain, delay):
    jac = np.asarray(jac, dtype=float)
    return EquilibriumProblem(
        LinearField(jac), np.zeros(jac.shape[0]), DelayFeedback(gain, delay)
    )


# --- characteristic matrix ---------------------------------------------------


def test_characteristic_matrix_value_and_convention():
    # the difference feedback contributes alpha (1 - exp(-lambda T)) K
    # with a minus sign in Delta = lambda I - J - ...
    j = np.array([[0.05]])
    k = np.array([[0.3]])
    cm = CharacteristicMatrix(j, k, 2.0)
    lam = 0.4 + 0.2j
    expect = lam - 0.05 - 0.3 * (1 - np.exp(-lam * 2.0))
    assert cm.det(lam) == pytest.approx(expect, rel=1e-15)
    # at a resonant point the feedback term vanishes entirely
    res = 1j * np.pi  # 2 pi i / T with T = 2
    assert cm.det(res) == pytest.approx(res - 0.05, rel=1e-14)


def test_characteristic_matrix_validation():
    with pytest.raises(InputError):
        CharacteristicMatrix(np.eye(2), np.eye(3), 1.0)
    with pytest.raises(InputError):
        CharacteristicMatrix(np.eye(2), np.eye(2), -1.0)
    with pytest.raises(InputError):
        CharacteristicMatrix(np.zeros((2, 3)), np.eye(2), 1.0)


def test_residual_is_small_exactly_at_roots():
    cm = scalar_characteristic(0.05, 0.3, 2.0)
    m = _real_root_oracle(0.05, 0.3, 2.0)
    assert cm.residual(m) < 1e-14
    assert cm.residual(m + 0.1) > 1e-3


# --- scalar root extraction against bisection oracles ------------------------


def test_scalar_dominant_root_corpus():
    rng = np.random.default_rng(1204)
    for _ in range(40):
        a = float(rng.uniform(0.02, 1.5))
        k = float(rng.uniform(-2.0, 2.0))
        delay = float(rng.choice([0.5, 1.0, 2.0, 2 * np.pi]))
        oracle = _real_root_oracle(a, k, delay)
        rep = find_roots(scalar_characteristic(a, k, delay))
        reals = [r for r in rep.roots if abs(r.value.imag) < 1e-12]
        assert reals, f"no real root found for a={a}, k={k}, T={delay}"
        best = min(reals, key=lambda r: abs(r.value.real - oracle))
        assert best.value.real == pytest.approx(oracle, abs=1e-10)


def test_scalar_double_root_multiplicity():
    # tangency constructed analytically: both det and det' vanish at m
    m, delay = 0.3, 1.0
    k = np.exp(m * delay) / delay
    a = m - k * (1.0 - np.exp(-m * delay))
    rep = find_roots(scalar_characteristic(a, k, delay))
    dbl = [r for r in rep.roots if abs(r.value - m) < 1e-6]
    assert len(dbl) == 1
    assert dbl[0].algebraic == 2


def test_count_matches_extraction():
    cm = scalar_characteristic(0.6, 1.1, 2.0)
    rep = find_roots(cm)
    assert count_roots(cm) == rep.count


def test_rotation_block_matches_complex_scalarization():
    sigma, omega, kappa, delay = 0.08, 1.0, 0.35, 2 * np.pi
    j = np.array([[sigma, -omega], [omega, sigma]])
    cm2 = CharacteristicMatrix(j, kappa * np.eye(2), delay)
    region = default_region(cm2)
    rep2 = find_roots(cm2, region)
    got = sorted(
        (r.value for r in rep2.roots), key=lambda z: (round(z.real, 9), z.imag)
    )
    expect = []
    for rate in (sigma + 1j * omega, sigma - 1j * omega):
        rep1 = find_roots(scalar_characteristic(rate, kappa, delay), region)
        expect.extend(r.value for r in rep1.roots)
    expect.sort(key=lambda z: (round(z.real, 9), z.imag))
    assert len(got) == len(expect)
    for g, e in zip(got, expect):
        assert g == pytest.approx(e, abs=1e-9)


def test_default_region_contains_every_unstable_root():
    rng = np.random.default_rng(77)
    for _ in range(10):
        j = rng.standard_normal((3, 3))
        k = rng.standard_normal((3, 3))
        cm = CharacteristicMatrix(j, k, 1.5)
        region = default_region(cm)
        rep = find_roots(cm, region)
        for r in rep.roots:
            assert r.value.real < region.re_max - 0.5  # never pinned at the cap


# --- resonating centers -------------------------------------------------------


def test_resonating_center_dimensions():
    delay = 2 * np.pi
    # block diag: rotation at omega=1 (resonant for n=1), plus a sink
    j = np.zeros((3, 3))
    j[0, 1], j[1, 0] = -1.0, 1.0
    j[2, 2] = -0.5
    dim, basis = resonating_center(j, delay, 1)
    assert dim == 1
    assert basis.shape == (3, 1)
    target = 2j * np.pi / delay
    assert np.linalg.norm((target * np.eye(3) - j) @ basis) < 1e-12
    dim0, _ = resonating_center(j, delay, 0)
    assert dim0 == 0
    dim2, _ = resonating_center(j, delay, 2)
    assert dim2 == 0


def test_resonance_invariance_random_gains():
    rng = np.random.default_rng(555)
    delay = 2 * np.pi
    j = np.zeros((4, 4))
    j[0, 1], j[1, 0] = -1.0, 1.0  # kernel dimension 1 at n = 1
    j[2, 2], j[3, 3] = 0.3, -0.9
    for _ in range(20):
        k = rng.standard_normal((4, 4))
        cm = CharacteristicMatrix(j, k, delay, alpha=float(rng.uniform(-2, 2)))
        inv = check_resonance_invariance(cm, 1)
        assert inv.dim_uncontrolled == 1
        assert inv.dim_controlled == 1
        assert inv.equal
        assert inv.point == pytest.approx(1j)


# --- exclusion rules ----------------------------------------------------------


def test_odd_number_excluded_for_scalar_growth():
    prob = _equilibrium([[0.05]], np.array([[0.7]]), 2 * np.pi)
    v = equilibrium_verdicts(prob)[0]
    assert v.rule == "odd-number"
    assert v.excluded
    assert v.witness == pytest.approx(0.05)
    # the real positive root promised by the parity argument is there
    m = _real_root_oracle(0.05, 0.7, 2 * np.pi)
    assert characteristic_matrix(prob).residual(m) < 1e-12


def test_odd_number_abstains_for_even_count():
    j = [[0.05, -1.0], [1.0, 0.05]]  # two unstable eigenvalues
    prob = _equilibrium(j, 0.2 * np.eye(2), 2 * np.pi)
    v = equilibrium_verdicts(prob)[0]
    assert not v.excluded


def test_odd_number_abstains_for_singular_jacobian():
    prob = _equilibrium(np.diag([1.0, 0.0]), 0.1 * np.eye(2), 1.0)
    v = equilibrium_verdicts(prob)[0]
    assert not v.excluded
    assert not v.hypotheses[0].passed


def test_commuting_real_spectrum_on_resonant_focus():
    sigma, kappa, delay = 0.05, 0.4, 2 * np.pi
    j = np.array([[sigma, -1.0], [1.0, sigma]])
    prob = _equilibrium(j, kappa * np.eye(2), delay)
    v = equilibrium_verdicts(prob)[1]
    assert v.rule == "commuting-real-spectrum"
    assert v.excluded
    # witness = real root of the reduced equation, shifted to the line
    m = _real_root_oracle(sigma, kappa, delay)
    assert v.witness == pytest.approx(complex(m, 1.0), abs=1e-10)


def test_commuting_rules_abstain_off_resonance():
    j = np.array([[0.05, -1.0], [1.0, 0.05]])
    prob = _equilibrium(j, 0.4 * np.eye(2), delay=3.0)  # omega T not in 2 pi Z
    verdicts = equilibrium_verdicts(prob)
    assert not verdicts[1].excluded
    assert not verdicts[2].excluded


def test_commuting_rules_abstain_for_noncommuting_gain():
    j = np.array([[0.05, -1.0], [1.0, 0.05]])
    gain = np.array([[0.3, 0.1], [0.0, 0.3]])
    prob = _equilibrium(j, gain, 2 * np.pi)
    verdicts = equilibrium_verdicts(prob)
    assert not verdicts[1].excluded
    assert not verdicts[2].excluded


def test_commuting_gain_excluded_with_rotation_gain():
    # gain with complex spectrum: the real-spectrum rule abstains but the
    # plain commuting rule still excludes
    j = np.array([[0.05, -1.0], [1.0, 0.05]])
    gain = np.array([[0.1, -0.25], [0.25, 0.1]])
    prob = _equilibrium(j, gain, 2 * np.pi)
    verdicts = equilibrium_verdicts(prob)
    assert not verdicts[1].excluded
    assert verdicts[2].excluded
    w = verdicts[2].witness
    assert w is not None and w.real > 0
    # the witness is a genuine root of the full characteristic matrix
    assert characteristic_matrix(prob).residual(w) < 1e-8


def test_verdict_dicts_are_auditable():
    prob = _equilibrium([[0.05]], np.array([[0.7]]), 2.0)
    v = equilibrium_verdicts(prob)[0]
    d = v.to_dict()
    assert d["rule"] == "odd-number"
    assert d["outcome"] == "excluded"
    assert all("name" in h and "passed" in h for h in d["hypotheses"])
    assert "witness" in d


# --- homotopy in the feedback strength ----------------------------------------


def test_homotopy_trace_tracks_counts():
    prob = _equilibrium([[0.05]], np.array([[0.7]]), 2 * np.pi)
    tr = homotopy_trace(characteristic_matrix(prob))
    assert tr.alphas[0] == 0.0
    assert tr.alphas[-1] == 1.0
    counts = tr.unstable_counts()
    assert counts[0] == 1  # the uncontrolled unstable root
    assert all(c >= 1 for c in counts)  # never stabilized along the path


# --- Hopf curves and the crossing law ------------------------------------------


def test_critical_gain_puts_root_on_axis():
    rng = np.random.default_rng(9)
    a, delay = 0.05, 2 * np.pi
    for w in rng.uniform(0.1, 0.9, 10):
        k = complex(critical_gain(a, delay, w))
        cm = scalar_characteristic(a, k, delay)
        assert abs(cm.det(1j * w)) < 1e-14


def test_hopf_branch_windows_and_monotonicity():
    fam = hopf_curves(0.05, 2 * np.pi, branches=(0, 1, 2), samples=200)
    base = 1.0  # 2 pi / T
    for br in fam.branches:
        lo, hi = br.index * base, (br.index + 1) * base
        assert br.omegas[0] > lo and br.omegas[-1] < hi
        assert len(br.omegas) == 200
        assert np.all(np.diff(br.gains.real) < 0)


def test_hopf_requires_unstable_rate():
    with pytest.raises(InputError):
        hopf_curves(-0.1, 2 * np.pi)


def test_crossing_changes_count_by_two():
    a, delay = 0.05, 2 * np.pi
    fam = hopf_curves(a, delay, branches=(0,), samples=50)
    br = fam.branches[0]
    for frac in (0.3, 0.7):
        w = br.omegas[0] + frac * (br.omegas[-1] - br.omegas[0])
        k = complex(critical_gain(a, delay, w))
        d = 1e-3 * max(1.0, abs(k))
        left = unstable_count_for_gain(a, delay, k - d)
        right = unstable_count_for_gain(a, delay, k + d)
        assert right - left == 2


def test_unstable_count_for_real_gain_is_doubled():
    # real gain: the rotation form consists of two conjugate copies
    assert unstable_count_for_gain(0.05, 2 * np.pi, 0.0 + 0.0j) == 2


# --- loci along gain paths ------------------------------------------------------


def test_locus_keeps_resonant_root_on_the_line():
    sigma, delay = 0.05, 2 * np.pi
    j = np.array([[sigma, -1.0], [1.0, sigma]])
    path = GainPath.from_gains(
        [-1.0, 0.0, 1.0], [kap * np.eye(2) for kap in (-1.0, 0.0, 1.0)]
    )
    res = eigenvalue_locus(j, delay, path)
    # at every refined sample some root sits exactly on Im = 1
    for s, rep in res.samples:
        pinned = [r for r in rep.all_roots if abs(r.value.imag - 1.0) <= 1e-8]
        assert pinned, f"no root on the resonant line at s={s}"
        assert max(r.value.real for r in pinned) > 0


def test_locus_traces_are_threaded():
    path = GainPath.scalar([0.1, 0.5, 0.9], parameter=[0.0, 0.5, 1.0])
    res = eigenvalue_locus(np.array([[0.05]]), 2 * np.pi, path)
    assert res.traces
    longest = max(res.traces, key=lambda tr: len(tr.points))
    ss = [p.s for p in longest.points]
    assert ss == sorted(ss)
    # the dominant branch moves continuously
    vals = np.array([p.value for p in longest.points])
    assert np.max(np.abs(np.diff(vals))) < 0.3


def test_gain_path_validation():
    with pytest.raises(InputError):
        GainPath.from_gains([0.0], [np.eye(1)])
    with pytest.raises(InputError):
        GainPath.from_gains([0.0, 0.0], [np.eye(1), np.eye(1)])
