"""Problem containers: validation rules and equilibrium residuals."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pyrastab.errors import InputError
from pyrastab.fields import ConstantCoefficient, LinearField, parse_field
from pyrastab.problems import (
    DelayFeedback,
    EquilibriumProblem,
    PeriodicLinearProblem,
    validate_equilibrium,
)


def test_delay_feedback_basics():
    fb = DelayFeedback(np.eye(2) * 0.3, 2.0)
    assert fb.dimension == 2
    assert fb.gain_norm == pytest.approx(0.3)


@pytest.mark.parametrize(
    "gain, delay",
    [
        (np.zeros((2, 3)), 1.0),
        (np.zeros(3), 1.0),
        (np.array([[np.inf]]), 1.0),
        (np.eye(2), 0.0),
        (np.eye(2), -1.0),
        (np.eye(2), np.nan),
    ],
)
def test_delay_feedback_rejects_malformed(gain, delay):
    with pytest.raises(InputError):
        DelayFeedback(gain, delay)


@settings(max_examples=60, deadline=None)
@given(
    rows=st.integers(0, 4),
    cols=st.integers(0, 4),
    delay=st.floats(allow_nan=True, allow_infinity=True, width=64),
    poison=st.sampled_from([np.nan, np.inf, -np.inf, None]),
)
def test_delay_feedback_never_accepts_bad_input(rows, cols, delay, poison):
    gain = np.zeros((rows, cols))
    if poison is not None and rows and cols:
        gain[0, 0] = poison
    square = rows == cols and rows > 0
    finite = poison is None or not (rows and cols)
    good_delay = np.isfinite(delay) and delay > 0
    if square and finite and good_delay:
        fb = DelayFeedback(gain, delay)
        assert fb.dimension == rows
    else:
        with pytest.raises(InputError):
            DelayFeedback(gain, delay)


def test_equilibrium_problem_checks_point_shape():
    field = LinearField(np.eye(2) * -1.0)
    fb = DelayFeedback(np.eye(2), 1.0)
    with pytest.raises(InputError):
        EquilibriumProblem(field, np.zeros(3), fb)
    with pytest.raises(InputError):
        EquilibriumProblem(field, np.array([0.0, np.nan]), fb)


def test_equilibrium_problem_checks_dimension_agreement():
    field = LinearField(np.eye(3) * -1.0)
    fb = DelayFeedback(np.eye(2), 1.0)
    with pytest.raises(InputError):
        EquilibriumProblem(field, np.zeros(3), fb)


def test_equilibrium_jacobian_at_point():
    field = parse_field(("x1 - x1 ^ 3", "-x2"))
    fb = DelayFeedback(np.eye(2) * 0.1, 1.0)
    # x* = (1, 0) is a genuine equilibrium; d/dx1 (x1 - x1^3) = 1 - 3 = -2
    prob = EquilibriumProblem(field, np.array([1.0, 0.0]), fb)
    assert prob.jacobian() == pytest.approx(np.diag([-2.0, -1.0]))
    assert validate_equilibrium(prob) <= 1e-14


def test_validate_equilibrium_reports_residual():
    field = LinearField(np.array([[-1.0]]))
    fb = DelayFeedback(np.array([[0.2]]), 1.0)
    prob = EquilibriumProblem(field, np.array([0.5]), fb)
    assert validate_equilibrium(prob) == pytest.approx(0.5)


def test_periodic_problem_requires_delay_equal_period():
    coeff = ConstantCoefficient(np.eye(2) * 0.1)
    fb = DelayFeedback(np.eye(2) * 0.2, 1.0)
    with pytest.raises(InputError, match="period"):
        PeriodicLinearProblem(coeff, 2.0, fb)
    prob = PeriodicLinearProblem(coeff, 1.0, fb)
    assert prob.dimension == 2
    assert prob.coefficient_at(0.7) == pytest.approx(np.eye(2) * 0.1)


def test_periodic_problem_rejects_aperiodic_coefficient():
    fb = DelayFeedback(np.eye(1) * 0.2, 1.0)
    with pytest.raises(InputError, match="periodic"):
        PeriodicLinearProblem(lambda t: np.array([[t]]), 1.0, fb)


def test_periodic_problem_rejects_shape_mismatch():
    fb = DelayFeedback(np.eye(2) * 0.2, 1.0)
    with pytest.raises(InputError, match="shape"):
        PeriodicLinearProblem(lambda t: np.eye(3), 1.0, fb)
