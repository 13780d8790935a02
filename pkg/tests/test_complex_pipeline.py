from fractions import Fraction

import pytest

from isog3 import burkhardt_coble as bc
from isog3 import complex_pipeline as cp
from isog3.errors import InvalidInput, OnArrangement

Z = (1, 2, -3, Fraction(5, 7))


@pytest.fixture(scope="module")
def run():
    return cp.run_complex(Z, 50)


def test_input_validation():
    with pytest.raises(InvalidInput):
        cp.theta_space((1, 2, 3), 30)
    with pytest.raises(InvalidInput):
        cp.theta_space((1, 2, "x", 4), 30)
    with pytest.raises(OnArrangement):
        cp.theta_space((0, 1, 2, 3), 30)


def test_frame_spans_the_kernel_point_and_maschke_directions():
    frame = cp.theta_space(Z, 40)
    assert [str(a) for a in frame.alpha] == [str(a) for a in bc.cminus([Fraction(v) for v in Z])]
    assert len(frame.basis) == 5 and frame.condition < 100


def test_quadrics_vanish_on_the_theta_space_to_first_order():
    frame = cp.theta_space(Z, 40)
    F = frame.field
    quadrics = cp.surface_quadrics(frame.alpha_c, F)
    restricted = cp.restrict(quadrics, frame.basis)
    # the last four quadrics vanish identically on the frame
    assert max(cp._coeff_norm(q) for q in restricted[5:]) < F.ctx.mpf(10) ** -35
    polar = cp.polar_quadric(quadrics, frame.alpha_c, bc.assemble_coble_cubic().weights)
    assert cp._coeff_norm(cp.restrict([polar], frame.basis)[0]) < F.ctx.mpf(10) ** -35


def test_run_produces_a_certified_curve(run):
    tol = run.frame.field.ctx.mpf(10) ** -30
    assert run.result.is_curve
    assert run.certificate.passed()
    assert len(run.branch_values) == 6 and len(run.secants) == 4
    assert all(s.plane_rank == 3 for s in run.secants)
    assert all(v < tol for v in run.residuals.values())
    js = run.to_json()
    assert js["precision"] == 50 and set(js) >= {"alpha", "secants", "branch_values", "result", "residuals"}


def test_projective_rescaling_gives_the_same_curve(run):
    scaled = cp.run_complex(tuple(2 * Fraction(v) for v in Z), 50)
    assert cp.branch_drift(run, scaled) < run.frame.field.ctx.mpf(10) ** -30


def test_precision_doubling_is_stable():
    low, high, drift = cp.stability_check(Z, 30)
    # a fixed number of digits is lost to conditioning; half the precision is ample
    assert drift < low.frame.field.ctx.mpf(10) ** -15
