import io
import math

import numpy as np
import pytest

from loscure import CureModelEstimate, SurvivalCurve


def test_validation_rejects_malformed_curves():
    with pytest.raises(ValueError, match="strictly increasing"):
        SurvivalCurve([2.0, 1.0], [0.5, 0.25])
    with pytest.raises(ValueError, match="equal length"):
        SurvivalCurve([1.0], [0.5, 0.25])
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        SurvivalCurve([1.0], [1.5])
    with pytest.raises(ValueError, match="non-increasing"):
        SurvivalCurve([1.0, 2.0], [0.25, 0.5])
    with pytest.raises(ValueError, match="nonnegative"):
        SurvivalCurve([-1.0], [0.5])
    with pytest.raises(ValueError, match="t_max"):
        SurvivalCurve([1.0, 4.0], [0.5, 0.25], t_max=3.0)


def test_right_continuous_evaluation():
    curve = SurvivalCurve([1.0, 3.0], [0.75, 0.375], t_max=4.0)
    assert curve.evaluate(0.999) == 1.0
    assert curve.evaluate(1.0) == 0.75
    assert curve.evaluate(2.5) == 0.75
    assert curve.evaluate(3.0) == 0.375
    assert curve.evaluate(100.0) == 0.375
    assert curve.evaluate(-5.0) == 1.0
    np.testing.assert_array_equal(
        curve.evaluate([0.0, 1.0, 2.0, 3.0, 9.0]), [1.0, 0.75, 0.75, 0.375, 0.375]
    )
    assert curve.plateau == 0.375


def test_empty_curve_is_identically_one():
    curve = SurvivalCurve([], [], t_max=5.0)
    assert curve.plateau == 1.0
    assert curve.evaluate(0.0) == 1.0
    assert curve.evaluate(10.0) == 1.0


def test_jump_at_zero_means_s_at_zero_below_one():
    curve = SurvivalCurve([0.0], [0.8])
    assert curve.evaluate(-1e-9) == 1.0
    assert curve.evaluate(0.0) == 0.8


def test_arrays_are_immutable():
    curve = SurvivalCurve([1.0], [0.5])
    with pytest.raises(ValueError):
        curve.jump_times[0] = 2.0


def test_points_include_anchor_and_follow_up_tail():
    curve = SurvivalCurve([1.0, 3.0], [0.75, 0.375], t_max=6.0)
    assert curve.to_points() == [(0.0, 1.0), (1.0, 0.75), (3.0, 0.375), (6.0, 0.375)]
    # when the last jump is the largest observed time there is no extra row
    curve2 = SurvivalCurve([1.0, 3.0], [0.75, 0.375])
    assert curve2.to_points() == [(0.0, 1.0), (1.0, 0.75), (3.0, 0.375)]


def test_csv_round_trip_preserves_values_exactly():
    curve = SurvivalCurve([1.0, 3.0], [2 / 3, 1 / 3], t_max=7.5)
    buf = io.StringIO()
    curve.write_csv(buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == "t,survival"
    assert text.splitlines()[1] == "0,1.0"
    assert repr(2 / 3) in text  # full float precision survives serialization
    back = SurvivalCurve.read_csv(io.StringIO(text))
    np.testing.assert_array_equal(back.jump_times, curve.jump_times)
    np.testing.assert_array_equal(back.values, curve.values)
    assert back.t_max == curve.t_max


@pytest.mark.parametrize(
    "curve",
    [
        SurvivalCurve([0.0, 2.0], [0.8, 0.2], t_max=4.0),  # jump at zero plus tail
        SurvivalCurve([], [], t_max=5.0),  # no events at all
        SurvivalCurve([], []),  # degenerate: nothing observed past zero
        SurvivalCurve([2.0], [0.0]),  # single fatal jump
    ],
    ids=["zero-jump", "no-jumps", "empty", "single"],
)
def test_csv_round_trip_edge_shapes(curve):
    buf = io.StringIO()
    curve.write_csv(buf)
    back = SurvivalCurve.read_csv(io.StringIO(buf.getvalue()))
    np.testing.assert_array_equal(back.jump_times, curve.jump_times)
    np.testing.assert_array_equal(back.values, curve.values)
    assert back.t_max == curve.t_max


def test_read_csv_rejects_bad_header():
    with pytest.raises(ValueError, match="header"):
        SurvivalCurve.read_csv(io.StringIO("time,surv\n0,1.0\n"))


def test_cure_model_estimate_validation():
    flat = SurvivalCurve([2.0, 5.0], [0.5, 0.0])
    CureModelEstimate(p=0.5, latency=flat)
    with pytest.raises(ValueError, match="vanish"):
        CureModelEstimate(p=0.5, latency=SurvivalCurve([2.0], [0.25]))
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        CureModelEstimate(p=1.5, latency=flat)


def test_to_dict_is_json_friendly():
    curve = SurvivalCurve([1.0], [0.5], t_max=2.0)
    doc = curve.to_dict()
    assert doc == {"t": [1.0], "survival": [0.5], "plateau": 0.5, "t_max": 2.0}
    assert math.isfinite(doc["plateau"])
