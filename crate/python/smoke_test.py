"""Smoke test for the rskp extension module.

Build and install first, e.g.
    cd crates/python && maturin build --release --skip-auditwheel -o dist && pip install dist/*.whl
"""

import math
from fractions import Fraction

import rskp


def main():
    assert rskp.rsk_shape([2, 1, 1, 2, 1], 2) == [3, 2]
    assert rskp.i_k([2, 1, 1, 2, 1], 2, 1) == 3
    assert rskp.d1([2, 1, 1, 2, 1], 2) == 2
    assert rskp.count_standard([3, 2]) == 5
    assert rskp.schur_at_ones([2, 1], 3) == 8

    assert rskp.word_measure([2], 2, 2) == Fraction(3, 4)
    assert rskp.chi2_moment(8, 1) == 4
    assert isinstance(rskp.chi2_moment(8, 1), Fraction)
    assert rskp.word_event_probability(2, 3, 1) == Fraction(7, 32)

    tau = rskp.TauEvaluator({"family": "jacobi-exp", "a": 0, "b": 1, "alpha": 0, "beta": 0, "gamma": 0}, 1, 40)
    assert abs(tau.tau(1.0) - (math.e - 1.0)) < 1e-14
    assert tau.tau_decimal(0.0).startswith("1.000")
    g = tau.log_derivatives(0.0)
    assert abs(g[0] - 0.5) < 1e-14 and abs(g[1] - 1.0 / 12.0) < 1e-14

    assert abs(rskp.hermitian_ratio(1, 1, 0.0) - 0.5) < 1e-14
    assert abs(rskp.hermitian_ratio(1, 1, 1.0) - 0.5 * math.erfc(1.0)) < 1e-12

    h = rskp.painleve_h(1, 0.0, "below-s", 0.5)
    k = rskp.painleve_k(1, 0.0, 0.0, "zero-to-s", 1.0)
    grid = [0.5]
    report = rskp.residual({"equation": "piv-h", "a": 0.0, "n": 1}, grid, [h])
    assert report["max_residual"] < 1e-12, report
    report = rskp.residual({"equation": "pv-k", "a": 0.0, "b": 0.0, "n": 1}, [1.0], [k])
    assert report["max_residual"] < 1e-12, report

    series = rskp.pv_series_u(1, 2, 3, 8)
    assert series["order"] == 8

    study = rskp.chi_square_moment_study(2, 2, 0, [10, 20, 40])
    assert study["improves"]
    words = rskp.word_event_study(2, 1, [3], 14)
    assert words["probabilities"] == ["7/32"]
    poisson = rskp.poissonized_limit_study(1, 1, 0.0, [25.0, 50.0], 30)
    assert poisson["improves"]

    try:
        rskp.hermitian_ratio(2, 1, 0.0)
    except ValueError:
        pass
    else:
        raise AssertionError("q < p must raise ValueError")

    print("rskp smoke test passed")


if __name__ == "__main__":
    main()
