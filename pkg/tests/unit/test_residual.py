"""
Unit Tests for the PDE residual and the epsilon-ladder order studies.
"""

import math

import numpy as np
import pytest

from shockwkb.asymptotics import (
    BurgersProblem,
    CoefficientSeries,
    Window,
    assemble,
    build_frame,
    solve_front,
)
from shockwkb.constants import TAIL_EPSILON_LADDER, TAIL_OFFSET_LIMIT
from shockwkb.verification import (
    Region,
    boundedness_check,
    layer_residual,
    order_study,
    pde_residual,
)
from shockwkb.verification.residual import fit_slope, region_sup


class TestRegion:
    """Test sampling regions in (t, tau)."""

    BETA = np.array([[0.5], [1.0]])

    def test_invalid_kind(self):
        with pytest.raises(ValueError, match="Invalid region"):
            Region("middle")

    def test_tau_star_must_be_positive(self):
        with pytest.raises(ValueError, match="tau_star"):
            Region("right", tau_star=0.0)

    def test_global_is_symmetric(self):
        taus = Region("global").taus(self.BETA, 0.1, 5)
        np.testing.assert_allclose(taus[0], [-80.0, -40.0, 0.0, 40.0, 80.0])
        np.testing.assert_allclose(taus[1], [-40.0, -20.0, 0.0, 20.0, 40.0])

    def test_right_tail_recedes_with_eps(self):
        taus = Region("right").taus(self.BETA, 0.1, 3)
        assert taus[0, 0] == pytest.approx(10.0 + math.log(10.0))
        assert taus[1, 0] == pytest.approx(10.0 + math.log(10.0) / 2.0)
        assert taus[0, -1] == pytest.approx(80.0)
        finer = Region("right").taus(self.BETA, 0.01, 3)
        assert np.all(finer[:, 0] > taus[:, 0])

    def test_fixed_tail(self):
        taus = Region("right", receding=False).taus(self.BETA, 0.1, 3)
        np.testing.assert_allclose(taus[:, 0], [10.0, 10.0])

    def test_left_mirrors_right(self):
        right = Region("right").taus(self.BETA, 0.05, 7)
        left = Region("left").taus(self.BETA, 0.05, 7)
        np.testing.assert_allclose(left, -right[:, ::-1])
        assert np.all(np.diff(left, axis=1) > 0)

    def test_explicit_tau_max_caps_threshold(self):
        taus = Region("right", tau_max=5.0).taus(self.BETA, 0.1, 3)
        np.testing.assert_allclose(taus, 5.0)

    def test_tail_offset(self):
        """Largest eps*threshold over the rows; the smallest beta dominates."""
        for kind in ("right", "left"):
            assert Region(kind).offset(self.BETA, 0.1) == pytest.approx(0.1 * (10.0 + math.log(10.0)))
        assert Region("right").offset(self.BETA, 0.00125) == pytest.approx(
            0.00125 * (10.0 + math.log(800.0))
        )
        assert Region("global").offset(self.BETA, 0.1) == 0.0

    def test_to_dict(self):
        data = Region("left", t_range=(0.0, 1.0)).to_dict()
        assert data == {
            "kind": "left",
            "tau_star": 10.0,
            "tau_max": None,
            "t_range": [0.0, 1.0],
            "receding": True,
        }


class TestResidual:
    """Test residual evaluation."""

    def test_layer_and_xt_residuals_agree(self, example_y1):
        eps = 0.1
        ts = np.array([[0.3], [1.2]])
        taus = np.linspace(-6.0, 6.0, 13)[None, :]
        xs = example_y1.curve.phi(ts) + eps * taus
        np.testing.assert_allclose(
            layer_residual(example_y1, ts, taus, eps), pde_residual(example_y1, xs, ts, eps), atol=1e-9
        )

    def test_leading_residual_on_front_has_no_bracket_terms(self):
        """
        a0 = 2 + sin(x)*t varies in x; the 1/eps bracket terms vanish only on the front.

        There A = 1 and dA = 0 leave
        R = -beta*(a1(phi)*phi' - b1) with a1 = x, b1 = t, for every eps.
        """
        problem = BurgersProblem(
            CoefficientSeries.from_texts(["2+sin(x)*t", "x"], ["1+t^2", "t"]),
            window=Window(-4.0, 4.0, 1.0),
        )
        curve = solve_front(problem, 1.0, 0.0)
        y0 = assemble(problem, curve, build_frame(problem, curve), 0)
        ts = np.linspace(0.0, 1.0, 41)
        phi = curve.phi(ts)
        expected = -0.5 * (1.0 + ts**2) * (phi * curve.dphi(ts) - ts)
        for eps in (0.1, 0.01, 0.001):
            on_front = layer_residual(y0, ts, np.zeros_like(ts), eps)
            np.testing.assert_allclose(on_front, expected, atol=1e-9)

    def test_scalar_residual(self, example_y0):
        assert isinstance(pde_residual(example_y0, 0.1, 0.5, 0.1), float)

    def test_first_approximation_improves_on_leading_term(self, example_y0, example_y1):
        """Y_0 leaves an O(1) residual near the front, Y_1 an O(eps) one."""
        region = Region("global", t_range=(0.0, 1.0))
        eps = 0.025
        leading = region_sup(example_y0, region, eps, n_t=11, n_tau=401)
        first = region_sup(example_y1, region, eps, n_t=11, n_tau=401)
        # sup of a1*phi'*|tanh(tau/2)*sech^2(tau/2)|/2 over t in [0, 1] sits near 0.26
        assert 0.2 < leading < 0.35
        assert first < 0.5 * leading

    @pytest.mark.parametrize("order,kind", [(0, "right"), (1, "global"), (1, "left")])
    def test_sup_is_resolved_by_the_grid(self, example_pipeline, order, kind):
        """Doubling the sample density moves the sup-norm by at most 5%."""
        solution = example_pipeline.solution(order)
        eps = 0.01 if kind != "global" else 0.05
        coarse = region_sup(solution, Region(kind), eps, n_t=21, n_tau=801)
        fine = region_sup(solution, Region(kind), eps, n_t=41, n_tau=1601)
        assert abs(fine - coarse) <= 0.05 * fine


class TestOrderStudy:
    """Test ladder studies."""

    def test_too_short_ladder(self, example_y0):
        with pytest.raises(ValueError, match="at least 3"):
            order_study(example_y0, Region(), [0.1, 0.05])

    @pytest.mark.parametrize("ladder", [[0.1, 0.1, 0.05], [0.05, 0.1, 0.2], [0.1, 0.05, -0.01]])
    def test_ladder_must_decrease(self, example_y0, ladder):
        with pytest.raises(ValueError, match="strictly decreasing"):
            order_study(example_y0, Region(), ladder)

    def test_round_off_residual_skips_slope(self, constant_solutions):
        """The constant-coefficient Y_1 solves the equation exactly."""
        _, y1 = constant_solutions
        report = order_study(y1, Region("global"), [0.1, 0.05, 0.025], n_t=6, n_tau=201)
        assert report.slope is None
        assert max(report.sups) < 1e-9
        assert "slope fit skipped" in report.notes[0]

    def test_report_layout(self, constant_solutions):
        y0, _ = constant_solutions
        report = order_study(y0, Region("right"), [0.1, 0.05, 0.025], n_t=4, n_tau=51)
        data = report.to_dict()
        assert data["schema_version"] == "1.0"
        assert data["order"] == 0
        assert data["grid"] == {"n_t": 4, "n_tau": 51}
        assert data["region"]["kind"] == "right"
        assert len(data["sup_residual"]) == 3
        assert [row[2] for row in report.rows()] == ["right"] * 3

    def test_coarse_tail_ladder_is_flagged(self, constant_solutions):
        """At eps = 0.1 the right tail starts 1.23 away from the front in x."""
        y0, _ = constant_solutions
        report = order_study(y0, Region("right"), [0.1, 0.05, 0.025], n_t=4, n_tau=51)
        assert report.offsets[0] == pytest.approx(0.1 * (10.0 + math.log(10.0)))
        assert report.offsets == sorted(report.offsets, reverse=True)
        assert any("away from the front" in note for note in report.notes)
        assert report.to_dict()["tail_offset"] == report.offsets

    def test_tail_ladder_is_not_flagged(self, constant_solutions):
        y0, _ = constant_solutions
        report = order_study(y0, Region("left"), TAIL_EPSILON_LADDER, n_t=4, n_tau=51)
        assert max(report.offsets) <= TAIL_OFFSET_LIMIT
        assert not any("away from the front" in note for note in report.notes)

    def test_builder_source(self, constant_solutions):
        y0, _ = constant_solutions
        seen = []

        def build(eps):
            seen.append(eps)
            return y0

        order_study(build, Region("left"), [0.2, 0.1, 0.05], n_t=3, n_tau=21)
        assert seen == [0.2, 0.1, 0.05]


class TestFitSlope:
    """Test the least-squares log-log fit."""

    def test_power_law(self):
        eps = np.array([0.1, 0.05, 0.025, 0.0125])
        slope, intercept = fit_slope(eps, 3.0 * eps**2)
        assert slope == pytest.approx(2.0)
        assert intercept == pytest.approx(math.log(3.0))

    def test_noisy_power_law(self):
        eps = np.array([0.2, 0.1, 0.05])
        slope, _ = fit_slope(eps, eps * np.array([1.05, 0.97, 1.01]))
        assert slope == pytest.approx(1.0, abs=0.1)


class TestBoundedness:
    """Test the O(1) check."""

    def test_round_off_passes(self, constant_solutions):
        y0, _ = constant_solutions
        report = boundedness_check(y0, Region("global"), [0.1, 0.05, 0.025], n_t=4, n_tau=101)
        assert report.ratio is None
        assert report.passed
        assert report.to_dict()["passed"] is True

    def test_leading_term_residual_stays_bounded(self, example_y0):
        report = boundedness_check(
            example_y0, Region("global", t_range=(0.0, 1.0)), [0.1, 0.05, 0.025], n_t=6, n_tau=401
        )
        assert report.maximum < 2.0
        assert report.passed
