"""Closed-form observables and the dual-path certification."""

import math

import numpy as np
import pytest

from als.gstate import PolyDiffOperator, apply, inner_product
from als.modes import ModeIndex, hlg_state
from als.observables import IntegrityError, ObservableReport, energy, mean_lz, mean_r2, report
from als.operators import OperatorKind, expectation

rng = np.random.default_rng(505)

R2_OP = PolyDiffOperator({(2, 0, 0, 0): 1.0, (0, 2, 0, 0): 1.0})


class TestEnergy:
    def test_ground_level(self):
        assert energy(0, 0, -1) == 1.0
        assert energy(0, 0, +1) == 1.0

    def test_substituted_levels(self):
        # 2 n_r + |l| - sign l + 1 with the operator oracle alongside
        assert energy(0, 3, -1) == 7.0
        assert energy(1, 2, +1) == 3.0
        from als.operators import eigen_residual

        s = hlg_state(3, 0, 0.37)
        assert eigen_residual(s, OperatorKind.h_perp(0.37, -1), 7.0) <= 1e-10
        s = hlg_state(3, 1, 0.9)  # n_r=1, l=2
        assert eigen_residual(s, OperatorKind.h_perp(0.9, +1), 3.0) <= 1e-10

    def test_degeneracy_structure(self):
        # electron branch depends on n only; positron branch on m only
        for total in range(11):
            for n in range(total + 1):
                mode = ModeIndex(n, total - n)
                assert energy(mode.n_r, mode.l, -1) == 2 * mode.n + 1
                assert energy(mode.n_r, mode.l, +1) == 2 * mode.m + 1

    def test_omega_scaling(self):
        assert energy(0, 3, -1, omega=2.5) == pytest.approx(17.5)

    def test_validation(self):
        with pytest.raises(ValueError):
            energy(-1, 0, -1)
        with pytest.raises(ValueError):
            energy(0, 0, 0)


class TestMeanR2:
    def test_ground(self):
        assert mean_r2(0, 0) == 0.5

    def test_formula_vs_exact_moment(self):
        assert mean_r2(2, 2) == pytest.approx(3.5)
        s = hlg_state(4, 2, 0.61)  # n_r=2, l=2
        exact = inner_product(s, apply(R2_OP, s)).real
        assert exact == pytest.approx(3.5, abs=1e-11)

    def test_alpha_independence(self):
        vals = []
        for alpha in (0.0, math.pi / 8, math.pi / 4):
            s = hlg_state(3, 1, alpha)
            vals.append(inner_product(s, apply(R2_OP, s)).real)
        assert max(vals) - min(vals) <= 1e-11
        assert vals[0] == pytest.approx(mean_r2(1, 2), abs=1e-11)

    def test_rho_scaling(self):
        assert mean_r2(0, 0, rho_h=2.0) == 2.0


class TestMeanLz:
    def test_fully_asymmetric_point(self):
        for l in (-3, 0, 5):
            assert mean_lz(l, 0.0) == 0.0

    def test_symmetric_point(self):
        assert mean_lz(3, math.pi / 4) == pytest.approx(3.0)

    def test_intermediate_vs_exact(self):
        # l sin(2a) at a = pi/8: 3 sqrt(2)/2
        ref = 3 * math.sqrt(2) / 2
        assert mean_lz(3, math.pi / 8) == pytest.approx(ref, abs=1e-12)
        s = hlg_state(3, 0, math.pi / 8)
        assert expectation(s, OperatorKind.lz()).real == pytest.approx(ref, abs=1e-11)

    def test_both_index_orderings(self):
        for n, m in [(3, 1), (1, 3)]:
            for alpha in rng.uniform(0, math.pi / 2, size=5):
                s = hlg_state(n, m, float(alpha))
                assert expectation(s, OperatorKind.lz()).real == pytest.approx(
                    (n - m) * math.sin(2 * float(alpha)), abs=1e-11
                )


class TestReport:
    def test_symmetric_twisted_mode(self):
        rep = report(3, 0, math.pi / 4, -1)
        assert rep.energy == pytest.approx(7.0)
        assert rep.r2 == pytest.approx(2.0)
        assert rep.lz == pytest.approx(3.0)
        assert rep.casimir_j == pytest.approx(1.5)
        assert rep.m_l == pytest.approx(1.5)

    def test_zero_angular_momentum_row(self):
        rep = report(2, 2, 0.0, -1)
        assert rep.lz == 0.0
        assert rep.casimir_j == pytest.approx(2.0)
        assert rep.m_l == 0.0

    def test_positron_consistency(self):
        rep = report(1, 0, math.pi / 8, +1)
        assert isinstance(rep, ObservableReport)
        assert rep.energy == pytest.approx(1.0)  # 2m + 1 with m = 0

    def test_integrity_error_carries_both_values(self):
        with pytest.raises(IntegrityError) as err:
            report(2, 1, 0.4, -1, tol=0.0)
        assert err.value.closed_form is not None
        assert err.value.measured is not None

    def test_sweep_consistency(self):
        for alpha in np.linspace(0, math.pi / 2, 5):
            for n, m in [(2, 0), (0, 2), (1, 1)]:
                report(n, m, float(alpha), -1)  # raises on any mismatch
