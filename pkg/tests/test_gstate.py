"""State/operator algebra kernels: moments, products, composition, grids."""

import math

import numpy as np
import pytest

from als.gstate import (
    GaussianPolyState,
    PolyDiffOperator,
    apply,
    compose,
    density_grid,
    evaluate,
    gaussian_moment,
    inner_product,
    linear_combine,
    op_commutator,
)
from als.modes import hlg_state
from als.operators import OperatorKind, build

rng = np.random.default_rng(202)

GROUND = GaussianPolyState({(0, 0): 1.0})
DX = PolyDiffOperator({(0, 0, 1, 0): 1.0})
X_OP = PolyDiffOperator({(1, 0, 0, 0): 1.0})


def random_state(n_terms=6, max_pow=5, envelope=(1.0, 1.0)):
    terms = {}
    for _ in range(n_terms):
        key = (int(rng.integers(0, max_pow)), int(rng.integers(0, max_pow)))
        terms[key] = complex(rng.normal(), rng.normal())
    return GaussianPolyState(terms, envelope)


def random_operator(n_terms=3, max_pow=2):
    terms = {}
    for _ in range(n_terms):
        key = tuple(int(v) for v in rng.integers(0, max_pow + 1, size=4))
        terms[key] = complex(rng.normal(), rng.normal())
    return PolyDiffOperator(terms)


def term_map_diff(a, b):
    keys = set(a.terms) | set(b.terms)
    return max((abs(a.terms.get(k, 0j) - b.terms.get(k, 0j)) for k in keys), default=0.0)


class TestMoments:
    def test_odd_moments_vanish(self):
        for p, q in [(1, 0), (0, 3), (3, 2), (2, 5)]:
            assert gaussian_moment(p, q) == 0.0

    def test_zeroth_moment(self):
        assert gaussian_moment(0, 0) == pytest.approx(math.pi / 2, abs=1e-15)

    def test_second_moment(self):
        # Gamma oracle: int u^2 e^{-2u^2} du = (1/4) sqrt(pi/2)
        oracle = 0.25 * math.sqrt(math.pi / 2) * math.sqrt(math.pi / 2)
        assert gaussian_moment(2, 0) == pytest.approx(oracle, abs=1e-16)
        assert gaussian_moment(2, 0) == pytest.approx(math.pi / 8, abs=1e-16)

    def test_against_gamma_oracle(self):
        def one_d(k):
            if k % 2:
                return 0.0
            return math.gamma((k + 1) / 2) / (2.0 ** ((k + 1) / 2))

        for p in range(0, 12, 2):
            for q in range(0, 12, 2):
                assert gaussian_moment(p, q) == pytest.approx(
                    one_d(p) * one_d(q), rel=1e-13
                )

    def test_negative_powers_rejected(self):
        with pytest.raises(ValueError):
            gaussian_moment(-1, 0)


class TestInnerProduct:
    def test_ground_norm(self):
        # unnormalized mode sum at (0,0) is the bare envelope: norm^2 = pi/2
        g = hlg_state(0, 0, 0.3, normalized=False)
        assert inner_product(g, g).real == pytest.approx(math.pi / 2, rel=1e-14)

    def test_parity_orthogonality(self):
        a = hlg_state(1, 0, 0.0)
        b = hlg_state(0, 1, 0.0)
        assert abs(inner_product(a, b)) <= 1e-15

    def test_against_gauss_hermite_quadrature(self):
        nodes, weights = np.polynomial.hermite.hermgauss(64)
        # substitute u = sqrt(2) x so the weight matches exp(-2x^2)
        xs = nodes / math.sqrt(2)
        for _ in range(5):
            a, b = random_state(), random_state()
            exact = inner_product(a, b)
            pa = np.zeros((64, 64), dtype=complex)
            pb = np.zeros((64, 64), dtype=complex)
            X, Y = np.meshgrid(xs, xs)
            for (p, q), c in a.terms.items():
                pa += c * X**p * Y**q
            for (p, q), c in b.terms.items():
                pb += c * X**p * Y**q
            W = np.outer(weights, weights) / 2.0
            quad = complex(np.sum(W * np.conj(pa) * pb))
            assert abs(exact - quad) <= 1e-10 * max(1.0, abs(exact))

    def test_positive_definite(self):
        for _ in range(10):
            s = random_state()
            val = inner_product(s, s)
            assert abs(val.imag) <= 1e-14 * abs(val)
            assert val.real >= 0.0

    def test_conjugate_linearity_first_slot(self):
        a, b = random_state(), random_state()
        z = 0.7 - 1.3j
        lhs = inner_product(z * a, b)
        rhs = z.conjugate() * inner_product(a, b)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


class TestApply:
    def test_derivative_of_envelope(self):
        out = apply(DX, GROUND)
        assert out.terms == {(1, 0): pytest.approx(-2.0)}

    def test_isotropic_oscillator_ground_level(self):
        hs = build(OperatorKind.hs())
        out = apply(hs, GROUND)
        assert term_map_diff(out, 1.0 * GROUND) <= 1e-15

    def test_angular_momentum_on_twisted_state(self):
        # l = 2 twisted state is an eigenstate of H3 with eigenvalue 2
        lg = hlg_state(2, 0, math.pi / 4)
        out = apply(build(OperatorKind.h3()), lg)
        assert term_map_diff(out, 2.0 * lg) <= 1e-14

    def test_linearity(self):
        D = random_operator()
        a, b = random_state(), random_state()
        za, zb = 1.3 - 0.2j, -0.8 + 2.1j
        lhs = apply(D, linear_combine([za, zb], [a, b]))
        rhs = linear_combine([za, zb], [apply(D, a), apply(D, b)])
        assert term_map_diff(lhs, rhs) <= 1e-12

    def test_hermiticity_of_hamiltonians(self):
        kinds = [OperatorKind.hs(), OperatorKind.h1(), OperatorKind.h2(), OperatorKind.h3()]
        for _ in range(5):
            a, b = random_state(), random_state()
            for kind in kinds:
                D = build(kind)
                lhs = inner_product(a, apply(D, b))
                rhs = inner_product(b, apply(D, a)).conjugate()
                assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


class TestCompose:
    def test_canonical_commutator(self):
        result = op_commutator(DX, X_OP)
        assert result.terms == {(0, 0, 0, 0): pytest.approx(1.0)}

    def test_fixed_sign_commutator_triple(self):
        h1, h2, h3 = (build(OperatorKind(t)) for t in ("H1", "H2", "H3"))
        assert (op_commutator(h1, h3) - (-2j) * h2).max_coeff() == 0.0
        assert (op_commutator(h3, h2) - (-2j) * h1).max_coeff() == 0.0
        assert (op_commutator(h2, h1) - (-2j) * h3).max_coeff() == 0.0

    def test_associativity(self):
        for _ in range(5):
            d1, d2, d3 = random_operator(), random_operator(), random_operator()
            lhs = compose(compose(d1, d2), d3)
            rhs = compose(d1, compose(d2, d3))
            diff = lhs - rhs
            scale = max(lhs.max_coeff(), rhs.max_coeff(), 1.0)
            assert diff.max_coeff() <= 1e-12 * scale

    def test_compose_respects_apply(self):
        for _ in range(5):
            d1, d2 = random_operator(), random_operator()
            s = random_state()
            lhs = apply(compose(d1, d2), s)
            rhs = apply(d1, apply(d2, s))
            assert term_map_diff(lhs, rhs) <= 1e-12 * max(
                1.0, max(abs(c) for c in rhs.terms.values()) if rhs.terms else 1.0
            )


class TestEvaluate:
    def test_ground_at_origin(self):
        assert evaluate(GROUND, 0.0, 0.0) == 1.0

    def test_ground_envelope_value(self):
        assert evaluate(GROUND, 1.0, 1.0) == pytest.approx(math.exp(-2.0), rel=1e-15)

    def test_against_term_sum_oracle(self):
        for _ in range(3):
            s = random_state()
            for x, y in rng.uniform(-3, 3, size=(100, 2)):
                oracle = sum(
                    c * x**p * y**q for (p, q), c in s.terms.items()
                ) * math.exp(-x * x - y * y)
                assert abs(evaluate(s, x, y) - oracle) <= 1e-13


class TestLinearCombine:
    def test_identity(self):
        s = random_state()
        out = linear_combine([1.0, 0.0], [s, random_state()])
        assert term_map_diff(out, s) == 0.0

    def test_cancellation(self):
        s = random_state()
        out = linear_combine([1.0, -1.0], [s, s])
        assert out.terms == {}

    def test_circular_combination_matches_twisted_state(self):
        # (h10 + i h01)/sqrt2 over bare Hermite products equals the l=1
        # twisted state, term for term
        c = 2.0 * math.sqrt(2.0) / math.sqrt(math.pi)
        h10 = GaussianPolyState({(1, 0): c})
        h01 = GaussianPolyState({(0, 1): c})
        combo = linear_combine([1 / math.sqrt(2), 1j / math.sqrt(2)], [h10, h01])
        lg = hlg_state(1, 0, math.pi / 4)
        assert term_map_diff(combo, lg) <= 1e-12

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            linear_combine([1.0], [GROUND, GROUND])


class TestDensityGrid:
    def test_ground_peaks_at_center(self):
        grid = density_grid(GROUND, -4, 4, -4, 4, 51, 51)
        assert np.all(grid >= 0)
        peak = np.unravel_index(np.argmax(grid), grid.shape)
        assert peak == (25, 25)

    def test_riemann_sum_normalization(self):
        s = hlg_state(2, 1, math.pi / 8)
        grid = density_grid(s, -5, 5, -5, 5, 512, 512)
        total = grid.sum() * (10 / 512) ** 2
        assert total == pytest.approx(1.0, abs=1e-6)

    def test_nodal_column_of_odd_mode(self):
        s = hlg_state(1, 0, 0.0)
        grid = density_grid(s, -4, 4, -4, 4, 101, 101)
        assert np.all(grid[:, 50] <= 1e-30)  # center column sits on x = 0
        assert grid[:, 49] == pytest.approx(grid[:, 51], rel=1e-12)

    def test_degenerate_range_rejected(self):
        with pytest.raises(ValueError):
            density_grid(GROUND, 1, 1, -1, 1, 8, 8)
        with pytest.raises(ValueError):
            density_grid(GROUND, -1, 1, -1, 1, 1, 8)


class TestEnvelopeValidation:
    def test_nonpositive_envelope_rejected(self):
        with pytest.raises(ValueError):
            GaussianPolyState({(0, 0): 1.0}, envelope=(0.0, 1.0))

    def test_mismatched_envelopes_rejected(self):
        aniso = GaussianPolyState({(0, 0): 1.0}, envelope=(2.0, 1.0))
        with pytest.raises(ValueError):
            _ = GROUND + aniso
