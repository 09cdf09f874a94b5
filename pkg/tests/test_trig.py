import numpy as np
import pytest

from torusdisc.trig import (AliasingError, GridFunction, TrigPoly,
                            forward_coeffs, lp_norm, product, tensor)


def random_poly(rng, box, real=False):
    shape = tuple(2 * n + 1 for n in box)
    c = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    if real:
        flip = tuple(slice(None, None, -1) for _ in box)
        c = 0.5 * (c + np.conj(c[flip]))
    return TrigPoly(box, c)


def naive_eval(f, x):
    total = 0.0 + 0.0j
    it = np.nditer(f.coeffs, flags=["multi_index"])
    for c in it:
        k = np.array([i - n for i, n in zip(it.multi_index, f.box)])
        total += complex(c) * np.exp(1j * float(k @ x))
    return total


class TestForwardCoeffs:
    def test_constant_grid(self):
        g = GridFunction((8,), np.full(8, 3.0))
        f = forward_coeffs(g, (0,))
        assert f.coeff([0]) == pytest.approx(3.0)

    def test_cosine_on_eight_points(self):
        x = 2 * np.pi * np.arange(8) / 8
        f = forward_coeffs(GridFunction((8,), np.cos(x)), (1,))
        assert f.coeff([1]) == pytest.approx(0.5)
        assert f.coeff([-1]) == pytest.approx(0.5)
        assert f.coeff([0]) == pytest.approx(0.0)

    @pytest.mark.parametrize("box", [(3,), (2, 4), (1, 2, 3)])
    def test_round_trip(self, box):
        rng = np.random.default_rng(7)
        f = random_poly(rng, box)
        grid = tuple(2 * n + 3 for n in box)
        g = GridFunction(grid, f.sample(grid))
        back = forward_coeffs(g, box)
        assert np.max(np.abs(back.coeffs - f.coeffs)) < 1e-12

    def test_grid_too_small(self):
        with pytest.raises(AliasingError):
            forward_coeffs(GridFunction((4,), np.zeros(4)), (2,))

    def test_linearity(self):
        rng = np.random.default_rng(3)
        a = rng.standard_normal((2, 7))
        fa = forward_coeffs(GridFunction((7,), a[0]), (2,))
        fb = forward_coeffs(GridFunction((7,), a[1]), (2,))
        fab = forward_coeffs(GridFunction((7,), a[0] + a[1]), (2,))
        assert np.max(np.abs(fab.coeffs - (fa + fb).coeffs)) < 1e-12


class TestEvaluate:
    def test_dirichlet_at_pi(self):
        from torusdisc.kernels import dirichlet
        val = dirichlet(1).evaluate([[np.pi]])[0]
        assert val.real == pytest.approx(-1.0, abs=1e-12)

    def test_single_coeff_at_origin(self):
        f = TrigPoly.exponential((2, -1))
        assert f.evaluate([[0.0, 0.0]])[0] == pytest.approx(1.0)

    @pytest.mark.parametrize("box", [(4,), (3, 2)])
    def test_against_naive_sum(self, box):
        rng = np.random.default_rng(11)
        f = random_poly(rng, box)
        xs = rng.uniform(0, 2 * np.pi, size=(5, len(box)))
        fast = f.evaluate(xs)
        for i, x in enumerate(xs):
            assert abs(fast[i] - naive_eval(f, x)) < 1e-12

    def test_additivity(self):
        rng = np.random.default_rng(13)
        f = random_poly(rng, (3, 3))
        g = random_poly(rng, (2, 4))
        xs = rng.uniform(0, 2 * np.pi, size=(4, 2))
        lhs = (f + g).evaluate(xs)
        rhs = f.evaluate(xs) + g.evaluate(xs)
        assert np.max(np.abs(lhs - rhs)) < 1e-12


class TestLpNorm:
    @pytest.mark.parametrize("p", [1, 1.5, 2, 4, np.inf])
    def test_constant_one(self, p):
        assert lp_norm(TrigPoly.constant(1.0), p) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("j", [1, 4, 17, 64])
    def test_fejer_l1(self, j):
        from torusdisc.kernels import fejer
        assert lp_norm(fejer(j), 1, oversample=8) == pytest.approx(1.0, abs=1e-6)

    def test_exponential_l2(self):
        assert lp_norm(TrigPoly.exponential((1,)), 2) == pytest.approx(1.0)

    def test_parseval(self):
        rng = np.random.default_rng(5)
        f = random_poly(rng, (4, 3))
        assert lp_norm(f, 2) ** 2 == pytest.approx(np.sum(np.abs(f.coeffs) ** 2),
                                                   abs=1e-12)

    def test_monotone_in_p(self):
        rng = np.random.default_rng(9)
        f = random_poly(rng, (5,), real=True)
        norms = [lp_norm(f, p, oversample=8) for p in (1, 1.5, 2, 3, np.inf)]
        for lo, hi in zip(norms, norms[1:]):
            assert lo <= hi * (1 + 1e-9)

    def test_p_below_one_rejected(self):
        with pytest.raises(ValueError):
            lp_norm(TrigPoly.constant(1.0), 0.5)

    def test_exactness_flag(self):
        f = TrigPoly.constant(2.0)
        assert lp_norm(f, 2).exact
        assert not lp_norm(f, 3).exact


class TestStructure:
    def test_real_flag(self):
        rng = np.random.default_rng(21)
        assert random_poly(rng, (3, 2), real=True).is_real()
        f = TrigPoly.exponential((1,))
        assert not f.is_real()

    def test_out_of_box_coeff_is_zero(self):
        f = TrigPoly.constant(1.0)
        assert f.coeff([5]) == 0

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            TrigPoly((2,), np.zeros(3, dtype=complex))

    def test_tensor_matches_univariate_products(self):
        rng = np.random.default_rng(2)
        u = random_poly(rng, (2,))
        v = random_poly(rng, (3,))
        f = tensor(u, v)
        xs = rng.uniform(0, 2 * np.pi, size=(6, 2))
        lhs = f.evaluate(xs)
        rhs = u.evaluate(xs[:, :1]) * v.evaluate(xs[:, 1:])
        assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_product_matches_grid_multiplication(self):
        rng = np.random.default_rng(17)
        f = random_poly(rng, (3, 2), real=True)
        g = random_poly(rng, (2, 2), real=True)
        fg = product(f, g)
        grid = tuple(2 * n + 3 for n in fg.box)
        direct = f.sample(grid) * g.sample(grid)
        back = forward_coeffs(GridFunction(grid, direct), fg.box)
        assert np.max(np.abs(back.coeffs - fg.coeffs)) < 1e-10
