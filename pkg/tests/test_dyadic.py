import itertools

import numpy as np
import pytest

from torusdisc.dyadic import (HOELDER_H, BlockIndex, ClassSpec,
                              UndefinedRatioError, block_norm, block_project,
                              blocks_for_box, h_seminorm, mixed_difference,
                              quasi_algebra_ratio, reconstruct, sample_h_ball)
from torusdisc.kernels import block_kernel
from torusdisc.trig import GridFunction, TrigPoly, forward_coeffs, lp_norm, product

H_SPEC = ClassSpec(HOELDER_H, 1.5, 2.0)


def random_real_poly(rng, box):
    shape = tuple(2 * n + 1 for n in box)
    c = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    flip = tuple(slice(None, None, -1) for _ in box)
    return TrigPoly(box, 0.5 * (c + np.conj(c[flip])))


class TestBlockProject:
    def test_two_cosine_lives_in_block_one(self):
        f = TrigPoly((1,), [1.0, 0.0, 1.0])  # 2 cos x
        p1 = block_project(f, (1,))
        assert np.allclose(p1.coeffs, f.coeffs)
        for s in (0, 2, 3):
            assert np.all(block_project(f, (s,)).coeffs == 0)

    def test_constant(self):
        f = TrigPoly.constant(1.0, 2)
        assert block_project(f, (0, 0)).coeff([0, 0]) == 1.0
        assert np.all(block_project(f, (1, 0)).coeffs == 0)
        assert np.all(block_project(f, (2, 1)).coeffs == 0)

    def test_window_values_match_kernel_coefficients(self):
        rng = np.random.default_rng(0)
        f = random_real_poly(rng, (9,))
        s = 3
        a = block_kernel(s)
        proj = block_project(f, (s,))
        for k in range(-9, 10):
            assert proj.coeff([k]) == pytest.approx(f.coeff([k]) * a.coeff([k]),
                                                    abs=1e-14)

    @pytest.mark.parametrize("d,cap", [(1, 4), (2, 4), (3, 3)])
    def test_reconstruction(self, d, cap):
        rng = np.random.default_rng(5 + d)
        deg = 2 ** (cap - 1) - 1
        f = random_real_poly(rng, (deg,) * d)
        back = reconstruct(f, (cap,) * d)
        assert np.max(np.abs(back.coeffs - f.coeffs)) < 1e-12


class TestBlockStructure:
    def test_partition_of_unity(self):
        cap = 7
        total = np.zeros(2 ** (cap - 1) + 1)
        for s in range(cap + 1):
            a = block_kernel(s)
            for k in range(len(total)):
                total[k] += a.coeff([k]).real
        assert np.max(np.abs(total - 1.0)) < 1e-12

    def test_disjoint_beyond_neighbors(self):
        for s, t in itertools.combinations(range(9), 2):
            if abs(s - t) < 2:
                continue
            a, b = block_kernel(s), block_kernel(t)
            for k in range(-b.box[0], b.box[0] + 1):
                assert a.coeff([k]) * b.coeff([k]) == 0

    def test_blocks_for_box(self):
        names = [b.s for b in blocks_for_box((4,))]
        # block 4 starts at |k| = 5, outside the box
        assert names == [(0,), (1,), (2,), (3,)]
        assert [b.s for b in blocks_for_box((5,))][-1] == (4,)
        assert BlockIndex((2, 1)).l1 == 3


class TestHSeminorm:
    @pytest.mark.parametrize("r,p", [(0.5, 1), (1.0, 2), (2.0, np.inf)])
    def test_constant(self, r, p):
        assert h_seminorm(TrigPoly.constant(1.0), r, p) == pytest.approx(1.0,
                                                                         abs=1e-9)

    def test_two_cosine(self):
        f = TrigPoly((1,), [1.0, 0.0, 1.0])
        assert h_seminorm(f, 1.0, 2.0) == pytest.approx(2 * np.sqrt(2))

    def test_homogeneity(self):
        rng = np.random.default_rng(1)
        f = random_real_poly(rng, (6,))
        h = h_seminorm(f, 1.2, 2.0)
        assert h_seminorm(f * 3.5, 1.2, 2.0) == pytest.approx(3.5 * h)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            f = random_real_poly(rng, (8,))
            g = random_real_poly(rng, (8,))
            lhs = h_seminorm(f + g, 1.5, 2.0)
            assert lhs <= h_seminorm(f, 1.5, 2.0) + h_seminorm(g, 1.5, 2.0) + 1e-10

    def test_block_norm_p2_matches_quadrature(self):
        rng = np.random.default_rng(3)
        f = random_real_poly(rng, (11,))
        for s in range(5):
            exact = block_norm(f, (s,), 2)
            quad = float(lp_norm(block_project(f, (s,)), 2))
            assert exact == pytest.approx(quad, abs=1e-12)


class TestMixedDifference:
    def test_constant_vanishes(self):
        f = TrigPoly.constant(4.0, 2)
        d = mixed_difference(f, (0.3, 0.7), 2, e=(0,))
        assert np.all(np.abs(d.coeffs) < 1e-15)

    def test_single_exponential_multiplier(self):
        k, t = 3, 0.47
        f = TrigPoly.exponential((k,))
        d = mixed_difference(f, (t,), 1)
        assert abs(d.coeff([k])) == pytest.approx(2 * abs(np.sin(k * t / 2)))

    def test_identity_on_empty_subset(self):
        rng = np.random.default_rng(4)
        f = random_real_poly(rng, (5,))
        d = mixed_difference(f, (0.1,), 2, e=())
        assert np.allclose(d.coeffs, f.coeffs)

    def test_h_ball_member_difference_bound_calibration(self):
        # members of the unit ball obey ||Delta_t^l(e) f||_p <= B prod |t_j|^r
        # with an empirically calibrated B; report it and require finiteness
        spec = H_SPEC
        l = int(spec.r) + 1
        f = sample_h_ball(spec, 4, 123, dim=2)
        rng = np.random.default_rng(9)
        worst = 0.0
        for _ in range(30):
            t = rng.uniform(0.05, 1.0, size=2)
            e = tuple(sorted(rng.choice(2, size=rng.integers(1, 3), replace=False)))
            nrm = float(lp_norm(mixed_difference(f, t, l, e=e), spec.p))
            ratio = nrm / np.prod([t[j] ** spec.r for j in e])
            worst = max(worst, ratio)
        assert np.isfinite(worst) and worst > 0
        print(f"calibrated mixed-difference constant: {worst:.3f}")


class TestSampler:
    def test_deterministic(self):
        a = sample_h_ball(H_SPEC, 4, 99, dim=2)
        b = sample_h_ball(H_SPEC, 4, 99, dim=2)
        assert np.array_equal(a.coeffs, b.coeffs)

    def test_on_ball_boundary(self):
        for seed in range(3):
            f = sample_h_ball(H_SPEC, 4, seed, dim=2)
            assert h_seminorm(f, 1.5, 2.0) <= 1 + 1e-6
            assert h_seminorm(f, 1.5, 2.0) >= 1 - 1e-6

    def test_degree_cap(self):
        f = sample_h_ball(H_SPEC, 3, 7, dim=1)
        assert f.box[0] < 2 ** 3

    def test_real_valued(self):
        assert sample_h_ball(H_SPEC, 4, 11, dim=2).is_real()

    def test_rejects_rough_classes(self):
        with pytest.raises(ValueError):
            sample_h_ball(ClassSpec(HOELDER_H, 0.4, 2.0), 4, 0, dim=1)


class TestQuasiAlgebra:
    def test_constants(self):
        one = TrigPoly.constant(1.0)
        assert quasi_algebra_ratio(one, one, 1.0, 2.0) == pytest.approx(1.0)

    def test_two_cosines(self):
        f = TrigPoly((1,), [1.0, 0.0, 1.0])  # 2 cos x
        # oracle by coefficient arithmetic: (2cos x)^2 = 2 + 2cos 2x
        fg = product(f, f)
        assert fg.coeff([0]) == pytest.approx(2.0)
        assert fg.coeff([2]) == pytest.approx(1.0)
        h_f = 2 * np.sqrt(2)                      # block 1, Parseval
        h_fg = max(2.0, 2.0 ** 2 * np.sqrt(2))    # blocks 0 and 2
        expect = h_fg / h_f ** 2
        assert quasi_algebra_ratio(f, f, 1.0, 2.0) == pytest.approx(expect)

    def test_zero_denominator(self):
        zero = TrigPoly.zeros((1,))
        with pytest.raises(UndefinedRatioError):
            quasi_algebra_ratio(zero, zero, 1.0, 2.0)

    def test_finite_over_samples(self):
        vals = []
        for i in range(10):
            f = sample_h_ball(H_SPEC, 4, 2 * i, dim=2)
            g = sample_h_ball(H_SPEC, 4, 2 * i + 1, dim=2)
            vals.append(quasi_algebra_ratio(f, g, 1.5, 2.0))
        assert np.all(np.isfinite(vals))
        assert max(vals) > 1.0

    def test_product_convolution_matches_grid(self):
        rng = np.random.default_rng(8)
        f = random_real_poly(rng, (4, 3))
        g = random_real_poly(rng, (3, 3))
        fg = product(f, g)
        grid = tuple(2 * n + 3 for n in fg.box)
        direct = f.sample(grid) * g.sample(grid)
        back = forward_coeffs(GridFunction(grid, direct), fg.box)
        assert np.max(np.abs(back.coeffs - fg.coeffs)) < 1e-10


class TestClassSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            ClassSpec("nope", 1.0, 2.0)
        with pytest.raises(ValueError):
            ClassSpec(HOELDER_H, -1.0, 2.0)
        with pytest.raises(ValueError):
            ClassSpec(HOELDER_H, 1.0, 0.5)

    def test_continuity_threshold(self):
        assert ClassSpec(HOELDER_H, 1.5, 2.0).continuous
        assert not ClassSpec(HOELDER_H, 0.4, 2.0).continuous
