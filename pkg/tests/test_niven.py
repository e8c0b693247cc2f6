import math

import numpy as np
import pytest

from quatpoly import (
    I,
    J,
    K,
    ONE,
    Quaternion,
    SphericalRootSignal,
    UnilateralPolynomial,
    ZERO,
    root_from_d,
    solve_niven,
    solve_spv,
    solve_unilateral,
    step1,
    step2_residual,
)

EQ15 = UnilateralPolynomial([K - ONE, -J])
CUBIC = UnilateralPolynomial([J, -I, -K])
SPHERE_POLY = UnilateralPolynomial([Quaternion(-1), ZERO])  # q^2 + 1


def rand_quat(rng, scale=1.0):
    return Quaternion(*(rng.uniform(-1.0, 1.0, 4) * scale))


def hausdorff(a, b):
    if not a or not b:
        return math.inf
    d_ab = max(min((x - y).norm() for y in b) for x in a)
    d_ba = max(min((x - y).norm() for y in a) for x in b)
    return max(d_ab, d_ba)


class TestStep1:
    def test_worked_pairs_exact(self):
        f = step1(EQ15, -1.0, 0.0)
        assert f.d0 == K and f.d1 == -J
        f = step1(EQ15, -2.0, 0.0)
        assert f.d0 == K + ONE and f.d1 == -J

    def test_quadratic_collapse(self):
        # for n = 2: d1 = a1 - c1 and d0 = a0 - c0
        rng = np.random.default_rng(51)
        for _ in range(50):
            poly = UnilateralPolynomial([rand_quat(rng), rand_quat(rng)])
            c0, c1 = rng.uniform(-2, 2, 2)
            f = step1(poly, c0, c1)
            assert (f.d1 - (poly.coeffs[1] - Quaternion(c1))).norm() <= 1e-14
            assert (f.d0 - (poly.coeffs[0] - Quaternion(c0))).norm() <= 1e-14

    def test_constant_term_bookkeeping(self):
        # at q = 0 the division identity reads -d0 = -a0 - c0 b0
        rng = np.random.default_rng(52)
        for n in (2, 3, 4, 5):
            poly = UnilateralPolynomial([rand_quat(rng) for _ in range(n)])
            c0, c1 = rng.uniform(-2, 2, 2)
            f = step1(poly, c0, c1)
            b0 = f.b[0] if f.b else Quaternion(-1.0)
            gap = f.d0 - (poly.coeffs[0] + c0 * b0)
            assert gap.norm() <= 1e-13

    def test_division_identity(self):
        # B(q) C2(q) - D1(q) must reproduce A(q) for any (c0, c1)
        rng = np.random.default_rng(53)
        for _ in range(60):
            n = int(rng.integers(2, 7))
            poly = UnilateralPolynomial([rand_quat(rng, 2.0) for _ in range(n)])
            c0, c1 = rng.uniform(-3, 3, 2)
            f = step1(poly, c0, c1)
            for _ in range(5):
                q = rand_quat(rng, 1.5)
                c2 = q * q - c1 * q - Quaternion(c0)
                gap = f.quotient_at(q) * c2 - f.remainder_at(q) - poly.evaluate(q)
                assert gap.norm() <= 1e-10

    def test_degree_one_rejected(self):
        with pytest.raises(ValueError):
            step1(UnilateralPolynomial([ONE]), 0.0, 0.0)


class TestRootFromD:
    def test_worked_values(self):
        assert root_from_d(K, -J) == -I
        assert root_from_d(K + ONE, -J) == -(I + J)

    def test_zero_numerator(self):
        assert root_from_d(ZERO, -J) == ZERO

    def test_spherical_signal(self):
        with pytest.raises(SphericalRootSignal):
            root_from_d(ONE, ZERO)


class TestStep2Residual:
    def test_worked_zeros(self):
        assert step2_residual(EQ15, -1.0, 0.0) == (0.0, 0.0)
        assert step2_residual(EQ15, -2.0, 0.0) == (0.0, 0.0)

    def test_origin_value(self):
        # (|a0|^2, 2 Re[conj(a1) a0]) = (2, 0) for the worked quadratic
        assert step2_residual(EQ15, 0.0, 0.0) == (2.0, 0.0)

    def test_valid_pair_puts_root_on_c2_sphere(self):
        rng = np.random.default_rng(54)
        for _ in range(20):
            poly = UnilateralPolynomial([rand_quat(rng), rand_quat(rng)])
            report = solve_niven(poly)
            for pair in report.diagnostics["c_pairs"]:
                c0, c1 = pair["c0"], pair["c1"]
                f = step1(poly, c0, c1)
                if f.d1.norm() < 1e-6:
                    continue
                q = root_from_d(f.d0, f.d1)
                c2_val = q * q - c1 * q - Quaternion(c0)
                assert c2_val.norm() <= 1e-9


class TestSolveNiven:
    def test_worked_quadratic(self):
        report = solve_niven(EQ15)
        assert report.method == "niven"
        got = sorted([r.q for r in report.roots], key=lambda q: q.norm())
        assert (got[0] - (-I)).norm() <= 1e-9
        assert (got[1] - (-(I + J))).norm() <= 1e-9
        pairs = sorted((round(p["c0"], 6), round(p["c1"], 6))
                       for p in report.diagnostics["c_pairs"])
        assert (-2.0, 0.0) in pairs and (-1.0, 0.0) in pairs

    def test_real_double_root(self):
        report = solve_niven(UnilateralPolynomial([Quaternion(-1),
                                                   Quaternion(2)]))
        assert len(report.roots) == 1
        assert (report.roots[0].q - ONE).norm() <= 1e-6

    def test_spherical(self):
        report = solve_niven(SPHERE_POLY)
        assert len(report.spheres) == 1
        s = report.spheres[0]
        assert abs(s.re) <= 1e-7 and abs(s.imag_norm - 1.0) <= 1e-7
        rep = [r for r in report.roots
               if r.kind == "spherical-representative"][0]
        assert rep.residual <= 1e-10

    def test_agrees_with_eigenvector_route(self):
        rng = np.random.default_rng(55)
        for _ in range(6):
            poly = UnilateralPolynomial([rand_quat(rng), rand_quat(rng)])
            mine = [r.q for r in solve_niven(poly).roots]
            reference = [r.q for r in solve_unilateral(poly).roots]
            assert hausdorff(mine, reference) <= 1e-7

    def test_degree_one_rejected(self):
        with pytest.raises(ValueError):
            solve_niven(UnilateralPolynomial([ONE]))


class TestSolveSpv:
    def test_worked_quadratic(self):
        report = solve_spv(EQ15)
        assert report.method == "spv"
        pairs = sorted((round(p["c0"], 9), round(p["c1"], 9))
                       for p in report.diagnostics["c_pairs"])
        assert pairs == [(-2.0, 0.0), (-1.0, -0.0)] or \
            pairs == [(-2.0, -0.0), (-1.0, 0.0)] or \
            pairs == [(-2.0, 0.0), (-1.0, 0.0)]
        got = sorted([r.q for r in report.roots], key=lambda q: q.norm())
        assert (got[0] - (-I)).norm() <= 1e-9
        assert (got[1] - (-(I + J))).norm() <= 1e-9

    def test_cubic_matches_eigenvector_route(self):
        mine = [r.q for r in solve_spv(CUBIC).roots]
        reference = [r.q for r in solve_unilateral(CUBIC).roots]
        assert hausdorff(mine, reference) <= 1e-7

    def test_spherical_signal(self):
        report = solve_spv(SPHERE_POLY)
        assert report.diagnostics["d1_zero_signals"] >= 1
        assert len(report.spheres) == 1
        s = report.spheres[0]
        assert abs(s.re) <= 1e-9 and abs(s.imag_norm - 1.0) <= 1e-9
        assert report.zero_count() == 2

    def test_real_double_root(self):
        report = solve_spv(UnilateralPolynomial([Quaternion(-1),
                                                 Quaternion(2)]))
        assert len(report.roots) == 2
        for r in report.roots:
            assert (r.q - ONE).norm() <= 1e-6

    def test_multiset_agreement_random(self):
        rng = np.random.default_rng(56)
        for _ in range(40):
            n = int(rng.integers(2, 7))
            poly = UnilateralPolynomial([rand_quat(rng, 2.0) for _ in range(n)])
            ref = solve_unilateral(poly)
            if ref.spheres:
                continue
            spv = solve_spv(poly)
            assert len(spv.roots) == len(ref.roots)
            remaining = [r.q for r in spv.roots]
            for r in ref.roots:
                gaps = [(r.q - s).norm() for s in remaining]
                k = int(np.argmin(gaps))
                assert gaps[k] <= 1e-7
                remaining.pop(k)

    def test_residual_bounds(self):
        rng = np.random.default_rng(57)
        for _ in range(30):
            n = int(rng.integers(2, 6))
            poly = UnilateralPolynomial([rand_quat(rng, 2.0) for _ in range(n)])
            bound = 1e-9 * poly.coefficient_bound() ** n
            for r in solve_spv(poly).roots:
                assert r.residual <= bound
