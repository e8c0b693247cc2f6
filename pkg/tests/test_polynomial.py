import math

import numpy as np
import pytest

from quatpoly import (
    BilateralQuadratic,
    I,
    J,
    K,
    ONE,
    Quaternion,
    UnilateralPolynomial,
    ZERO,
)

EQ15 = UnilateralPolynomial([K - ONE, -J])        # q^2 + jq + (1-k)
CUBIC = UnilateralPolynomial([J, -I, -K])         # q^3 + kq^2 + iq - j
BILATERAL = BilateralQuadratic(I, J, K)           # p^2 - ip + pj - k


def rand_quat(rng, scale=1.0):
    return Quaternion(*(rng.uniform(-1.0, 1.0, 4) * scale))


class TestUnilateralEvaluate:
    def test_quadratic_zero(self):
        assert EQ15.evaluate(-I) == ZERO
        assert EQ15.evaluate(-(I + J)) == ZERO

    def test_constant_term(self):
        # A(0) = -a_0
        assert EQ15.evaluate(ZERO) == ONE - K

    def test_cubic_zeros(self):
        # the cubic's non-real-axis zeros are (+-sqrt2 + j - k)/2
        s2 = math.sqrt(2.0)
        for root in (-K,
                     Quaternion(s2 / 2, 0, 0.5, -0.5),
                     Quaternion(-s2 / 2, 0, 0.5, -0.5)):
            assert CUBIC.evaluate(root).norm() <= 1e-12

    def test_monic_growth(self):
        rng = np.random.default_rng(11)
        t = 1e4
        for n in (1, 2, 4, 6):
            poly = UnilateralPolynomial([rand_quat(rng, 2.0) for _ in range(n)])
            ratio = poly.evaluate(Quaternion(t)).norm() / t**n
            assert abs(ratio - 1.0) <= 1e-2

    def test_complex_subfield_matches_horner(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            n = int(rng.integers(1, 7))
            cs = [complex(rng.normal(), rng.normal()) for _ in range(n)]
            poly = UnilateralPolynomial([Quaternion(c.real, c.imag, 0, 0)
                                         for c in cs])
            z = complex(rng.normal(), rng.normal())
            expected = z**n - sum(c * z**s for s, c in enumerate(cs))
            got = poly.evaluate(Quaternion(z.real, z.imag, 0, 0))
            assert abs(complex(got.w, got.x) - expected) <= 1e-13 * (1 + abs(expected))
            assert abs(got.y) <= 1e-13 and abs(got.z) <= 1e-13

    def test_validation(self):
        with pytest.raises(ValueError):
            UnilateralPolynomial([])
        assert UnilateralPolynomial([1.5]).degree == 1
        assert UnilateralPolynomial([1.5]).coeffs[0] == Quaternion(1.5)

    def test_coefficient_bound(self):
        assert EQ15.coefficient_bound() == 1.0 + math.sqrt(2.0)


class TestBilateral:
    def test_worked_zeros(self):
        assert BILATERAL.evaluate(-J) == ZERO
        assert BILATERAL.evaluate(I) == ZERO

    def test_degenerate(self):
        assert BilateralQuadratic(ZERO, ZERO, ZERO).evaluate(ZERO) == ZERO

    def test_reduction_coefficients(self):
        poly, shift = BILATERAL.to_unilateral()
        assert shift == J
        assert poly.coeffs[1] == I + J          # a_1 = alpha1 + beta1
        assert poly.coeffs[0] == ZERO           # a_0 = k - i*j = 0

    def test_reduction_identity_when_beta_zero(self):
        bq = BilateralQuadratic(I, ZERO, K - ONE)
        poly, shift = bq.to_unilateral()
        assert shift == ZERO
        assert poly.coeffs == (K - ONE, I)

    def test_reduction_substitution_identity(self):
        rng = np.random.default_rng(13)
        for _ in range(500):
            bq = BilateralQuadratic(rand_quat(rng, 2), rand_quat(rng, 2),
                                    rand_quat(rng, 2))
            poly, shift = bq.to_unilateral()
            p = rand_quat(rng, 2)
            gap = poly.evaluate(p + shift) - bq.evaluate(p)
            assert gap.norm() <= 1e-12


class TestJson:
    def test_unilateral_roundtrip(self):
        data = EQ15.to_json()
        assert data["degree"] == 2
        assert data["coeffs_subtracted"] == ["-1+k", "-j"]
        assert UnilateralPolynomial.from_json(data) == EQ15

    def test_bilateral_roundtrip(self):
        data = BILATERAL.to_json()
        assert data == {"alpha1": "i", "beta1": "j", "alpha0": "k"}
        assert BilateralQuadratic.from_json(data) == BILATERAL

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ValueError):
            UnilateralPolynomial.from_json(
                {"degree": 3, "coeffs_subtracted": ["1", "j"]})
