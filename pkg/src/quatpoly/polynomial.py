"""Coefficient containers for unilateral polynomials and bilateral quadratics.

A unilateral polynomial keeps all coefficients on the left of the powers and
is stored monic in the *subtracted* convention::

    A(q) = q^n - a_{n-1} q^{n-1} - ... - a_1 q - a_0

so ``coeffs[s]`` is the a_s that gets subtracted.  The human-facing text form
``q^2 + j q + (1-k)`` is negated on ingestion by the CLI parser.

A bilateral quadratic has one left and one right linear coefficient::

    B(p) = p^2 - alpha1 * p + p * beta1 - alpha0

and reduces to an equivalent unilateral quadratic through p = q - beta1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quaternion import ONE, Quaternion

__all__ = ["UnilateralPolynomial", "BilateralQuadratic"]


def _as_quaternion(value) -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion(float(value), 0.0, 0.0, 0.0)
    if isinstance(value, complex):
        return Quaternion(value.real, value.imag, 0.0, 0.0)
    raise TypeError(f"cannot interpret {value!r} as a quaternion coefficient")


@dataclass(frozen=True)
class UnilateralPolynomial:
    """Monic left-coefficient polynomial q^n - sum_s a_s q^s.

    ``coeffs`` is (a_0, ..., a_{n-1}); the q^n coefficient is implicitly +1.
    """

    coeffs: tuple[Quaternion, ...]

    def __init__(self, coeffs):
        coeffs = tuple(_as_quaternion(c) for c in coeffs)
        if not coeffs:
            raise ValueError("degree must be >= 1 (need at least a_0)")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def coefficient_bound(self) -> float:
        """1 + max_s |a_s|; every zero q satisfies |q| <= this bound."""
        return 1.0 + max(c.norm() for c in self.coeffs)

    def evaluate(self, q) -> Quaternion:
        """A(q) = q^n - sum_s a_s q^s; zero exactly at the polynomial's zeros.

        Powers are built by repeated left-to-right multiplication (powers of a
        single q commute with each other, so there is no ambiguity).
        """
        q = _as_quaternion(q)
        acc = -self.coeffs[0]          # s = 0 term
        power = ONE
        for s in range(1, self.degree):
            power = power * q
            acc = acc - self.coeffs[s] * power
        return acc + power * q         # + q^n

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs_subtracted": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "UnilateralPolynomial":
        from .quaternion import parse_quaternion

        coeffs = [parse_quaternion(c) for c in data["coeffs_subtracted"]]
        degree = int(data.get("degree", len(coeffs)))
        if degree != len(coeffs):
            raise ValueError(
                f"degree {degree} does not match {len(coeffs)} coefficients")
        return cls(coeffs)


@dataclass(frozen=True)
class BilateralQuadratic:
    """Quadratic p^2 - alpha1 p + p beta1 - alpha0 with a right coefficient."""

    alpha1: Quaternion
    beta1: Quaternion
    alpha0: Quaternion

    def __init__(self, alpha1, beta1, alpha0):
        object.__setattr__(self, "alpha1", _as_quaternion(alpha1))
        object.__setattr__(self, "beta1", _as_quaternion(beta1))
        object.__setattr__(self, "alpha0", _as_quaternion(alpha0))

    def evaluate(self, p) -> Quaternion:
        p = _as_quaternion(p)
        return p * p - self.alpha1 * p + p * self.beta1 - self.alpha0

    def coefficient_bound(self) -> float:
        return 1.0 + max(self.alpha1.norm(), self.beta1.norm(), self.alpha0.norm())

    def to_unilateral(self) -> tuple[UnilateralPolynomial, Quaternion]:
        """Equivalent unilateral quadratic under the shift p = q - beta1.

        Returns (poly, shift) with poly(q) = q^2 - (alpha1+beta1) q
        - (alpha0 - alpha1*beta1) and shift = beta1, so that
        poly.evaluate(p + shift) == self.evaluate(p) identically.
        """
        a1 = self.alpha1 + self.beta1
        a0 = self.alpha0 - self.alpha1 * self.beta1
        return UnilateralPolynomial((a0, a1)), self.beta1

    def to_json(self) -> dict:
        return {
            "alpha1": str(self.alpha1),
            "beta1": str(self.beta1),
            "alpha0": str(self.alpha0),
        }

    @classmethod
    def from_json(cls, data: dict) -> "BilateralQuadratic":
        from .quaternion import parse_quaternion

        return cls(
            parse_quaternion(data["alpha1"]),
            parse_quaternion(data["beta1"]),
            parse_quaternion(data["alpha0"]),
        )
