"""Right-linear quaternionic ODEs with constant coefficients.

The homogeneous equation

    Psi^(n)(x) - a_{n-1} Psi^(n-1)(x) - ... - a_1 Psi'(x) - a_0 Psi(x) = 0

with quaternionic coefficients and Psi: R -> H admits exponential solutions
Psi(x) = exp(q x): substituting turns the equation into the unilateral
characteristic polynomial q^n - sum_s a_s q^s = 0.  Because the equation is
H-linear from the right, exp(q x) * c solves it for every constant
quaternion c, so the zeros supply a basis of exponential solutions.

``verify_solution`` substitutes a candidate exponent back into the equation
with second-order central finite differences; residuals shrink like h^2 for
true exponents and stay O(1) for impostors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .polynomial import UnilateralPolynomial
from .quaternion import Quaternion, exp
from .rootfinder import DEFAULT_TOL, Root, SolveReport, SphereFamily, solve_unilateral

__all__ = ["OdeProblem", "ExponentialBasis", "characteristic", "solve_ode",
           "verify_solution"]


@dataclass(frozen=True)
class OdeProblem:
    """Constant-coefficient problem Psi^(n) - sum_s a_s Psi^(s) = 0.

    ``coeffs`` is (a_0, ..., a_{n-1}), already in the subtracted convention.
    """

    coeffs: tuple[Quaternion, ...]

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("order must be >= 1")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class ExponentialBasis:
    """Exponents of the basis solutions exp(q x) (right constants allowed)."""

    exponents: tuple[Root, ...]
    spheres: tuple[SphereFamily, ...]
    report: SolveReport


def characteristic(prob: OdeProblem) -> UnilateralPolynomial:
    """Characteristic polynomial; coefficients carry over unchanged."""
    return UnilateralPolynomial(prob.coeffs)


def solve_ode(prob: OdeProblem, tol: float = DEFAULT_TOL) -> ExponentialBasis:
    """Exponential basis from the zeros of the characteristic polynomial.

    Spherical zero families contribute one representative exponent plus the
    family invariants; no completeness claim is made in that case.
    """
    report = solve_unilateral(characteristic(prob), tol)
    return ExponentialBasis(
        exponents=tuple(report.roots),
        spheres=tuple(report.spheres),
        report=report,
    )


def _fd_weights(deriv: int) -> tuple[np.ndarray, int]:
    """Central finite-difference weights of order-h^2 accuracy.

    Returns (weights, m) for the symmetric stencil -m..m; the derivative is
    sum_o w_o f(x + o h) / h^deriv.
    """
    m = (deriv + 1) // 2
    if 2 * m + 1 < deriv + 1:
        m += 1
    offsets = np.arange(-m, m + 1, dtype=float)
    count = offsets.size
    vander = np.vstack([offsets**t for t in range(count)])
    rhs = np.zeros(count)
    rhs[deriv] = factorial(deriv)
    return np.linalg.solve(vander, rhs), m


def _equation_residual(prob: OdeProblem, psi, xs, h: float) -> float:
    """Max norm of the equation applied to a sampled Psi via central FD."""
    n = prob.order
    weights = [_fd_weights(s) for s in range(1, n + 1)]
    worst = 0.0
    for x in np.asarray(xs, dtype=float):
        samples: dict[int, np.ndarray] = {}

        def sample(o: int) -> np.ndarray:
            if o not in samples:
                q = psi(x + o * h)
                samples[o] = np.array([q.w, q.x, q.y, q.z])
            return samples[o]

        def derivative(s: int) -> np.ndarray:
            w, m = weights[s - 1]
            acc = np.zeros(4)
            for o, wo in zip(range(-m, m + 1), w):
                if wo != 0.0:
                    acc += wo * sample(o)
            return acc / h**s

        res = derivative(n)
        for s in range(1, n):
            a = prob.coeffs[s]
            ds = derivative(s)
            res = res - _left_mul(a, ds)
        res = res - _left_mul(prob.coeffs[0], sample(0))
        worst = max(worst, float(np.linalg.norm(res)))
    return worst


def _left_mul(a: Quaternion, comp: np.ndarray) -> np.ndarray:
    q = a * Quaternion(*comp)
    return np.array([q.w, q.x, q.y, q.z])


def verify_solution(prob: OdeProblem, q: Quaternion, xs, h: float) -> float:
    """Max finite-difference residual of Psi(x) = exp(q x) over the grid xs.

    O(h^2) convergent to zero when q solves the characteristic polynomial;
    bounded away from zero otherwise.
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    return _equation_residual(prob, lambda x: exp(q * x), xs, h)


def verify_right_constant(prob: OdeProblem, q: Quaternion, c: Quaternion,
                          xs, h: float) -> float:
    """Residual for Psi(x) = exp(q x) * c: right constants preserve solutions."""
    if h <= 0:
        raise ValueError("step h must be positive")
    return _equation_residual(prob, lambda x: exp(q * x) * c, xs, h)
