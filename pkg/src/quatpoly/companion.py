"""Companion matrices over the quaternions and their complex translations.

A quaternionic matrix M = Z + jW (Z, W complex, entrywise symplectic split)
acts on symplectically stacked vectors (omega_1..omega_n, sigma_1..sigma_n)
as the 2n x 2n complex adjoint

    [[ Z, -conj(W) ],
     [ W,  conj(Z) ]]

whose spectrum is closed under complex conjugation and carries the right
eigenvalues of M.  An alternative translation replaces each entry by its own
2x2 block; the two layouts differ by the perfect-shuffle permutation P (an
exact rearrangement, interleaved = P @ block @ P.T).

conj(W) here is the entrywise complex conjugate, never the conjugate
transpose; that is the reading under which the adjoint of a companion matrix
reproduces the translated matrices used throughout the solver.
"""

from __future__ import annotations

import numpy as np

from .polynomial import BilateralQuadratic, UnilateralPolynomial
from .quaternion import Quaternion

__all__ = [
    "QuaternionMatrix",
    "companion_matrix",
    "generalized_companion",
    "complex_adjoint",
    "interleaved_adjoint",
    "shuffle_permutation",
    "equivalence_gap",
]


class QuaternionMatrix:
    """Dense quaternion matrix stored as a (rows, cols, 4) float array.

    Component order is (w, x, y, z).  Row-major, immutable by convention.
    """

    __slots__ = ("data",)

    def __init__(self, data):
        arr = np.asarray(data, dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise ValueError("expected an array of shape (rows, cols, 4)")
        self.data = arr

    @classmethod
    def from_entries(cls, rows) -> "QuaternionMatrix":
        """Build from a nested sequence of Quaternion (or real) entries."""
        data = [[_components(e) for e in row] for row in rows]
        return cls(np.array(data, dtype=float))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QuaternionMatrix":
        return cls(np.zeros((rows, cols, 4)))

    @classmethod
    def identity(cls, n: int) -> "QuaternionMatrix":
        data = np.zeros((n, n, 4))
        data[np.arange(n), np.arange(n), 0] = 1.0
        return cls(data)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, rc) -> Quaternion:
        r, c = rc
        return Quaternion(*self.data[r, c])

    def entries(self) -> list[Quaternion]:
        """Row-major list of entries."""
        return [Quaternion(*e) for row in self.data for e in row]

    def split(self) -> tuple[np.ndarray, np.ndarray]:
        """Entrywise symplectic split: (Z, W) complex with M = Z + jW."""
        w, x, y, z = (self.data[:, :, c] for c in range(4))
        return w + 1j * x, y - 1j * z

    def __matmul__(self, other):
        if isinstance(other, QuaternionMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch in quaternion matmul")
            return QuaternionMatrix(_hamilton_matmul(self.data, other.data))
        return NotImplemented

    def matvec(self, vector) -> list[Quaternion]:
        """Apply to a quaternion column vector (sequence of Quaternion)."""
        col = np.array([_components(v) for v in vector], dtype=float)
        if col.shape[0] != self.cols:
            raise ValueError("dimension mismatch in quaternion matvec")
        out = _hamilton_matmul(self.data, col[:, None, :])
        return [Quaternion(*out[r, 0]) for r in range(self.rows)]

    def max_abs_diff(self, other: "QuaternionMatrix") -> float:
        return float(np.max(np.abs(self.data - other.data)))

    def frobenius(self) -> float:
        return float(np.sqrt(np.sum(self.data * self.data)))

    def __repr__(self) -> str:
        body = "; ".join(
            ", ".join(str(Quaternion(*e)) for e in row) for row in self.data
        )
        return f"QuaternionMatrix[{body}]"


def _components(value) -> tuple[float, float, float, float]:
    if isinstance(value, Quaternion):
        return (value.w, value.x, value.y, value.z)
    if isinstance(value, (int, float)):
        return (float(value), 0.0, 0.0, 0.0)
    raise TypeError(f"cannot interpret {value!r} as a quaternion entry")


def _hamilton_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton product lifted to matrices of components."""
    aw, ax, ay, az = (a[:, :, c] for c in range(4))
    bw, bx, by, bz = (b[:, :, c] for c in range(4))
    return np.stack(
        [
            aw @ bw - ax @ bx - ay @ by - az @ bz,
            aw @ bx + ax @ bw + ay @ bz - az @ by,
            aw @ by - ax @ bz + ay @ bw + az @ bx,
            aw @ bz + ax @ by - ay @ bx + az @ bw,
        ],
        axis=2,
    )


def companion_matrix(poly: UnilateralPolynomial) -> QuaternionMatrix:
    """n x n companion matrix of a monic unilateral polynomial.

    First row carries (a_{n-1}, ..., a_1, a_0); ones on the subdiagonal.
    Right eigenvalue classes of this matrix are the similarity classes of the
    polynomial's zeros.
    """
    n = poly.degree
    data = np.zeros((n, n, 4))
    for c, a in enumerate(reversed(poly.coeffs)):
        data[0, c] = _components(a)
    for r in range(1, n):
        data[r, r - 1, 0] = 1.0
    return QuaternionMatrix(data)


def generalized_companion(bq: BilateralQuadratic) -> QuaternionMatrix:
    """2 x 2 companion [[alpha1, alpha0], [1, beta1]] of a bilateral quadratic.

    Reduces to the standard companion matrix when beta1 = 0.
    """
    return QuaternionMatrix.from_entries(
        [[bq.alpha1, bq.alpha0], [Quaternion(1.0), bq.beta1]]
    )


def complex_adjoint(m: QuaternionMatrix) -> np.ndarray:
    """Block translation [[Z, -conj(W)], [W, conj(Z)]] of a square matrix.

    Acts on stacked vectors (omega_1..omega_n, sigma_1..sigma_n); this is the
    default translation everywhere in the solver.
    """
    if not m.is_square():
        raise ValueError("complex_adjoint requires a square matrix")
    Z, W = m.split()
    return np.block([[Z, -W.conj()], [W, Z.conj()]])


def interleaved_adjoint(m: QuaternionMatrix) -> np.ndarray:
    """Entrywise translation: each entry becomes its own 2x2 complex block.

    Acts on interleaved vectors (omega_1, sigma_1, ..., omega_n, sigma_n).
    """
    if not m.is_square():
        raise ValueError("interleaved_adjoint requires a square matrix")
    n = m.rows
    Z, W = m.split()
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    out[0::2, 0::2] = Z
    out[0::2, 1::2] = -W.conj()
    out[1::2, 0::2] = W
    out[1::2, 1::2] = Z.conj()
    return out


def shuffle_permutation(n: int) -> np.ndarray:
    """2n x 2n perfect-shuffle permutation mapping stacked to interleaved.

    Row 2t-1 selects component t and row 2t selects component n+t
    (1-indexed), i.e. P @ (w1..wn, s1..sn) = (w1, s1, ..., wn, sn).
    P is orthogonal (P @ P.T = I) but an involution only for n <= 2.
    """
    if n < 1:
        raise ValueError("n must be positive")
    P = np.zeros((2 * n, 2 * n))
    t = np.arange(n)
    P[2 * t, t] = 1.0
    P[2 * t + 1, n + t] = 1.0
    return P


def equivalence_gap(m: QuaternionMatrix) -> float:
    """Max-abs difference between the two translations after unshuffling.

    interleaved_adjoint(m) and P @ complex_adjoint(m) @ P.T are rearrangements
    of identical entries, so the gap is exactly 0.0 for every square m.
    """
    if not m.is_square():
        raise ValueError("equivalence_gap requires a square matrix")
    P = shuffle_permutation(m.rows)
    lhs = interleaved_adjoint(m)
    rhs = P @ complex_adjoint(m) @ P.T
    return float(np.max(np.abs(lhs - rhs)))
