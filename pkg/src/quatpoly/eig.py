"""Dense complex eigensolver: Hessenberg reduction + shifted QR + vectors.

Sized for the 2n x 2n adjoints of companion matrices at desk scale
(n up to a few tens).  The pipeline is the textbook one:

1. balance (radix-2 diagonal similarity, eigenvalues only),
2. unitary reduction to upper Hessenberg form by Householder reflectors,
3. explicit single-shift QR with the Wilkinson shift and bottom-up
   deflation, giving the eigenvalues,
4. one inverse-iteration eigenvector per eigenvalue on the *original*
   matrix, from the fixed start vector (1,..,1)/sqrt(dim), with the shift
   perturbed by 1e-10*||m||_F to dodge exact singularity.

Repeated eigenvalues re-orthogonalize later iterates against the vectors
already accepted for the same eigenvalue, so a g-dimensional eigenspace
yields g independent vectors.  All outputs are deterministic: eigenvalues
are sorted by (Re, Im) and each vector's largest component is rotated to be
real positive.

References
----------
..[1] Golub & Van Loan, "Matrix Computations", 4th ed., ch. 7.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Eigenpair",
    "hessenberg",
    "eigen_all",
    "eigenvector_for",
    "IterationLimitError",
    "ConvergenceError",
]

#: |Im(lam)| below this multiple of ||m||_F is snapped onto the real axis
REAL_SNAP = 1e-9

#: eigenvalues closer than this multiple of (1 + ||m||_F) share an eigenspace
CLUSTER_TOL = 1e-8

_SHIFT_PERTURBATION = 1e-10
_MAX_INVERSE_STEPS = 50


class IterationLimitError(RuntimeError):
    """QR failed to deflate within 30*dim sweeps; partial spectrum attached."""

    def __init__(self, message: str, eigenvalues):
        super().__init__(message)
        self.eigenvalues = list(eigenvalues)


class ConvergenceError(RuntimeError):
    """Inverse iteration stagnated above the residual tolerance."""


@dataclass(frozen=True)
class Eigenpair:
    """Eigenvalue, unit eigenvector and the residual ||M v - lambda v||_2."""

    lam: complex
    vector: np.ndarray
    residual: float


def _as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    return a


def _balance(a: np.ndarray) -> np.ndarray:
    """Radix-2 diagonal similarity equalizing row/column norms (in place)."""
    n = a.shape[0]
    radix = 2.0
    converged = False
    while not converged:
        converged = True
        for i in range(n):
            r = np.sum(np.abs(a[i, :])) - abs(a[i, i])
            c = np.sum(np.abs(a[:, i])) - abs(a[i, i])
            if r == 0.0 or c == 0.0:
                continue
            f = 1.0
            s = c + r
            while c < r / radix:
                f *= radix
                c *= radix
                r /= radix
            while c >= r * radix:
                f /= radix
                c /= radix
                r *= radix
            if c + r < 0.95 * s:
                converged = False
                a[:, i] *= f
                a[i, :] /= f
    return a


def hessenberg(m) -> tuple[np.ndarray, np.ndarray]:
    """Unitary reduction to upper Hessenberg form.

    Returns (H, Q) with H upper Hessenberg, Q unitary and Q @ H @ Q^H == m
    up to roundoff.
    """
    a = _as_square(m).copy()
    n = a.shape[0]
    q = np.eye(n, dtype=complex)
    for k in range(n - 2):
        x = a[k + 1:, k]
        nx = np.linalg.norm(x)
        if nx == 0.0:
            continue
        alpha = -nx if x[0] == 0 else -cmath.exp(1j * cmath.phase(x[0])) * nx
        v = x.copy()
        v[0] -= alpha
        nv = np.linalg.norm(v)
        if nv == 0.0:
            continue
        v /= nv
        # P = I - 2 v v^H applied from the left and right
        a[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ a[k + 1:, k:])
        a[:, k + 1:] -= 2.0 * np.outer(a[:, k + 1:] @ v, v.conj())
        q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, v.conj())
        a[k + 1, k] = alpha
        a[k + 2:, k] = 0.0
    return a, q


def _givens(f: complex, g: complex) -> tuple[float, complex]:
    """(c, s) with [[c, s], [-conj(s), c]] @ (f, g) = (r, 0), c real."""
    if g == 0:
        return 1.0, 0.0 + 0.0j
    if f == 0:
        return 0.0, g.conjugate() / abs(g)
    af = abs(f)
    d = np.hypot(af, abs(g))
    c = af / d
    s = (f / af) * g.conjugate() / d
    return c, s


def _wilkinson_shift(h: np.ndarray, hi: int) -> complex:
    """Eigenvalue of the trailing 2x2 block closest to its last entry."""
    a = h[hi - 2, hi - 2]
    b = h[hi - 2, hi - 1]
    c = h[hi - 1, hi - 2]
    d = h[hi - 1, hi - 1]
    half = (a - d) / 2.0
    disc = cmath.sqrt(half * half + b * c)
    mu1 = (a + d) / 2.0 + disc
    mu2 = (a + d) / 2.0 - disc
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def _qr_step(h: np.ndarray, lo: int, hi: int, shift: complex) -> None:
    """One explicit shifted QR similarity on the block h[lo:hi, lo:hi]."""
    b = h[lo:hi, lo:hi]
    nb = hi - lo
    idx = np.arange(nb)
    b[idx, idx] -= shift
    rots: list[tuple[float, complex]] = []
    for k in range(nb - 1):
        c, s = _givens(b[k, k], b[k + 1, k])
        rots.append((c, s))
        top = c * b[k, k:] + s * b[k + 1, k:]
        bot = -np.conj(s) * b[k, k:] + c * b[k + 1, k:]
        b[k, k:] = top
        b[k + 1, k:] = bot
        b[k + 1, k] = 0.0
    for k, (c, s) in enumerate(rots):
        rows = min(k + 2, nb - 1) + 1
        left = c * b[:rows, k] + np.conj(s) * b[:rows, k + 1]
        right = -s * b[:rows, k] + c * b[:rows, k + 1]
        b[:rows, k] = left
        b[:rows, k + 1] = right
    b[idx, idx] += shift


def _qr_eigenvalues(h: np.ndarray, tol: float) -> list[complex]:
    """All eigenvalues of an upper Hessenberg matrix by shifted QR."""
    n = h.shape[0]
    normf = np.linalg.norm(h)
    if normf == 0.0:
        return [0.0 + 0.0j] * n
    eigs: list[complex] = []
    hi = n
    sweeps = 0
    stuck = 0
    max_sweeps = 30 * n
    while hi > 0:
        if hi == 1:
            eigs.append(complex(h[0, 0]))
            hi = 0
            break
        # zero out negligible subdiagonals in the active window
        for i in range(1, hi):
            tst = abs(h[i - 1, i - 1]) + abs(h[i, i])
            # 0.1*normf guards stalls when both diagonal entries are ~0
            if h[i, i - 1] != 0.0 and abs(h[i, i - 1]) <= tol * max(tst, 0.1 * normf):
                h[i, i - 1] = 0.0
        if h[hi - 1, hi - 2] == 0.0:
            eigs.append(complex(h[hi - 1, hi - 1]))
            hi -= 1
            stuck = 0
            continue
        # unreduced block [lo, hi)
        lo = hi - 1
        while lo > 0 and h[lo, lo - 1] != 0.0:
            lo -= 1
        if sweeps >= max_sweeps:
            raise IterationLimitError(
                f"QR iteration did not converge within {max_sweeps} sweeps",
                eigs,
            )
        stuck += 1
        if stuck % 10 == 0:
            # exceptional shift to break symmetric stalls
            shift = h[hi - 1, hi - 1] + 0.75 * abs(h[hi - 1, hi - 2])
        else:
            shift = _wilkinson_shift(h, hi)
        _qr_step(h, lo, hi, shift)
        sweeps += 1
    return eigs


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate so the largest-magnitude component is real positive."""
    i = int(np.argmax(np.abs(v)))
    pivot = v[i]
    if pivot != 0:
        v = v * (pivot.conjugate() / abs(pivot))
    return v


def _inverse_iteration(a, lam, ortho, tol, normf):
    """Best inverse-iteration vector for lam, orthogonal to ``ortho``."""
    n = a.shape[0]
    x = np.ones(n, dtype=complex) / np.sqrt(n)
    for u in ortho:
        x -= (u.conj() @ x) * u
    nx = np.linalg.norm(x)
    if nx < 1e-6:
        # start vector nearly inside span(ortho); fall back to a basis vector
        for i in range(n):
            x = np.zeros(n, dtype=complex)
            x[i] = 1.0
            for u in ortho:
                x -= (u.conj() @ x) * u
            nx = np.linalg.norm(x)
            if nx >= 1e-6:
                break
    x /= np.linalg.norm(x)
    perturb = _SHIFT_PERTURBATION * max(normf, 1.0)
    shifted = a - (lam + perturb) * np.eye(n)
    best_vec = x
    best_res = np.inf
    converged = False
    for _ in range(_MAX_INVERSE_STEPS):
        try:
            y = np.linalg.solve(shifted, x)
        except np.linalg.LinAlgError:
            perturb *= 10.0
            shifted = a - (lam + perturb) * np.eye(n)
            continue
        for u in ortho:
            y -= (u.conj() @ y) * u
        ny = np.linalg.norm(y)
        if not np.isfinite(ny) or ny == 0.0:
            break
        x = y / ny
        res = float(np.linalg.norm(a @ x - lam * x))
        if res < best_res:
            best_res = res
            best_vec = x.copy()
        if res <= tol * max(normf, 1.0):
            if converged:
                break
            converged = True  # one polish step past the threshold
    return _fix_phase(best_vec), best_res


def eigen_all(m, tol: float = 1e-12) -> list[Eigenpair]:
    """All eigenvalues (with multiplicity) and one eigenvector each.

    Deflation fires when a subdiagonal entry drops below
    tol*(|h_ii| + |h_jj|); eigenvalues with |Im| <= 1e-9*||m||_F are snapped
    onto the real axis so a real eigenvalue is never double-reported as a
    fake conjugate pair.  Raises IterationLimitError (partial results
    attached) if QR exceeds 30*dim sweeps.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = _as_square(m)
    n = a.shape[0]
    if n == 0:
        return []
    normf = float(np.linalg.norm(a))
    balanced = _balance(a.copy())
    h, _ = hessenberg(balanced)
    eigs = _qr_eigenvalues(h, tol)
    snap = REAL_SNAP * max(normf, 1.0)
    eigs = [complex(e.real, 0.0) if abs(e.imag) <= snap else e for e in eigs]
    eigs.sort(key=lambda e: (e.real, e.imag))

    cluster = CLUSTER_TOL * (1.0 + normf)
    accepted: list[tuple[complex, np.ndarray]] = []
    out: list[Eigenpair] = []
    for lam in eigs:
        ortho = [v for (mu, v) in accepted if abs(mu - lam) <= cluster]
        vec, res = _inverse_iteration(a, lam, ortho, tol, normf)
        accepted.append((lam, vec))
        out.append(Eigenpair(lam, vec, res))
    return out


def eigenvector_for(m, lam: complex, tol: float = 1e-12) -> np.ndarray:
    """Unit eigenvector for a known eigenvalue, by inverse iteration.

    Deterministic (fixed start vector, fixed phase convention).  Raises
    ConvergenceError if the residual stays above tol*||m||_F.
    """
    a = _as_square(m)
    normf = float(np.linalg.norm(a))
    vec, res = _inverse_iteration(a, complex(lam), [], tol, normf)
    if res > tol * max(normf, 1.0):
        raise ConvergenceError(
            f"inverse iteration stagnated at residual {res:.3e} "
            f"for eigenvalue {lam}"
        )
    return vec
