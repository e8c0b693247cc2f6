"""Classical two-step division solver and its spectral shortcut.

Niven's algorithm (Amer. Math. Monthly 48, 1941) divides a monic unilateral
polynomial A_n by a *real*-coefficient quadratic C2(q) = q^2 - c1 q - c0:

    A_n(q) = B_{n-2}(q) * C2(q) - D1(q),      D1(q) = d1 q + d0,

with B monic of degree n-2.  Step 1 computes (b_s, d0, d1) from (c0, c1) by
a downward recurrence; step 2 finds the real pairs (c0, c1) for which the
remainder D1 vanishes on the zero set of C2, i.e.

    c0 |d1|^2 + |d0|^2 = 0        and        c1 |d1|^2 + 2 Re[conj(d1) d0] = 0.

Each solution gives a zero  q = -conj(d1) d0 / |d1|^2  with |q|^2 = -c0 and
2 Re q = c1.  When d1 = 0 (then also d0 = 0 at a genuine solution), C2
divides A_n exactly: for c1^2 + 4 c0 < 0 every point of the similarity
sphere {Re q = c1/2, |q|^2 = -c0} is a zero.

Step 2 is a coupled real system with no closed form; ``solve_niven`` scans
a grid over the root-bound box and polishes candidates with damped Newton.
``solve_spv`` replaces step 2 entirely: it reads (c0, c1) = (-|lam|^2,
2 Re lam) off the spectrum of the translated companion matrix, one pair per
conjugate class.  Both produce the same SolveReport shape as the
eigenvector method, so the three solvers cross-validate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .companion import companion_matrix, complex_adjoint
from .eig import eigen_all
from .polynomial import UnilateralPolynomial
from .quaternion import ONE, Quaternion
from .rootfinder import (
    DEFAULT_TOL,
    Root,
    SolveReport,
    SphereFamily,
    VerificationError,
    _conjugate_classes,
)

__all__ = [
    "NivenFactors",
    "step1",
    "root_from_d",
    "step2_residual",
    "solve_niven",
    "solve_spv",
    "SphericalRootSignal",
]

#: grid resolution for the step-2 scan (per axis)
GRID_POINTS = 400

_NEWTON_MAX_ITER = 100
_NEWTON_FD_STEP = 1e-7
_DEDUPE_TOL = 1e-6


class SphericalRootSignal(RuntimeError):
    """d1 = 0: the real quadratic factor divides exactly (spherical zeros)."""


@dataclass(frozen=True)
class NivenFactors:
    """Division data A_n = B * C2 - D1 for one real pair (c0, c1)."""

    c0: float
    c1: float
    b: tuple[Quaternion, ...]  # b_0 .. b_{n-3}; B = q^{n-2} - sum b_s q^s
    d0: Quaternion
    d1: Quaternion

    def remainder_at(self, q: Quaternion) -> Quaternion:
        return self.d1 * q + self.d0

    def quotient_at(self, q: Quaternion) -> Quaternion:
        """B_{n-2}(q); the empty product for n = 2 is the constant 1."""
        deg = len(self.b)
        power = ONE
        if deg == 0:
            return power
        acc = -self.b[0]
        for s in range(1, deg):
            power = power * q
            acc = acc - self.b[s] * power
        return acc + power * q


def step1(poly: UnilateralPolynomial, c0: float, c1: float) -> NivenFactors:
    """Quotient/remainder coefficients for division by q^2 - c1 q - c0.

    Downward recurrence b_{s-2} = a_s + c1 b_{s-1} + c0 b_s with the formal
    padding b_{n-2} = -1, b_{n-1} = 0 (which also covers the leading rows),
    then d1 = a_1 + c1 b_0 + c0 b_1 and d0 = a_0 + c0 b_0.  For n = 2 this
    collapses to d1 = a_1 - c1, d0 = a_0 - c0.
    """
    n = poly.degree
    if n < 2:
        raise ValueError("division step needs degree >= 2")
    c0, c1 = float(c0), float(c1)
    a = poly.coeffs
    b: dict[int, Quaternion] = {n - 2: Quaternion(-1.0), n - 1: Quaternion(0.0)}
    for s in range(n - 1, 1, -1):
        b[s - 2] = a[s] + c1 * b[s - 1] + c0 * b[s]
    b0 = b[0]
    b1 = b.get(1, Quaternion(0.0))
    d1 = a[1] + c1 * b0 + c0 * b1
    d0 = a[0] + c0 * b0
    body = tuple(b[s] for s in range(n - 2))
    return NivenFactors(c0=c0, c1=c1, b=body, d0=d0, d1=d1)


def root_from_d(d0: Quaternion, d1: Quaternion) -> Quaternion:
    """Zero q = -conj(d1) d0 / |d1|^2 of the linear remainder.

    Raises SphericalRootSignal when d1 = 0: the remainder then vanishes
    identically on the zero set of C2, so every quaternion with that real
    part and modulus is a zero.
    """
    n2 = d1.norm2()
    if n2 == 0.0:
        raise SphericalRootSignal(
            "d1 = 0: the quadratic factor divides exactly"
        )
    return -(d1.conjugate() * d0) / n2


def step2_residual(poly: UnilateralPolynomial, c0: float, c1: float) -> tuple[float, float]:
    """The coupled real system whose zeros are the valid (c0, c1) pairs.

    Returns (c0 |d1|^2 + |d0|^2,  c1 |d1|^2 + 2 Re[conj(d1) d0]).
    """
    f = step1(poly, c0, c1)
    n1 = f.d1.norm2()
    cross = (f.d1.conjugate() * f.d0).w
    return (c0 * n1 + f.d0.norm2(), c1 * n1 + 2.0 * cross)


# -- vectorized step-2 over the search grid -----------------------------------


def _grid_residuals(poly, c0_grid, c1_grid):
    """step2_residual evaluated on a (c0, c1) meshgrid, componentwise.

    The recurrence is linear in the quaternion components with real scalars
    c0, c1, so it vectorizes directly over the grid.
    """
    n = poly.degree
    shape = c0_grid.shape
    a = [np.array([c.w, c.x, c.y, c.z]) for c in poly.coeffs]

    def const(vec):
        return [np.full(shape, vec[i]) for i in range(4)]

    b_curr = const(np.array([-1.0, 0.0, 0.0, 0.0]))   # b_{n-2}
    b_next = const(np.array([0.0, 0.0, 0.0, 0.0]))    # b_{n-1}
    for s in range(n - 1, 1, -1):
        b_prev = [a[s][i] + c1_grid * b_curr[i] + c0_grid * b_next[i]
                  for i in range(4)]
        b_next = b_curr
        b_curr = b_prev
    b0, b1 = b_curr, b_next
    d1 = [a[1][i] + c1_grid * b0[i] + c0_grid * b1[i] for i in range(4)]
    d0 = [a[0][i] + c0_grid * b0[i] for i in range(4)]
    n1 = sum(c * c for c in d1)
    n0 = sum(c * c for c in d0)
    cross = sum(d1[i] * d0[i] for i in range(4))  # Re[conj(d1) d0]
    return c0_grid * n1 + n0, c1_grid * n1 + 2.0 * cross


def _newton_refine(poly, c0, c1, box, fnorm_scale):
    """Damped Newton on the step-2 system with forward-difference Jacobian.

    Near double zeros of the system the Jacobian degenerates; a small
    Levenberg-style diagonal bump keeps the step finite and convergence
    drops to the linear rate, which the iteration budget absorbs.
    """
    c = np.array([c0, c1], dtype=float)
    (c0_lo, c0_hi), (c1_lo, c1_hi) = box
    f = np.array(step2_residual(poly, c[0], c[1]))
    for _ in range(_NEWTON_MAX_ITER):
        fn = np.linalg.norm(f)
        if fn <= 1e-15 * fnorm_scale:
            break
        jac = np.empty((2, 2))
        for k in range(2):
            h = _NEWTON_FD_STEP * (1.0 + abs(c[k]))
            probe = c.copy()
            probe[k] += h
            fk = np.array(step2_residual(poly, probe[0], probe[1]))
            jac[:, k] = (fk - f) / h
        delta = None
        reg = 0.0
        for _ in range(6):
            try:
                delta = np.linalg.solve(jac + reg * np.eye(2), f)
            except np.linalg.LinAlgError:
                delta = None
            if delta is not None and np.all(np.isfinite(delta)) \
                    and np.linalg.norm(delta) <= 1e3 * (1.0 + np.linalg.norm(c)):
                break
            reg = max(reg * 100.0, 1e-10 * (1.0 + np.abs(jac).max()))
            delta = None
        if delta is None:
            break
        step = 1.0
        improved = False
        for _ in range(30):
            trial = c - step * delta
            ft = np.array(step2_residual(poly, trial[0], trial[1]))
            if np.linalg.norm(ft) < fn:
                c, f = trial, ft
                improved = True
                break
            step *= 0.5
        if not improved:
            break
        # flat (multiple) system zeros converge linearly in the argument while
        # the residual is already tiny, so stop on the step, not on f
        if step * np.linalg.norm(delta) <= 1e-13 * (1.0 + np.linalg.norm(c)):
            break
    inside = c0_lo - 1e-9 <= c[0] <= c0_hi + 1e-9 and c1_lo - 1e-9 <= c[1] <= c1_hi + 1e-9
    return c[0], c[1], float(np.linalg.norm(f)), inside


def _sphere_from_pair(c0, c1):
    re = c1 / 2.0
    rho2 = -c0 - re * re
    return re, np.sqrt(max(rho2, 0.0))


def _polish_root(poly, q: Quaternion, max_iter: int = 15) -> tuple[Quaternion, float]:
    """Damped Gauss-Newton cleanup of a root estimate on A itself.

    The step-2 system is flat around multiple zeros, so candidates mapped
    through the remainder formula can carry grid-level error; a few local
    steps on the polynomial restore full accuracy.  Off-track estimates
    simply fail to improve and keep a large residual.
    """

    def value(v):
        r = poly.evaluate(Quaternion(*v))
        return np.array([r.w, r.x, r.y, r.z])

    comp = np.array([q.w, q.x, q.y, q.z], dtype=float)
    f = value(comp)
    fn = float(np.linalg.norm(f))
    for _ in range(max_iter):
        if fn == 0.0:
            break
        jac = np.empty((4, 4))
        for k in range(4):
            h = 1e-7 * (1.0 + abs(comp[k]))
            probe = comp.copy()
            probe[k] += h
            jac[:, k] = (value(probe) - f) / h
        delta, *_ = np.linalg.lstsq(jac, f, rcond=None)
        if not np.all(np.isfinite(delta)):
            break
        step = 1.0
        improved = False
        for _ in range(20):
            trial = comp - step * delta
            ft = value(trial)
            ftn = float(np.linalg.norm(ft))
            if ftn < fn:
                comp, f, fn = trial, ft, ftn
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return Quaternion(*comp), fn


def solve_niven(poly: UnilateralPolynomial, tol: float = DEFAULT_TOL) -> SolveReport:
    """Zeros via grid scan + Newton on the step-2 system.

    Scans c1 in [-2B, 2B], c0 in [-B^2, 0] with B = 1 + max|a_s| (a Cauchy
    bound, so every zero's (c0, c1) lies inside the box), brackets sign
    changes of the first residual component, Newton-refines, dedupes and
    maps each surviving pair through step 1.  Reports distinct zeros.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if poly.degree < 2:
        raise ValueError("grid solver needs degree >= 2")
    B = poly.coefficient_bound()
    box = ((-B * B, 0.0), (-2.0 * B, 2.0 * B))
    c0_axis = np.linspace(box[0][0], box[0][1], GRID_POINTS + 1)
    c1_axis = np.linspace(box[1][0], box[1][1], GRID_POINTS + 1)
    c0g, c1g = np.meshgrid(c0_axis, c1_axis, indexing="ij")
    r1, r2 = _grid_residuals(poly, c0g, c1g)
    fnorm_scale = (1.0 + B) ** 4

    # a bracket is promising when r2 also changes sign (or is tiny) in the
    # surrounding cells; pure r1 crossings far from any system zero refine
    # into nothing and are dropped early
    r2_small = np.abs(r2) <= 1e-10 * fnorm_scale
    r2_sign = np.where(r2_small, 0.0, np.sign(r2))

    def system_nearby(ii, jj):
        i0, i1 = max(ii - 1, 0), min(ii + 2, r2.shape[0])
        j0, j1 = max(jj - 1, 0), min(jj + 2, r2.shape[1])
        patch = r2_sign[i0:i1, j0:j1]
        return patch.min() <= 0.0 <= patch.max() or (patch == 0.0).any()

    # sign-change brackets of r1 along both axes (linear interpolation)
    cands: list[tuple[float, float]] = []
    sign = np.sign(r1)
    flip0 = sign[:-1, :] * sign[1:, :] < 0
    i, j = np.nonzero(flip0)
    frac = r1[i, j] / (r1[i, j] - r1[i + 1, j])
    for ii, jj, tt in zip(i, j, frac):
        if system_nearby(ii, jj):
            cands.append((c0_axis[ii] + tt * (c0_axis[ii + 1] - c0_axis[ii]),
                          c1_axis[jj]))
    flip1 = sign[:, :-1] * sign[:, 1:] < 0
    i, j = np.nonzero(flip1)
    frac = r1[i, j] / (r1[i, j] - r1[i, j + 1])
    for ii, jj, tt in zip(i, j, frac):
        if system_nearby(ii, jj):
            cands.append((c0_axis[ii],
                          c1_axis[jj] + tt * (c1_axis[jj + 1] - c1_axis[jj])))
    # exact/tangential grid zeros (double roots touch without crossing)
    i, j = np.nonzero(np.abs(r1) <= 1e-14 * fnorm_scale)
    for ii, jj in zip(i, j):
        cands.append((c0_axis[ii], c1_axis[jj]))
    cands.sort()

    accept_tol = 1e-10 * fnorm_scale
    solutions: list[tuple[float, float, float]] = []
    for c0, c1 in cands:
        c0r, c1r, fres, inside = _newton_refine(poly, c0, c1, box, fnorm_scale)
        if not inside or fres > accept_tol:
            continue
        if any(abs(c0r - s0) <= _DEDUPE_TOL and abs(c1r - s1) <= _DEDUPE_TOL
               for s0, s1, _ in solutions):
            continue
        solutions.append((c0r, c1r, fres))
    solutions.sort(key=lambda s: (s[1], s[0]))

    roots: list[Root] = []
    spheres: list[SphereFamily] = []
    diag_pairs: list[dict] = []
    warnings: list[str] = []
    bound = tol * B ** poly.degree
    merge_tol = 1e-5 * (1.0 + B)
    for c0, c1, fres in solutions:
        f = step1(poly, c0, c1)
        diag_pairs.append({"c0": c0, "c1": c1, "system_norm": fres})
        lam = complex(c1 / 2.0, np.sqrt(max(-c0 - (c1 / 2.0) ** 2, 0.0)))
        # At a multiple zero of the system the refined pair carries only
        # O(f^(1/2..1/4)) accuracy, so the divisor gate must scale that way
        # and every extracted root gets a local polish on A itself.
        d1_gate = 10.0 * np.sqrt(max(fres, 1e-16 * fnorm_scale))
        if f.d1.norm() <= d1_gate:
            disc = c1 * c1 + 4.0 * c0
            if disc < -4.0 * d1_gate * (1.0 + B):
                re, rho = _sphere_from_pair(c0, c1)
                rep, res = _polish_root(poly, Quaternion(re, rho, 0.0, 0.0))
                re, rho = rep.w, rep.imag_norm()
                if res <= bound and not any(
                    abs(re - s.re) <= merge_tol
                    and abs(rho - s.imag_norm) <= merge_tol
                    for s in spheres
                ):
                    spheres.append(SphereFamily(re=re, imag_norm=rho))
                    roots.append(Root(q=rep, lam=complex(re, rho),
                                      phi_last=f.d1, residual=res,
                                      kind="spherical-representative"))
            elif abs(disc) <= 4.0 * d1_gate * (1.0 + B):
                rep, res = _polish_root(poly, Quaternion(c1 / 2.0))
                if res <= bound:
                    roots.append(Root(q=rep, lam=complex(rep.w, 0.0),
                                      phi_last=f.d1, residual=res))
                else:
                    warnings.append(
                        f"dropped double-root candidate near {c1 / 2.0:.6g} "
                        f"(residual {res:.2e})"
                    )
            else:
                # C2 factors over the reals; its two real roots are found
                # through their own (c0, c1) candidates
                warnings.append(
                    f"skipped divisor pair (c0, c1) = ({c0:.6g}, {c1:.6g}) "
                    "with real quadratic factor"
                )
            continue
        q, res = _polish_root(poly, root_from_d(f.d0, f.d1))
        if res <= bound:
            roots.append(Root(q=q, lam=complex(q.w, q.imag_norm()),
                              phi_last=f.d1, residual=res))
        else:
            warnings.append(
                f"dropped off-track candidate (c0, c1) = ({c0:.6g}, {c1:.6g}) "
                f"(residual {res:.2e})"
            )

    # near-identical zeros from clustered (c0, c1) pairs collapse to one
    merged: list[Root] = []
    for r in sorted(roots, key=lambda r: r.residual):
        if any(r.kind == m.kind and (r.q - m.q).norm() <= merge_tol
               for m in merged):
            continue
        merged.append(r)
    roots = sorted(merged, key=lambda r: (r.lam.real, r.lam.imag))

    if not roots:
        warnings.append("grid scan found no step-2 solutions")
    return SolveReport(
        roots=roots,
        spheres=spheres,
        method="niven",
        diagnostics={"c_pairs": diag_pairs, "warnings": warnings},
    )


def solve_spv(poly: UnilateralPolynomial, tol: float = DEFAULT_TOL) -> SolveReport:
    """Zeros via spectral (c0, c1) pairs: the step-2 shortcut.

    Takes one eigenvalue representative per conjugate class of the
    translated companion matrix and sets (c0, c1) = (-|lam|^2, 2 Re lam),
    then runs step 1 and the remainder-root formula.  d1 = 0 with
    Im lam > 0 reports a spherical family; with lam real it is the double
    real root lam itself.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if poly.degree < 2:
        raise ValueError("spectral solver needs degree >= 2")
    B = poly.coefficient_bound()
    bound = tol * B ** poly.degree
    adjoint = complex_adjoint(companion_matrix(poly))
    normf = float(np.linalg.norm(adjoint))
    pairs = eigen_all(adjoint, tol=min(tol, 1e-12))
    classes, warnings = _conjugate_classes(pairs, normf)

    roots: list[Root] = []
    spheres: list[SphereFamily] = []
    diag_pairs: list[dict] = []
    # defective eigenvalue classes are located only to ~sqrt(eps), and a
    # tiny |d1| makes the remainder-root ratio ill-conditioned anyway, so
    # the divisor gate is deliberately wide
    d1_threshold = 1e-6 * B
    d1_signals = 0
    pending_sphere: dict[tuple[float, float], int] = {}
    for rep, _partner in classes:
        lam = pairs[rep].lam
        if lam.imag < 0:
            lam = lam.conjugate()
        c0, c1 = -abs(lam) ** 2, 2.0 * lam.real
        f = step1(poly, c0, c1)
        diag_pairs.append({"c0": c0, "c1": c1, "lambda": [lam.real, lam.imag],
                           "d1_norm": f.d1.norm()})
        if f.d1.norm() <= d1_threshold:
            d1_signals += 1
            if lam.imag > d1_threshold:
                key = (round(lam.real, 6), round(abs(lam), 6))
                if key in pending_sphere:
                    # second representative of the same class: one sphere
                    pending_sphere.pop(key)
                    spheres.append(SphereFamily(re=lam.real, imag_norm=lam.imag))
                else:
                    pending_sphere[key] = rep
                    rep_root = Quaternion(lam.real, lam.imag, 0.0, 0.0)
                    roots.append(Root(q=rep_root, lam=lam, phi_last=f.d1,
                                      residual=poly.evaluate(rep_root).norm(),
                                      kind="spherical-representative"))
            else:
                rep_root = Quaternion(lam.real)
                roots.append(Root(q=rep_root, lam=lam, phi_last=f.d1,
                                  residual=poly.evaluate(rep_root).norm()))
            continue
        q = root_from_d(f.d0, f.d1)
        roots.append(Root(q=q, lam=lam, phi_last=f.d1,
                          residual=poly.evaluate(q).norm()))

    for key in pending_sphere:
        warnings.append(
            f"unpaired spherical signal at class {key}; counted once"
        )
        spheres.append(SphereFamily(re=key[0],
                                    imag_norm=np.sqrt(max(key[1] ** 2 - key[0] ** 2, 0.0))))

    offenders = [r.lam for r in roots if r.residual > bound]
    if offenders:
        raise VerificationError(
            f"spectral-solver root residual exceeded {bound:.3e} for {offenders}",
            offenders=offenders,
        )
    return SolveReport(
        roots=roots,
        spheres=spheres,
        method="spv",
        diagnostics={"c_pairs": diag_pairs, "warnings": warnings,
                     "d1_zero_signals": d1_signals},
    )
