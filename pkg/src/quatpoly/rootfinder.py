"""Zeros of quaternionic polynomials from companion-matrix eigenvectors.

The pipeline for a monic unilateral polynomial of degree n:

1. build the n x n quaternionic companion matrix,
2. translate it to its 2n x 2n complex adjoint,
3. solve the complex eigenproblem in-tree (:mod:`quatpoly.eig`),
4. keep one representative per conjugate pair (Im lambda >= 0),
5. fold each complex eigenvector (omega, sigma) back into a quaternionic
   eigenvector phi_m = omega_m + j*sigma_m, and read the zero off its two
   last components:  q = phi_{n-1} * phi_n^{-1}.

The last component of a genuine eigenvector is never zero (the companion
structure forces phi_m = phi_n * lambda^{n-m}, so phi_n = 0 collapses the
whole vector), which is what makes the extraction well defined.  Each zero
lies in the similarity class of its source eigenvalue: Re q = Re lambda and
|Im q| = Im lambda.

Bilateral quadratics p^2 - alpha1 p + p beta1 - alpha0 run through the same
machinery with the generalized companion [[alpha1, alpha0], [1, beta1]]; the
zero is again p = phi_1 * phi_2^{-1}, while the eigenvalue satisfies
lambda = phi_2^{-1} phi_1 + phi_2^{-1} beta1 phi_2.  Results are
cross-validated against the reduction p = q - beta1 to an equivalent
unilateral quadratic.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .companion import companion_matrix, complex_adjoint, generalized_companion
from .eig import Eigenpair, eigen_all
from .polynomial import BilateralQuadratic, UnilateralPolynomial
from .quaternion import ONE, Quaternion, symplectic_join

__all__ = [
    "Root",
    "SphereFamily",
    "SolveReport",
    "quaternion_eigenvector",
    "extract_root",
    "eigenvalue_gap",
    "privileged_eigenvector",
    "solve_unilateral",
    "solve_bilateral",
    "DegenerateEigenvectorError",
    "VerificationError",
    "ConsistencyError",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-9

#: |phi_n| below this multiple of ||phi|| marks a numerically broken vector
_DEGENERATE_FRACTION = 1e-10

#: eigenvalue classes closer than this (scaled) collapse into one sphere test
_CLASS_TOL = 1e-8

#: extracted roots further apart than this are distinct points of a class
_DISTINCT_ROOT_TOL = 1e-6


class DegenerateEigenvectorError(RuntimeError):
    """Last eigenvector component vanished; the vector is numerically broken."""


class VerificationError(RuntimeError):
    """A candidate root failed the polynomial-residual check."""

    def __init__(self, message: str, offenders=()):
        super().__init__(message)
        self.offenders = list(offenders)


class ConsistencyError(RuntimeError):
    """Direct and reduction routes disagreed on a bilateral solve."""


@dataclass(frozen=True)
class Root:
    """A quaternionic zero with its provenance.

    ``lam`` is the source complex eigenvalue (Im >= 0), ``phi_last`` the last
    eigenvector component used in the extraction, ``residual`` the norm of
    the polynomial evaluated at ``q``.  ``kind`` is ``"isolated"`` or
    ``"spherical-representative"``.
    """

    q: Quaternion
    lam: complex
    phi_last: Quaternion
    residual: float
    kind: str = "isolated"

    def to_json(self) -> dict:
        return {
            "q": str(self.q),
            "lambda": [self.lam.real, self.lam.imag],
            "residual": self.residual,
            "kind": self.kind,
        }


@dataclass(frozen=True)
class SphereFamily:
    """A 2-sphere of zeros sharing real part and imaginary norm."""

    re: float
    imag_norm: float

    def to_json(self) -> dict:
        return {"re": self.re, "imag_norm": self.imag_norm}


@dataclass
class SolveReport:
    """Roots, spherical families and per-eigenvalue diagnostics of a solve."""

    roots: list[Root]
    spheres: list[SphereFamily]
    method: str
    diagnostics: dict = field(default_factory=dict)

    def zero_count(self) -> int:
        """Isolated roots plus two per spherical family."""
        isolated = sum(1 for r in self.roots if r.kind == "isolated")
        return isolated + 2 * len(self.spheres)

    def isolated_roots(self) -> list[Quaternion]:
        return [r.q for r in self.roots if r.kind == "isolated"]

    def to_json(self) -> dict:
        return {
            "roots": [r.to_json() for r in self.roots],
            "spheres": [s.to_json() for s in self.spheres],
            "method": self.method,
            "diagnostics": self.diagnostics,
        }


# -- eigenvector translation -------------------------------------------------


def quaternion_eigenvector(v) -> list[Quaternion]:
    """Fold a stacked complex eigenvector into a quaternionic one.

    ``v`` has length 2n ordered (omega_1..omega_n, sigma_1..sigma_n); the
    result is (omega_1 + j sigma_1, ..., omega_n + j sigma_n).
    """
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1 or v.size % 2 != 0:
        raise ValueError("expected a flat vector of even length")
    n = v.size // 2
    return [symplectic_join(v[m], v[m + n]) for m in range(n)]


def extract_root(phi) -> tuple[Quaternion, Quaternion]:
    """Zero q = phi_{n-1} * phi_n^{-1} from a quaternionic eigenvector.

    Needs n >= 2 (a degree-1 polynomial's zero is its constant coefficient).
    Raises DegenerateEigenvectorError when |phi_n| is negligible relative to
    ||phi||; that signals a numerically broken vector, not a valid case.
    """
    phi = list(phi)
    if len(phi) < 2:
        raise ValueError("need at least two eigenvector components")
    norm_phi = float(np.sqrt(sum(p.norm2() for p in phi)))
    last = phi[-1]
    if last.norm() < _DEGENERATE_FRACTION * norm_phi:
        raise DegenerateEigenvectorError(
            "last eigenvector component is numerically zero"
        )
    return phi[-2] * last.inverse(), last


def eigenvalue_gap(phi, lam: complex) -> float:
    """|phi_n^{-1} phi_{n-1} - lambda|: the solution check of the pipeline.

    Vanishes for genuine eigenpairs; grows linearly with perturbations.
    """
    phi = list(phi)
    last = phi[-1]
    lam_q = Quaternion(lam.real, lam.imag, 0.0, 0.0)
    return (last.inverse() * phi[-2] - lam_q).norm()


def privileged_eigenvector(phi) -> list[Quaternion]:
    """Representative Phi * phi_n^{-1} * |phi_n| whose right eigenvalue is q.

    Its last component is the real positive |phi_n|, and the companion matrix
    sends it to itself times the extracted zero on the right.
    """
    phi = list(phi)
    _, last = extract_root(phi)  # reuses the degeneracy guard
    factor = last.inverse() * last.norm()
    return [p * factor for p in phi]


# -- conjugate classes --------------------------------------------------------


def _structure_swap(v: np.ndarray) -> np.ndarray:
    """Eigenvector of conj(lambda) induced by the quaternionic structure.

    (omega, sigma) -> (-conj(sigma), conj(omega)) maps the lambda-eigenspace
    of an adjoint matrix onto the conj(lambda)-eigenspace.
    """
    n = v.size // 2
    return np.concatenate([-v[n:].conj(), v[:n].conj()])


def _conjugate_classes(pairs: list[Eigenpair], normf: float):
    """Group eigenvalue slots into conjugate classes with Im >= 0 reps.

    Returns (classes, warnings); each class is (rep_slot, partner_slot|None).
    Real eigenvalues pair among themselves two at a time, each such pair
    being a single class (the quaternionic structure forces them to come in
    duplicates).
    """
    pair_tol = _CLASS_TOL * (1.0 + normf)
    warnings: list[str] = []
    classes: list[tuple[int, int | None]] = []
    pos = [i for i, p in enumerate(pairs) if p.lam.imag > 0]
    neg = {i for i, p in enumerate(pairs) if p.lam.imag < 0}
    reals = [i for i, p in enumerate(pairs) if p.lam.imag == 0]

    for i in pos:
        target = pairs[i].lam.conjugate()
        best = None
        best_d = np.inf
        for j in neg:
            d = abs(pairs[j].lam - target)
            if d < best_d:
                best, best_d = j, d
        if best is not None and best_d <= pair_tol:
            neg.discard(best)
            classes.append((i, best))
        else:
            warnings.append(
                f"eigenvalue {pairs[i].lam} has no conjugate partner "
                f"within {pair_tol:.2e}; treated individually"
            )
            classes.append((i, None))
    for j in sorted(neg):
        warnings.append(
            f"eigenvalue {pairs[j].lam} has no conjugate partner "
            f"within {pair_tol:.2e}; treated individually"
        )
        classes.append((j, None))

    k = 0
    while k < len(reals):
        i = reals[k]
        if k + 1 < len(reals) and abs(pairs[reals[k + 1]].lam - pairs[i].lam) <= pair_tol:
            classes.append((i, reals[k + 1]))
            k += 2
        else:
            warnings.append(
                f"real eigenvalue {pairs[i].lam} appears an odd number of "
                "times; treated individually"
            )
            classes.append((i, None))
            k += 1

    classes.sort(key=lambda c: (pairs[c[0]].lam.real, pairs[c[0]].lam.imag))
    return classes, warnings


def _class_candidates(pairs, rep, partner, cluster_tol):
    """Eigenvector candidates for one class, most trustworthy first."""
    lam = pairs[rep].lam
    cands = [pairs[rep].vector]
    if partner is not None and pairs[partner].lam.imag != 0:
        cands.append(_structure_swap(pairs[partner].vector))
    for s, p in enumerate(pairs):
        if s != rep and abs(p.lam - lam) <= cluster_tol:
            cands.append(p.vector)
    return cands


def _classify_spheres(roots: list[Root], class_tol: float):
    """Collapse same-class distinct roots into spherical families.

    Two representatives agreeing in (Re lambda, Im lambda) whose extracted
    roots differ by more than a separation threshold span a 2-sphere of
    zeros: one family (re, imag_norm) is reported plus one representative
    root, worth two zeros in the count.
    """
    spheres: list[SphereFamily] = []
    absorbed: set[int] = set()
    out = list(roots)
    for i in range(len(out)):
        if i in absorbed or out[i].kind != "isolated":
            continue
        for j in range(i + 1, len(out)):
            if j in absorbed or out[j].kind != "isolated":
                continue
            li, lj = out[i].lam, out[j].lam
            same_class = (
                abs(li.real - lj.real) <= class_tol
                and abs(li.imag - lj.imag) <= class_tol
            )
            if same_class and (out[i].q - out[j].q).norm() > _DISTINCT_ROOT_TOL:
                spheres.append(SphereFamily(re=li.real, imag_norm=li.imag))
                out[i] = replace(out[i], kind="spherical-representative")
                absorbed.add(j)
                break
    final = [r for idx, r in enumerate(out) if idx not in absorbed]
    return final, spheres


# -- solvers ------------------------------------------------------------------


def solve_unilateral(poly: UnilateralPolynomial, tol: float = DEFAULT_TOL) -> SolveReport:
    """All zeros of a monic unilateral polynomial via eigenvectors.

    Returns exactly n zeros counted with sphere multiplicity.  Every root is
    verified by direct evaluation against tol*(1 + max|a_s|)^n; failure
    raises VerificationError naming the offending eigenvalue.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = poly.degree
    scale = poly.coefficient_bound()
    bound = tol * scale**n

    if n == 1:
        a0 = poly.coeffs[0]
        residual = poly.evaluate(a0).norm()
        root = Root(
            q=a0,
            lam=complex(a0.w, a0.imag_norm()),
            phi_last=ONE,
            residual=residual,
            kind="isolated",
        )
        return SolveReport(
            roots=[root],
            spheres=[],
            method="eigenvector",
            diagnostics={"eigenvalues": [], "warnings": [], "note": "degree 1"},
        )

    adjoint = complex_adjoint(companion_matrix(poly))
    normf = float(np.linalg.norm(adjoint))
    pairs = eigen_all(adjoint, tol=min(tol, 1e-12))
    classes, warnings = _conjugate_classes(pairs, normf)
    if len(classes) != n:
        warnings.append(
            f"expected {n} conjugate classes, found {len(classes)}"
        )

    cluster_tol = _CLASS_TOL * (1.0 + normf)
    roots: list[Root] = []
    per_eigenvalue: list[dict] = []
    for rep, partner in classes:
        lam = pairs[rep].lam
        if lam.imag < 0:
            # pathological unpaired slot: move to the Im >= 0 representative
            candidates = [_structure_swap(pairs[rep].vector)]
            lam = lam.conjugate()
        else:
            candidates = _class_candidates(pairs, rep, partner, cluster_tol)
        best = None
        used = 0
        for which, cand in enumerate(candidates):
            try:
                phi = quaternion_eigenvector(cand)
                q, phi_last = extract_root(phi)
            except DegenerateEigenvectorError:
                continue
            residual = poly.evaluate(q).norm()
            if best is None or residual < best[0]:
                best = (residual, q, phi_last, phi)
                used = which
            if residual <= bound:
                break
        if best is None:
            raise VerificationError(
                f"no usable eigenvector for eigenvalue {lam}", offenders=[lam]
            )
        residual, q, phi_last, phi = best
        if used > 0:
            warnings.append(
                f"eigenvalue {lam}: primary eigenvector rejected, used an "
                "alternate eigenspace vector (defective class suspected)"
            )
        roots.append(Root(q=q, lam=lam, phi_last=phi_last, residual=residual))
        per_eigenvalue.append(
            {
                "lambda": [lam.real, lam.imag],
                "eig_residual": pairs[rep].residual,
                "root_residual": residual,
                "lambda_gap": eigenvalue_gap(phi, lam),
            }
        )

    roots, spheres = _classify_spheres(roots, cluster_tol)
    offenders = [r.lam for r in roots if r.residual > bound]
    if offenders:
        raise VerificationError(
            "root residual exceeded the verification bound "
            f"{bound:.3e} for eigenvalue(s) {offenders}",
            offenders=offenders,
        )

    report = SolveReport(
        roots=roots,
        spheres=spheres,
        method="eigenvector",
        diagnostics={"eigenvalues": per_eigenvalue, "warnings": warnings},
    )
    if report.zero_count() != n:
        report.diagnostics["warnings"].append(
            f"zero count {report.zero_count()} != degree {n}"
        )
    return report


def solve_bilateral(bq: BilateralQuadratic, tol: float = DEFAULT_TOL) -> SolveReport:
    """Zeros of a bilateral quadratic, direct route + reduction cross-check.

    The direct route runs the generalized companion through the eigenvector
    pipeline (p = phi_1 phi_2^{-1}); the reduction route solves the
    equivalent unilateral quadratic and shifts back (p = q - beta1).  The
    two must agree within tol or ConsistencyError is raised.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if bq.beta1.norm() == 0.0:
        # generalized companion degenerates to the standard one
        poly, _ = bq.to_unilateral()
        report = solve_unilateral(poly, tol)
        report.diagnostics["note"] = "beta1 = 0: identical to the unilateral solve"
        return report

    scale = bq.coefficient_bound()
    bound = tol * scale**2
    adjoint = complex_adjoint(generalized_companion(bq))
    normf = float(np.linalg.norm(adjoint))
    pairs = eigen_all(adjoint, tol=min(tol, 1e-12))
    classes, warnings = _conjugate_classes(pairs, normf)
    cluster_tol = _CLASS_TOL * (1.0 + normf)

    direct_roots: list[Root] = []
    per_eigenvalue: list[dict] = []
    for rep, partner in classes:
        lam = pairs[rep].lam
        if lam.imag < 0:
            candidates = [_structure_swap(pairs[rep].vector)]
            lam = lam.conjugate()
        else:
            candidates = _class_candidates(pairs, rep, partner, cluster_tol)
        best = None
        for cand in candidates:
            try:
                phi = quaternion_eigenvector(cand)
                p, phi_last = extract_root(phi)
            except DegenerateEigenvectorError:
                continue
            residual = bq.evaluate(p).norm()
            if best is None or residual < best[0]:
                best = (residual, p, phi_last, phi)
            if residual <= bound:
                break
        if best is None:
            raise VerificationError(
                f"no usable eigenvector for eigenvalue {lam}", offenders=[lam]
            )
        residual, p, phi_last, phi = best
        inv2 = phi[-1].inverse()
        lam_q = Quaternion(lam.real, lam.imag, 0.0, 0.0)
        gap39 = (inv2 * phi[-2] + inv2 * bq.beta1 * phi[-1] - lam_q).norm()
        direct_roots.append(Root(q=p, lam=lam, phi_last=phi_last, residual=residual))
        per_eigenvalue.append(
            {
                "lambda": [lam.real, lam.imag],
                "eig_residual": pairs[rep].residual,
                "root_residual": residual,
                "lambda_gap": gap39,
            }
        )

    # reduction route: p = q - beta1
    poly, shift = bq.to_unilateral()
    reduced = solve_unilateral(poly, tol)
    shifted_roots = [
        replace(r, q=r.q - shift, residual=bq.evaluate(r.q - shift).norm())
        for r in reduced.roots
    ]

    diagnostics = {
        "eigenvalues": per_eigenvalue,
        "warnings": warnings,
        "reduction_roots": [str(r.q) for r in shifted_roots],
    }

    if reduced.spheres:
        # A spherical family of q = p + beta1 is a *translated* sphere in p;
        # keep the reduction-route classification and note the frame.
        check_tol = max(tol, 1e-9) * scale
        for root in direct_roots:
            qv = root.q + shift
            on_sphere = any(
                abs(qv.w - s.re) <= check_tol
                and abs(qv.imag_norm() - s.imag_norm) <= check_tol
                for s in reduced.spheres
            )
            matches_root = any(
                (root.q - sr.q).norm() <= check_tol for sr in shifted_roots
            )
            if not (on_sphere or matches_root):
                raise ConsistencyError(
                    f"direct-route root {root.q} matches neither a reduction "
                    "root nor a reduction sphere"
                )
        diagnostics["sphere_frame"] = (
            "spheres describe the reduced unilateral variable q = p + beta1"
        )
        report = SolveReport(
            roots=shifted_roots,
            spheres=list(reduced.spheres),
            method="eigenvector",
            diagnostics=diagnostics,
        )
        return report

    gap = _match_gap(
        [r.q for r in direct_roots], [r.q for r in shifted_roots]
    )
    diagnostics["route_agreement"] = gap
    if gap > tol:
        raise ConsistencyError(
            f"direct and reduction routes disagree by {gap:.3e} (> {tol:.1e})"
        )
    offenders = [r.lam for r in direct_roots if r.residual > bound]
    if offenders:
        raise VerificationError(
            f"bilateral root residual exceeded {bound:.3e} for {offenders}",
            offenders=offenders,
        )
    return SolveReport(
        roots=direct_roots,
        spheres=[],
        method="eigenvector",
        diagnostics=diagnostics,
    )


def _match_gap(left: list[Quaternion], right: list[Quaternion]) -> float:
    """Greedy min-distance matching gap between two root multisets."""
    if len(left) != len(right):
        return np.inf
    remaining = list(right)
    worst = 0.0
    for a in left:
        dists = [(a - b).norm() for b in remaining]
        k = int(np.argmin(dists))
        worst = max(worst, dists[k])
        remaining.pop(k)
    return worst
