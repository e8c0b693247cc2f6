"""quatpoly: zeros of quaternionic polynomials by companion-matrix eigenvectors.

The library solves monic unilateral polynomials over the quaternions (all
coefficients on the left) and bilateral quadratics with one right
coefficient.  The main route translates the quaternionic companion matrix to
its 2n x 2n complex adjoint, solves that eigenproblem with the in-tree QR
engine, and reads each zero off the last two components of the folded
quaternionic eigenvector.  Two classical solvers (Niven's two-step division
and its spectral shortcut) provide independent cross-validation, and a small
application layer solves right-linear quaternionic ODEs through their
characteristic polynomials.
"""

from .companion import (
    QuaternionMatrix,
    companion_matrix,
    complex_adjoint,
    equivalence_gap,
    generalized_companion,
    interleaved_adjoint,
    shuffle_permutation,
)
from .eig import (
    ConvergenceError,
    Eigenpair,
    IterationLimitError,
    eigen_all,
    eigenvector_for,
    hessenberg,
)
from .niven import (
    NivenFactors,
    SphericalRootSignal,
    root_from_d,
    solve_niven,
    solve_spv,
    step1,
    step2_residual,
)
from .ode import (
    ExponentialBasis,
    OdeProblem,
    characteristic,
    solve_ode,
    verify_solution,
)
from .polynomial import BilateralQuadratic, UnilateralPolynomial
from .quaternion import (
    I,
    J,
    K,
    ONE,
    ZERO,
    ComplexPair,
    ParseError,
    Quaternion,
    exp,
    format_quaternion,
    parse_quaternion,
    similarity_rotation,
    symplectic_join,
    symplectic_split,
)
from .rootfinder import (
    ConsistencyError,
    DegenerateEigenvectorError,
    Root,
    SolveReport,
    SphereFamily,
    VerificationError,
    eigenvalue_gap,
    extract_root,
    privileged_eigenvector,
    quaternion_eigenvector,
    solve_bilateral,
    solve_unilateral,
)

__version__ = "0.1.0"

__all__ = [
    "Quaternion", "ComplexPair", "ZERO", "ONE", "I", "J", "K",
    "exp", "symplectic_split", "symplectic_join", "similarity_rotation",
    "parse_quaternion", "format_quaternion", "ParseError",
    "UnilateralPolynomial", "BilateralQuadratic",
    "QuaternionMatrix", "companion_matrix", "generalized_companion",
    "complex_adjoint", "interleaved_adjoint", "shuffle_permutation",
    "equivalence_gap",
    "Eigenpair", "hessenberg", "eigen_all", "eigenvector_for",
    "IterationLimitError", "ConvergenceError",
    "Root", "SphereFamily", "SolveReport",
    "quaternion_eigenvector", "extract_root", "eigenvalue_gap",
    "privileged_eigenvector", "solve_unilateral", "solve_bilateral",
    "DegenerateEigenvectorError", "VerificationError", "ConsistencyError",
    "NivenFactors", "step1", "step2_residual", "root_from_d",
    "solve_niven", "solve_spv", "SphericalRootSignal",
    "OdeProblem", "ExponentialBasis", "characteristic", "solve_ode",
    "verify_solution",
    "__version__",
]
