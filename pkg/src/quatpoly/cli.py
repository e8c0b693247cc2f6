"""Command-line front end: parse, dispatch to a solver, emit reports.

Subcommands::

    quatpoly solve "q^2 + j q + (1-k)" --method eigenvector
    quatpoly bilateral --alpha1 i --beta1 j --alpha0 k
    quatpoly ode '{"degree": 2, "coeffs_subtracted": ["k-1", "-j"]}' \
        --check-grid 0 1 11 --h 1e-3
    quatpoly selftest

Polynomials are written in the human convention (q^n + c_{n-1} q^{n-1} +
... + c_0, monic); coefficients are negated on ingestion into the internal
subtracted form.  JSON input ({"degree": n, "coeffs_subtracted": [...]}) is
accepted anywhere a polynomial is, and '-' reads the input from stdin.

Exit codes: 0 success, 2 parse error, 3 solver verification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from .companion import companion_matrix, complex_adjoint, generalized_companion
from .eig import ConvergenceError, IterationLimitError
from .niven import solve_niven, solve_spv
from .ode import OdeProblem, solve_ode, verify_solution
from .polynomial import BilateralQuadratic, UnilateralPolynomial
from .quaternion import (
    ONE,
    ZERO,
    I,
    J,
    K,
    ParseError,
    Quaternion,
    parse_quaternion,
)
from .rootfinder import (
    ConsistencyError,
    DegenerateEigenvectorError,
    SolveReport,
    VerificationError,
    solve_bilateral,
    solve_unilateral,
)

__all__ = ["parse_polynomial", "main"]

_BASIS = {"i": I, "j": J, "k": K}

_NUM_RE = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_UINT_RE = re.compile(r"\d+")


def parse_polynomial(text: str) -> UnilateralPolynomial:
    """Parse human-convention text (or the JSON form) into a polynomial.

    Text terms look like ``q^2``, ``j q``, ``2.5 q``, ``(1-k)``; the leading
    power must be monic.  Raises ParseError with the failing position.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return UnilateralPolynomial.from_json(json.loads(stripped))
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ParseError(f"bad polynomial JSON: {exc}", 0) from exc

    terms: dict[int, Quaternion] = {}
    pos, n = 0, len(text)
    first = True
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        sign = 1.0
        if text[pos] in "+-":
            if text[pos] == "-":
                sign = -1.0
            pos += 1
            while pos < n and text[pos].isspace():
                pos += 1
        elif not first:
            raise ParseError("expected '+' or '-' between terms", pos)

        coef: Quaternion | None = None
        if pos < n and text[pos] == "(":
            close = text.find(")", pos)
            if close < 0:
                raise ParseError("unbalanced '('", pos)
            try:
                coef = parse_quaternion(text[pos + 1:close])
            except ParseError as exc:
                raise ParseError(str(exc), pos + 1 + exc.position) from exc
            pos = close + 1
        else:
            m = _NUM_RE.match(text, pos)
            if m:
                value = float(m.group())
                pos = m.end()
                probe = pos
                while probe < n and text[probe] in " \t*":
                    probe += 1
                if probe < n and text[probe] in "ijk":
                    coef = value * _BASIS[text[probe]]
                    pos = probe + 1
                else:
                    coef = Quaternion(value)
            elif pos < n and text[pos] in "ijk":
                coef = _BASIS[text[pos]]
                pos += 1

        probe = pos
        while probe < n and text[probe] in " \t*":
            probe += 1
        power = 0
        has_q = False
        if probe < n and text[probe] == "q":
            has_q = True
            pos = probe + 1
            if pos < n and text[pos] == "^":
                m = _UINT_RE.match(text, pos + 1)
                if not m:
                    raise ParseError("expected an integer exponent after '^'", pos + 1)
                power = int(m.group())
                pos = m.end()
            else:
                power = 1
        if coef is None and not has_q:
            raise ParseError("expected a coefficient or a power of q", pos)
        if coef is None:
            coef = ONE
        terms[power] = terms.get(power, ZERO) + sign * coef
        first = False

    if not terms:
        raise ParseError("empty polynomial", 0)
    degree = max(terms)
    if degree < 1:
        raise ParseError("polynomial must contain a power of q", 0)
    if terms[degree] != ONE:
        raise ParseError(
            f"non-monic leading coefficient {terms[degree]} on q^{degree}", 0
        )
    coeffs = [-terms.get(s, ZERO) for s in range(degree)]
    return UnilateralPolynomial(coeffs)


# -- output -------------------------------------------------------------------


def _fmt12(q: Quaternion) -> str:
    out = []
    for value, unit in ((q.w, ""), (q.x, "i"), (q.y, "j"), (q.z, "k")):
        if value == 0.0:
            continue
        body = f"{abs(value):.12g}{unit}"
        if unit and abs(value) == 1.0:
            body = unit
        out.append(("-" if value < 0 else ("+" if out else "")) + body)
    return "".join(out) or "0"


def _table(report: SolveReport) -> str:
    lines = [f"method: {report.method}"]
    header = f"{'root':<42} {'lambda':<28} {'residual':>12}  kind"
    lines.append(header)
    lines.append("-" * len(header))
    for r in report.roots:
        lam = f"{r.lam.real:.12g}{r.lam.imag:+.12g}i"
        lines.append(f"{_fmt12(r.q):<42} {lam:<28} {r.residual:>12.3e}  {r.kind}")
    for s in report.spheres:
        lines.append(
            f"sphere: Re q = {s.re:.12g}, |Im q| = {s.imag_norm:.12g} "
            "(every such quaternion is a zero)"
        )
    return "\n".join(lines)


def _complex_matrix_json(m: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def _emit(report: SolveReport, args, extra: dict | None = None) -> str:
    payload = report.to_json()
    if extra:
        payload.update(extra)
    if args.output == "json":
        return json.dumps(payload, indent=2)
    text = _table(report)
    if extra and "ode_check" in extra:
        text += "\n" + json.dumps(extra["ode_check"], indent=2)
    return text


def _read_input(value: str) -> str:
    if value == "-":
        return sys.stdin.read()
    return value


# -- subcommands ---------------------------------------------------------------


def _cmd_solve(args) -> tuple[int, str]:
    poly = parse_polynomial(_read_input(args.polynomial))
    if args.method == "eigenvector":
        report = solve_unilateral(poly, args.tol)
    elif args.method == "niven":
        report = solve_niven(poly, args.tol)
    else:
        report = solve_spv(poly, args.tol)
    extra = {}
    if args.dump_matrices:
        comp = companion_matrix(poly)
        extra["matrices"] = {
            "companion": [[str(comp[r, c]) for c in range(comp.cols)]
                          for r in range(comp.rows)],
            "translated": _complex_matrix_json(complex_adjoint(comp)),
        }
    return 0, _emit(report, args, extra)


def _cmd_bilateral(args) -> tuple[int, str]:
    if args.input is not None:
        data = json.loads(_read_input(args.input))
        bq = BilateralQuadratic.from_json(data)
    else:
        if not (args.alpha1 and args.beta1 is not None and args.alpha0):
            raise ParseError(
                "bilateral needs --alpha1/--beta1/--alpha0 or a JSON input", 0
            )
        bq = BilateralQuadratic(
            parse_quaternion(args.alpha1),
            parse_quaternion(args.beta1),
            parse_quaternion(args.alpha0),
        )
    report = solve_bilateral(bq, args.tol)
    extra = {}
    if args.dump_matrices:
        gen = generalized_companion(bq)
        extra["matrices"] = {
            "companion": [[str(gen[r, c]) for c in range(gen.cols)]
                          for r in range(gen.rows)],
            "translated": _complex_matrix_json(complex_adjoint(gen)),
        }
    return 0, _emit(report, args, extra)


def _cmd_ode(args) -> tuple[int, str]:
    poly = parse_polynomial(_read_input(args.coefficients))
    prob = OdeProblem(poly.coeffs)
    basis = solve_ode(prob, args.tol)
    extra: dict = {}
    if args.check_grid is not None:
        x0, x1, steps = args.check_grid
        xs = np.linspace(x0, x1, int(steps))
        checks = []
        for root in basis.exponents:
            residual = verify_solution(prob, root.q, xs, args.h)
            checks.append({"exponent": str(root.q), "fd_residual": residual})
        extra["ode_check"] = {"h": args.h, "grid": [x0, x1, int(steps)],
                              "residuals": checks}
    if args.dump_matrices:
        comp = companion_matrix(poly)
        extra["matrices"] = {
            "companion": [[str(comp[r, c]) for c in range(comp.cols)]
                          for r in range(comp.rows)],
            "translated": _complex_matrix_json(complex_adjoint(comp)),
        }
    return 0, _emit(basis.report, args, extra)


def _selftest_cases():
    inv_sqrt2 = 1.0 / np.sqrt(2.0)

    quad = parse_polynomial("q^2 + j q + (1-k)")
    cubic = parse_polynomial("q^3 + k q^2 + i q - j")
    bilateral = BilateralQuadratic(I, J, K)

    return [
        (
            "unilateral quadratic q^2 + jq + (1-k)",
            lambda: solve_unilateral(quad).isolated_roots(),
            [-I, -(I + J)],
        ),
        (
            "unilateral cubic q^3 + kq^2 + iq - j",
            lambda: solve_unilateral(cubic).isolated_roots(),
            [
                -K,
                Quaternion(inv_sqrt2, 0.0, 0.5, -0.5),
                Quaternion(-inv_sqrt2, 0.0, 0.5, -0.5),
            ],
        ),
        (
            "bilateral p^2 - ip + pj - k (direct route)",
            lambda: solve_bilateral(bilateral).isolated_roots(),
            [-J, I],
        ),
        (
            "bilateral via reduction p = q - j",
            lambda: [
                r.q - J
                for r in solve_unilateral(bilateral.to_unilateral()[0]).roots
            ],
            [-J, I],
        ),
    ]


def _cmd_selftest(args) -> tuple[int, str]:
    lines = []
    failures = 0
    for name, run, expected in _selftest_cases():
        try:
            got = run()
            gap = _set_gap(got, expected)
            ok = gap <= 1e-9
        except Exception as exc:  # noqa: BLE001 - selftest reports, never raises
            gap, ok = float("inf"), False
            lines.append(f"FAIL  {name}: {exc}")
            failures += 1
            continue
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name} (max deviation {gap:.2e})")
        if not ok:
            failures += 1
    lines.append(f"{len(_selftest_cases()) - failures}/{len(_selftest_cases())} examples reproduced")
    return (0 if failures == 0 else 3), "\n".join(lines)


def _set_gap(got, expected) -> float:
    if len(got) != len(expected):
        return float("inf")
    remaining = list(expected)
    worst = 0.0
    for g in got:
        dists = [(g - e).norm() for e in remaining]
        k = int(np.argmin(dists))
        worst = max(worst, dists[k])
        remaining.pop(k)
    return worst


# -- entry point ----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatpoly",
        description="Zeros of quaternionic polynomials via companion-matrix "
        "eigenvectors, with classical cross-validation solvers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--method", choices=["eigenvector", "niven", "spv"],
                       default="eigenvector")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--output", choices=["json", "table"], default="json")
        p.add_argument("--dump-matrices", action="store_true")

    p_solve = sub.add_parser("solve", help="solve a unilateral polynomial")
    p_solve.add_argument("polynomial",
                         help="human text, JSON, or '-' for stdin")
    common(p_solve)

    p_bi = sub.add_parser("bilateral", help="solve a bilateral quadratic")
    p_bi.add_argument("input", nargs="?", default=None,
                      help="JSON {'alpha1':..,'beta1':..,'alpha0':..} or '-'")
    p_bi.add_argument("--alpha1")
    p_bi.add_argument("--beta1")
    p_bi.add_argument("--alpha0")
    common(p_bi)

    p_ode = sub.add_parser("ode", help="exponential basis of a right-linear ODE")
    p_ode.add_argument("coefficients",
                       help="characteristic polynomial (text/JSON/'-')")
    p_ode.add_argument("--check-grid", nargs=3, type=float, default=None,
                       metavar=("X0", "X1", "STEPS"))
    p_ode.add_argument("--h", type=float, default=1e-3)
    common(p_ode)

    p_self = sub.add_parser("selftest", help="reproduce the worked examples")
    common(p_self)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "solve": _cmd_solve,
        "bilateral": _cmd_bilateral,
        "ode": _cmd_ode,
        "selftest": _cmd_selftest,
    }
    try:
        code, text = handlers[args.command](args)
    except (ParseError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (VerificationError, ConsistencyError, DegenerateEigenvectorError,
            IterationLimitError, ConvergenceError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    print(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
