"""Command line interface: ``quiver-reduce {period,reduce,verify,orbit,example}``.

Exit codes: 0 success, 2 malformed input, 3 full-rank form (nothing gained
by reduction), 4 post-transform not symplectic, 5 a verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import exact
from .documents import (
    QuiverDocument,
    RunConfig,
    example_document,
    fmt_residual,
    fraction_rows,
    load_document,
    render_text,
)
from .exceptions import MalformedDocument, NonPositivePoint, NotSymplecticChange, QuiverError
from .forms import (
    check_form_invariance,
    check_mutation_congruence,
    log_jacobian,
    pullback_by_sigma,
    rank_and_kernel,
    sample_points,
    scale_form,
    standard_form,
)
from .orbit import orbit
from .quiver import ShiftMap, detect_period, is_period, sigma_matrix
from .reduction import (
    ReducedMapEvaluator,
    VerificationReport,
    apply_post_transform,
    build_section,
    cartan_reduce,
    reduced_expression,
    verify_commutation,
    verify_fiber_invariance,
    verify_symplectic,
)
from .validation import parse_rational, parse_rational_matrix

EXIT_OK, EXIT_MALFORMED, EXIT_FULL_RANK, EXIT_NOT_SYMPLECTIC, EXIT_FAILED = 0, 2, 3, 4, 5
PIVOT_RULE = "lexicographically first pair (i, j), i < j, with nonzero residual entry"


def _header(command: str, doc: QuiverDocument) -> dict:
    out = {"command": command}
    if doc.label is not None:
        out["label"] = doc.label
    if doc.family is not None:
        out["family"] = dict(doc.family)
    out["n"] = doc.matrix.n
    return out


def _resolve_period(B, config: RunConfig) -> tuple[int | None, int | str]:
    """Verified period (or None) and the value shown in reports."""
    if config.period is not None:
        m = config.period
        return (m, m) if is_period(B, m) else (None, f"{m} given but not verified")
    res = detect_period(B, config.max_period)
    return res.period, res.period if res.found else str(res)


def _verification(report, seed=None) -> dict:
    out = {
        "passed": report.passed,
        "max_residual": fmt_residual(report.max_residual),
        "points": report.n_points,
        "tol": config_tol(report.tol),
    }
    if seed is not None:
        out["seed"] = seed
    if not report.passed and report.worst_point is not None:
        out["worst_point"] = _fmt_point(report.worst_point)
    return out


def _fmt_point(u) -> list[str]:
    return [f"{x:.6g}" for x in np.atleast_1d(u)]


def config_tol(tol: float) -> str:
    return f"{tol:g}"


def _build_basis(B, config: RunConfig):
    W = scale_form(standard_form(B), config.scale)
    rank, kernel = rank_and_kernel(W)
    G = cartan_reduce(W) if rank else None
    if G is not None and config.post_transform is not None:
        G = apply_post_transform(G, config.post_transform)
    return W, rank, kernel, G


def cmd_period(doc: QuiverDocument, config: RunConfig) -> tuple[dict, int]:
    B = doc.matrix
    res = detect_period(B, config.max_period)
    report = _header("period", doc)
    report["period"] = res.period if res.found else f"none up to {res.bound}"
    if res.found:
        report["certificate"] = {
            "mutated": res.mutated.tolist(),
            "conjugated": res.conjugated.tolist(),
            "equal": res.mutated == res.conjugated,
        }
    return report, EXIT_OK


def cmd_reduce(doc: QuiverDocument, config: RunConfig) -> tuple[dict, int]:
    B = doc.matrix
    report = _header("reduce", doc)
    m, period_text = _resolve_period(B, config)
    report["period"] = period_text
    report["scale"] = str(config.scale)
    try:
        W, rank, kernel, G = _build_basis(B, config)
    except NotSymplecticChange as exc:
        report["error"] = f"post-transform rejected: {exc}"
        return report, EXIT_NOT_SYMPLECTIC
    report["rank"] = rank
    if rank == 0:
        report["notice"] = "rank 0: nothing to reduce"
        return report, EXIT_OK
    S = build_section(G)
    report["pivot_rule"] = PIVOT_RULE
    if config.post_transform is not None:
        report["post_transform"] = fraction_rows(config.post_transform)
    report["basis"] = fraction_rows(G.g)
    report["g"] = [f"g{i + 1} = {t}" for i, t in enumerate(G.linear_forms())]
    report["f"] = [f"f{i + 1} = {t}" for i, t in enumerate(G.monomials())]
    report["section"] = {"columns": [c + 1 for c in S.columns], "matrix": fraction_rows(S.s)}
    report["kernel"] = fraction_rows(kernel)
    code = EXIT_OK
    if rank == B.n:
        report["notice"] = "full rank: projection is a diffeomorphism, no dimension reduction"
        code = EXIT_FULL_RANK
    if m is None:
        report["reduced_map"] = "unavailable: no verified period"
        return report, EXIT_FAILED
    exprs = reduced_expression(B, m, G, S)
    report["reduced_map"] = [f"f{i + 1}' = {e.to_str([f'f{j + 1}' for j in range(len(exprs))])}" for i, e in enumerate(exprs)]
    points = sample_points(B.n, config.trials, config.seed)
    reduced_points = sample_points(len(G.g), config.trials, config.seed)
    E = ReducedMapEvaluator(B, m, G, S)
    checks = {
        "commutation": _verification(verify_commutation(B, m, G, S, points, config.tol), config.seed),
    }
    if kernel:
        checks["fiber_invariance"] = _verification(
            verify_fiber_invariance(G, B, m, points, config.tol, seed=config.seed), config.seed
        )
    else:
        checks["fiber_invariance"] = "skipped: trivial kernel"
    checks["symplecticity"] = _verification(verify_symplectic(E, reduced_points, config.tol), config.seed)
    report["verification"] = checks
    if any(isinstance(c, dict) and not c["passed"] for c in checks.values()):
        code = EXIT_FAILED
    return report, code


def cmd_verify(doc: QuiverDocument, config: RunConfig) -> tuple[dict, int]:
    B = doc.matrix
    report = _header("verify", doc)
    m, period_text = _resolve_period(B, config)
    claimed = config.period if config.period is not None else m
    report["period"] = period_text
    checks: dict = {}
    points = sample_points(B.n, config.trials, config.seed)
    if claimed is None:
        checks["period_certificate"] = {"passed": False, "detail": period_text}
    else:
        inv = check_form_invariance(B, claimed, points, config.tol)
        checks["period_certificate"] = {"passed": inv.exact_passed, "m": claimed}
        entry = _verification(_as_report(inv), config.seed)
        entry["passed"] = inv.numeric_passed
        entry["agrees_with_exact"] = inv.agree
        checks["form_invariance"] = entry
    worst, worst_pt, worst_k = 0.0, None, None
    for k in range(1, B.n + 1):
        for u in points:
            r = check_mutation_congruence(B, k, u)
            if r > worst or worst_pt is None:
                worst, worst_pt, worst_k = r, u, k
    congruence = {
        "passed": bool(worst < config.tol),
        "max_residual": fmt_residual(worst),
        "points": len(points) * B.n,
        "tol": config_tol(config.tol),
        "seed": config.seed,
    }
    if not congruence["passed"] and worst_pt is not None:
        congruence["worst_node"] = worst_k
        congruence["worst_point"] = _fmt_point(worst_pt)
    checks["mutation_congruence"] = congruence
    checks["shift_pullback"] = {"passed": _check_shift_pullback(B)}
    report["checks"] = checks
    passed = all(c["passed"] for c in checks.values())
    report["verdict"] = "pass" if passed else "fail"
    return report, EXIT_OK if passed else EXIT_FAILED


def _as_report(inv) -> VerificationReport:
    return VerificationReport(
        "form invariance", inv.numeric_passed, inv.max_residual, inv.worst_point, inv.n_points, inv.tol
    )


def _check_shift_pullback(B) -> bool:
    """Index-shift pullback against explicit permutation-matrix products and the shift's log-Jacobian."""
    W = standard_form(B)
    n = B.n
    if n == 0:
        return True
    sig = exact.to_fraction_matrix(sigma_matrix(n))
    conj = W.w
    u = np.ones(n)
    for j in range(n + 1):
        if pullback_by_sigma(W, j).w != conj:
            return False
        D = log_jacobian(ShiftMap(n, j), u)
        if not np.array_equal(D.T @ W.to_numpy() @ D, exact.as_float(conj).reshape(n, n)):
            return False
        conj = exact.matmul(exact.matmul(exact.transpose(sig), conj), sig)
    return True


def cmd_orbit(doc: QuiverDocument, config: RunConfig, u0, steps: int) -> tuple[dict, int]:
    B = doc.matrix
    report = _header("orbit", doc)
    m, period_text = _resolve_period(B, config)
    report["period"] = period_text
    if m is None:
        report["error"] = "orbit needs a verified period"
        return report, EXIT_FAILED
    u0 = np.ones(B.n) if u0 is None else np.asarray(u0, dtype=float)
    if u0.shape != (B.n,):
        raise NonPositivePoint(f"u0 needs {B.n} coordinates")
    try:
        _, rank, _, G = _build_basis(B, config)
    except NotSymplecticChange as exc:
        report["error"] = f"post-transform rejected: {exc}"
        return report, EXIT_NOT_SYMPLECTIC
    project = 0 < rank < B.n
    S = build_section(G) if project else None
    o = orbit(B, m, u0, steps, G if project else None, S)
    rows = []
    for n, u in enumerate(o.points()):
        row = {"step": n, "u": u}
        if project:
            row["f"] = o.projected()[n]
            if n < len(o.residuals):
                row["residual"] = fmt_residual(o.residuals[n])
        rows.append(row)
    report["rank"] = rank
    if project:
        report["f"] = [f"f{i + 1} = {t}" for i, t in enumerate(G.monomials())]
    report["orbit"] = rows
    code = EXIT_OK
    if project:
        passed = o.max_residual < config.tol
        report["reduced_map_check"] = {
            "passed": passed,
            "max_residual": fmt_residual(o.max_residual),
            "steps": steps,
            "tol": config_tol(config.tol),
        }
        code = EXIT_OK if passed else EXIT_FAILED
    return report, code


def cmd_example(name: str, params) -> QuiverDocument:
    return example_document(name, *params)


def _parse_point(text: str):
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise NonPositivePoint(f"cannot parse point {text!r}") from None


def _load_post_transform(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedDocument(f"cannot read post-transform {path}: {exc}") from None
    if isinstance(obj, dict):
        obj = obj.get("matrix", obj.get("t"))
    try:
        return parse_rational_matrix(obj)
    except ValueError as exc:
        raise MalformedDocument(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("document", help="quiver document (JSON), or - for stdin")
    common.add_argument("--max-period", type=int, default=12)
    common.add_argument("--period", type=int, default=None, help="use this period instead of searching")
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--scale", default="1", help="rational multiplier p/q of the standard form")
    common.add_argument("--post-transform", metavar="FILE", default=None)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")

    parser = argparse.ArgumentParser(prog="quiver-reduce", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("period", parents=[common], help="detect the mutation period")
    sub.add_parser("reduce", parents=[common], help="Darboux reduction and verification")
    sub.add_parser("verify", parents=[common], help="check form invariance and pullback laws")
    p_orbit = sub.add_parser("orbit", parents=[common], help="iterate the map and check the projected orbit")
    p_orbit.add_argument("--u0", default=None, help="comma separated positive start point (default all ones)")
    p_orbit.add_argument("--steps", type=int, default=10)
    p_ex = sub.add_parser("example", help="write a family document")
    p_ex.add_argument("family")
    p_ex.add_argument("params", nargs="*", type=int)
    p_ex.add_argument("--label", default=None)
    p_ex.add_argument("-o", "--output", default=None)
    return parser


def _emit(report: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(render_text(report) + "\n")


def _glue_scale(argv: list[str]) -> list[str]:
    # argparse would read "-1/2" as an option; bind it to --scale explicitly
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--scale" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--scale={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = _glue_scale(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        if args.command == "example":
            doc = cmd_example(args.family, args.params)
            if args.label is not None:
                doc = QuiverDocument(doc.matrix, doc.family, args.label)
            if args.output:
                with open(args.output, "w") as fh:
                    fh.write(doc.to_json())
            else:
                out.write(doc.to_json())
            return EXIT_OK
        doc = load_document(args.document)
        post = _load_post_transform(args.post_transform) if args.post_transform else None
        try:
            scale = parse_rational(args.scale)
        except ValueError as exc:
            raise MalformedDocument(str(exc)) from None
        config = RunConfig(
            seed=args.seed,
            trials=args.trials,
            tol=args.tol,
            max_period=args.max_period,
            scale=Fraction(scale),
            post_transform=post,
            period=args.period,
        )
        if args.command == "period":
            report, code = cmd_period(doc, config)
        elif args.command == "reduce":
            report, code = cmd_reduce(doc, config)
        elif args.command == "verify":
            report, code = cmd_verify(doc, config)
        else:
            u0 = _parse_point(args.u0) if args.u0 else None
            report, code = cmd_orbit(doc, config, u0, args.steps)
    except QuiverError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MALFORMED
    _emit(report, args.json, out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
