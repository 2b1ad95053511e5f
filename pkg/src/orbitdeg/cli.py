"""Command-line surface.

Subcommands:
  compute        report for a descriptor file
  contribution   a single correction term or point factor
  newton         polygon and side data from a monomial support
  union          combine two computed curves meeting transversally
  scale          the m-fold multiple of a computed curve
  corpus         replay the bundled golden fixtures

Exit codes: 0 success, 1 validation or precondition failure (and corpus
mismatches), 2 I/O or parse errors.  Reports go to stdout, diagnostics
to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import corpus as corpus_mod
from . import corrections, engine, model, newton
from .series import rational_to_string, to_rational

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_IO) from None


def _load_descriptor(path: str) -> model.CurveDescriptor:
    text = _read_text(path)
    try:
        return model.parse(text)
    except model.DescriptorError as exc:
        raise _CliError(f"{path}: {exc}", EXIT_IO) from None


def _assemble(path: str, erratum_strict: bool) -> engine.OrbitReport:
    descriptor = _load_descriptor(path)
    try:
        return engine.assemble(descriptor, erratum_strict=erratum_strict)
    except engine.EngineError as exc:
        raise _CliError(f"{path}: {exc}", EXIT_INVALID) from None


def _emit_report(report: engine.OrbitReport, fmt: str) -> None:
    if fmt == "pretty":
        print(engine.report_to_text(report))
    else:
        print(json.dumps(engine.report_to_obj(report), indent=2))


def _int_csv(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(part.strip()) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _int_pair(text: str) -> tuple[int, int]:
    values = _int_csv(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected j,k — got {text!r}")
    return values[0], values[1]


def _rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _add_common_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "pretty"), default="json", help="output format")
    parser.add_argument(
        "--erratum",
        choices=("derived", "strict"),
        default="derived",
        help="inflection-factor convention: the derived H^6 coefficient -1/48 (default) "
        "or the circulated -1/42 ('strict'), which demonstrably breaks golden values",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitdeg",
        description="Exact orbit-closure degree computations for plane curves "
        "under projective linear transformations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="compute the report for a descriptor file")
    p_compute.add_argument("path", help="JSON descriptor file")
    p_compute.add_argument(
        "--expect-dimension", type=int, default=None, help="warn when the computed orbit dimension differs"
    )
    _add_common_output_flags(p_compute)

    p_contr = sub.add_parser("contribution", help="print one correction term or point factor")
    p_contr.add_argument(
        "kind",
        choices=(
            "line", "type1",
            "nonlinear", "type2",
            "tangent-cone", "type3",
            "side", "type4",
            "truncation", "type5",
            "irreducible",
            "multiple-point",
            "flexes",
            "local-quadratic",
        ),
    )
    p_contr.add_argument("--degree", type=int, help="curve degree (line, nonlinear)")
    p_contr.add_argument("--mult", type=int, help="component or point multiplicity")
    p_contr.add_argument("--meets", type=_int_csv, help="line intersection multiplicities, comma separated")
    p_contr.add_argument("--e", type=int, help="nonlinear component degree")
    p_contr.add_argument("--lines", type=_int_csv, help="tangent-cone line multiplicities")
    p_contr.add_argument("--from", dest="side_from", type=_int_pair, help="side start j,k")
    p_contr.add_argument("--to", dest="side_to", type=_int_pair, help="side end j,k")
    p_contr.add_argument("--s", type=_int_csv, help="root or conic multiplicities")
    p_contr.add_argument("--ell", type=int, help="truncation denominator-clearing exponent")
    p_contr.add_argument("--W", "--weight", dest="weight", type=_rational, help="truncation weight")
    p_contr.add_argument("--m", type=int, help="multiplicity at the point")
    p_contr.add_argument("--n", type=int, help="contact order with the branch tangent")
    p_contr.add_argument("--essential", type=_int_csv, default=[], help="essential exponents")
    p_contr.add_argument("--contacts", type=_int_csv, help="branch tangent contacts (multiple-point)")
    p_contr.add_argument("--count", type=int, help="number of ordinary inflections")
    p_contr.add_argument("--alpha", type=_rational, help="quadratic coefficient")
    p_contr.add_argument("--beta", type=_rational, help="linear coefficient")
    p_contr.add_argument("--gamma", type=_rational, help="constant coefficient")
    p_contr.add_argument("--rho", type=_rational, help="degree offset of the distinguished line")
    p_contr.add_argument("--delta", type=int, default=1, help="covering degree")
    p_contr.add_argument("--erratum", choices=("derived", "strict"), default="derived")

    p_newton = sub.add_parser("newton", help="polygon and side data from a monomial support")
    p_newton.add_argument("path", help="JSON file: {\"degree\": d, \"terms\": [[j, k, \"num/den\"], ...]}")
    p_newton.add_argument("--format", choices=("json", "pretty"), default="json")

    p_union = sub.add_parser("union", help="combine two transversally meeting curves")
    p_union.add_argument("left", help="descriptor file of the first curve")
    p_union.add_argument("right", help="descriptor file of the second curve")
    p_union.add_argument("--crossings", type=int, default=0, help="nonlinear-with-nonlinear intersections")
    p_union.add_argument("--line-crossings", type=int, default=0, help="nonlinear-with-line intersections")
    p_union.add_argument("--tangencies", type=int, default=0, help="simple tangency points")
    p_union.add_argument("--stabilizer", type=int, default=None, help="stabilizer degree of the union")
    _add_common_output_flags(p_union)

    p_scale = sub.add_parser("scale", help="report for the m-fold multiple of a curve")
    p_scale.add_argument("path", help="JSON descriptor file")
    p_scale.add_argument("--multiple", type=int, required=True, help="multiplication factor m >= 1")
    p_scale.add_argument("--stabilizer", type=int, default=None, help="stabilizer degree of the multiple")
    _add_common_output_flags(p_scale)

    p_corpus = sub.add_parser("corpus", help="replay the bundled golden fixtures")
    p_corpus.add_argument("--dir", default=None, help=f"fixture directory (or ${corpus_mod.ENV_CORPUS_DIR})")
    p_corpus.add_argument("--erratum", choices=("derived", "strict"), default="derived")

    return parser


def _cmd_compute(args: argparse.Namespace) -> int:
    report = _assemble(args.path, args.erratum == "strict")
    if args.expect_dimension is not None and args.expect_dimension != report.orbit_dimension:
        print(
            f"warning: computed orbit dimension {report.orbit_dimension}, "
            f"expected {args.expect_dimension}",
            file=sys.stderr,
        )
    _emit_report(report, args.format)
    return EXIT_OK


def _require(args: argparse.Namespace, names: list[str]) -> None:
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        flags = ", ".join("--" + name.replace("_", "-") for name in missing)
        raise _CliError(f"{args.kind}: missing {flags}", EXIT_INVALID)


def _cmd_contribution(args: argparse.Namespace) -> int:
    payload: dict[str, object] = {"kind": args.kind}
    try:
        if args.kind in ("line", "type1"):
            _require(args, ["mult", "degree"])
            corr = corrections.line_correction(args.mult, args.meets or [], args.degree)
            payload["term"] = corr.term.to_strings()
        elif args.kind in ("nonlinear", "type2"):
            _require(args, ["degree", "e", "mult"])
            corr = corrections.nonlinear_correction(args.degree, args.e, args.mult)
            payload["term"] = corr.term.to_strings()
        elif args.kind in ("tangent-cone", "type3"):
            _require(args, ["lines"])
            payload["term"] = corrections.tangent_cone_correction(args.lines).term.to_strings()
        elif args.kind in ("side", "type4"):
            _require(args, ["side_from", "side_to", "s"])
            side = model.NewtonSide(
                args.side_from[0], args.side_from[1], args.side_to[0], args.side_to[1], tuple(args.s)
            )
            payload["term"] = corrections.newton_side_correction(side).term.to_strings()
        elif args.kind in ("truncation", "type5"):
            _require(args, ["ell", "weight", "s"])
            trunc = model.Truncation(args.ell, args.weight, tuple(args.s))
            payload["term"] = corrections.truncation_correction(trunc).term.to_strings()
        elif args.kind == "irreducible":
            _require(args, ["m", "n"])
            sing = model.IrreducibleSingularity(args.m, args.n, tuple(args.essential))
            payload["factor"] = corrections.irreducible_singularity_factor(sing).to_strings()
            payload["absorbs"] = corrections.flexes_absorbed(sing)
        elif args.kind == "multiple-point":
            _require(args, ["m"])
            factor = corrections.ordinary_multiple_point_factor(args.m, args.contacts or [])
            payload["factor"] = factor.to_strings()
        elif args.kind == "flexes":
            _require(args, ["count"])
            factor = corrections.flex_equivalent(args.count, printed=args.erratum == "strict")
            payload["factor"] = factor.to_strings()
        else:  # local-quadratic
            _require(args, ["alpha", "beta", "gamma", "rho"])
            corr = corrections.local_correction_from_quadratic(
                args.alpha, args.beta, args.gamma, args.rho, args.delta
            )
            payload["term"] = corr.term.to_strings()
    except corrections.FeatureError as exc:
        raise _CliError(str(exc), EXIT_INVALID) from None
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_newton(args: argparse.Namespace) -> int:
    text = _read_text(args.path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _CliError(f"{args.path}: {exc.msg} (line {exc.lineno}, column {exc.colno})", EXIT_IO) from None
    try:
        degree = data["degree"]
        terms = [(int(j), int(k), coeff) for j, k, coeff in data["terms"]]
        support = newton.MonomialSupport.from_terms(degree, terms)
        polygon = newton.newton_polygon(support)
        multiplicity, contact = newton.local_invariants(support)
        sides = [newton.side_data(support, side) for side in newton.qualifying_sides(polygon)]
    except (KeyError, TypeError, ValueError) as exc:
        raise _CliError(f"{args.path}: {exc}", EXIT_INVALID) from None

    payload = {
        "polygon": {"vertices": [list(v) for v in polygon.vertices]},
        "multiplicity": multiplicity,
        "contact": contact if contact is not None else "infinite",
        "sides": [
            {
                "from": [s.j0, s.k0],
                "to": [s.j1, s.k1],
                "span": s.span,
                "coefficients": [rational_to_string(g) for g in s.gammas],
                "profile": [list(pair) for pair in s.profile],
                "s": list(s.s_values()),
            }
            for s in sides
        ],
    }
    if args.format == "pretty":
        lines = [f"polygon vertices: {payload['polygon']['vertices']}"]
        lines.append(f"multiplicity at the point: {multiplicity}")
        lines.append(f"contact with the tangent line: {payload['contact']}")
        for entry in payload["sides"]:
            lines.append(
                f"side {entry['from']} -> {entry['to']}: span {entry['span']}, "
                f"coefficients {entry['coefficients']}, s {entry['s']}"
            )
        print("\n".join(lines))
    else:
        print(json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_union(args: argparse.Namespace) -> int:
    strict = args.erratum == "strict"
    left = _assemble(args.left, strict)
    right = _assemble(args.right, strict)
    try:
        combined = engine.union(
            left,
            right,
            crossings=args.crossings,
            line_crossings=args.line_crossings,
            tangencies=args.tangencies,
            stabilizer_degree=args.stabilizer,
        )
    except engine.EngineError as exc:
        raise _CliError(str(exc), EXIT_INVALID) from None
    _emit_report(combined, args.format)
    return EXIT_OK


def _cmd_scale(args: argparse.Namespace) -> int:
    if args.multiple < 1:
        raise _CliError("--multiple must be a positive integer", EXIT_INVALID)
    report = _assemble(args.path, args.erratum == "strict")
    try:
        scaled = engine.scale(report, args.multiple, stabilizer_degree=args.stabilizer)
    except engine.EngineError as exc:
        raise _CliError(str(exc), EXIT_INVALID) from None
    _emit_report(scaled, args.format)
    return EXIT_OK


def _cmd_corpus(args: argparse.Namespace) -> int:
    try:
        results = corpus_mod.run(Path(args.dir) if args.dir else None, args.erratum == "strict")
    except FileNotFoundError as exc:
        raise _CliError(str(exc), EXIT_IO) from None
    width = max(len(r.name) for r in results)
    failed = 0
    for result in results:
        status = "pass" if result.passed else "FAIL"
        print(f"{result.name:<{width}}  {status}")
        for failure in result.failures:
            failed_line = f"{'':<{width}}    {failure}"
            print(failed_line)
        if not result.passed:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} fixtures passed")
    return EXIT_OK if failed == 0 else EXIT_INVALID


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "compute": _cmd_compute,
        "contribution": _cmd_contribution,
        "newton": _cmd_newton,
        "union": _cmd_union,
        "scale": _cmd_scale,
        "corpus": _cmd_corpus,
    }
    try:
        return handlers[args.command](args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except engine.ValidationError as exc:
        for violation in exc.violations:
            print(f"invalid: {violation}", file=sys.stderr)
        return EXIT_INVALID
    except engine.EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
