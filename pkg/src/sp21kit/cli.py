"""Command-line front end: group files, report emission, exit codes.

File format (UTF-8 JSON, schema "sp21kit/1"):

    { "schema": "sp21kit/1", "tolerance": number,
      "loxodromic": Matrix, "generators": [Matrix], "labels": [string] }

where Matrix is a 3x3 array of quaternion components [w, x, y, z].
Exit codes: 0 success/certified, 1 hypothesis violated, 2 structural
contradiction or shared fixed point, 3 I/O or usage error.
"""

import argparse
import json
import math
import sys
from fractions import Fraction

from . import classify, decision, fixtures
from .errors import GroupFileError, Sp21Error
from .kleinian import WORD_LEN_CAP, GeneratorSet, trace_audit
from .linalg import QMat3, is_sp21, structure_identities
from .quat import DEFAULT_TOL, Quat, Tolerance

SCHEMA = "sp21kit/1"


# ---------------------------------------------------------------------------
# serialization

def quat_to_list(q):
    return [float(q.w), float(q.x), float(q.y), float(q.z)]


def matrix_to_lists(M):
    return [[quat_to_list(M.entry(i, k)) for k in range(3)] for i in range(3)]


def _parse_quat(value, where):
    if (not isinstance(value, list) or len(value) != 4
            or not all(isinstance(v, (int, float)) for v in value)):
        raise GroupFileError(f"{where}: expected [w, x, y, z] numbers, got {value!r}")
    if not all(math.isfinite(float(v)) for v in value):
        raise GroupFileError(f"{where}: non-finite component")
    return Quat(*(float(v) for v in value))


def _parse_matrix(value, where):
    if not isinstance(value, list) or len(value) != 3:
        raise GroupFileError(f"{where}: expected 3 rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != 3:
            raise GroupFileError(f"{where}[{i}]: expected 3 entries")
        rows.append([_parse_quat(row[k], f"{where}[{i}][{k}]") for k in range(3)])
    return QMat3(rows)


def group_to_document(gens, tolerance=DEFAULT_TOL.abs_tol):
    return {
        "schema": SCHEMA,
        "tolerance": tolerance,
        "loxodromic": matrix_to_lists(gens.loxodromic),
        "generators": [matrix_to_lists(M) for M in gens.others],
        "labels": list(gens.labels),
    }


def document_to_group(doc):
    if not isinstance(doc, dict):
        raise GroupFileError("top level: expected a JSON object")
    if doc.get("schema") != SCHEMA:
        raise GroupFileError(f"schema: expected {SCHEMA!r}, got {doc.get('schema')!r}")
    if "loxodromic" not in doc:
        raise GroupFileError("missing field: loxodromic")
    lox = _parse_matrix(doc["loxodromic"], "loxodromic")
    others = [_parse_matrix(M, f"generators[{i}]")
              for i, M in enumerate(doc.get("generators", []))]
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list)
                               or not all(isinstance(s, str) for s in labels)):
        raise GroupFileError("labels: expected a list of strings")
    tolerance = doc.get("tolerance", DEFAULT_TOL.abs_tol)
    if not isinstance(tolerance, (int, float)) or tolerance < 0:
        raise GroupFileError("tolerance: expected a nonnegative number")
    try:
        gens = GeneratorSet(lox, others, labels)
    except ValueError as exc:
        raise GroupFileError(str(exc))
    return gens, Tolerance(abs_tol=float(tolerance))


def load_group(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GroupFileError(f"{path}: {exc.strerror or exc}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}")
    return document_to_group(doc)


def save_group(path, gens, tolerance=DEFAULT_TOL.abs_tol):
    text = json.dumps(group_to_document(gens, tolerance), indent=2)
    if path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Quat):
        return quat_to_list(value)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, Fraction):
        return float(value)
    try:
        return float(value)
    except (TypeError, ValueError):
        return repr(value)


def report_to_document(report):
    doc = {
        "schema": SCHEMA,
        "case": report.case_label,
        "residuals": _jsonable(report.residuals),
        "diagnostics": _jsonable(report.diagnostics),
    }
    cert = report.certificate
    if cert is not None:
        doc["certificate"] = {
            "family": cert.family,
            "frame": [quat_to_list(u) for u in cert.units()],
            "sp_conjugator": (matrix_to_lists(cert.sp_conjugator)
                              if cert.sp_conjugator is not None else None),
        }
    return doc


# ---------------------------------------------------------------------------
# commands

def _emit(doc):
    print(json.dumps(doc, indent=2))


def _make_tol(args):
    if getattr(args, "exact", False):
        from .quat import EXACT
        return EXACT
    if getattr(args, "tol", None) is not None:
        return Tolerance(abs_tol=args.tol)
    return None


def cmd_check(args):
    gens, file_tol = load_group(args.path)
    tol = _make_tol(args) or file_tol
    rows = []
    all_ok = True
    for M, label in zip(gens.all_matrices(), gens.labels):
        ok, residual = is_sp21(M, tol)
        identities = structure_identities(M) if ok else []
        rows.append({"label": label, "sp21": ok, "residual": residual,
                     "identity_residuals": identities})
        all_ok = all_ok and ok
    _emit({"schema": SCHEMA, "command": "check", "passed": all_ok,
           "matrices": _jsonable(rows)})
    return 0 if all_ok else 1


def cmd_audit(args):
    gens, file_tol = load_group(args.path)
    tol = _make_tol(args) or file_tol
    if args.max_len > WORD_LEN_CAP and args.budget is None:
        raise UsageError(f"--max-len {args.max_len} exceeds the cap "
                         f"{WORD_LEN_CAP}; pass an explicit --budget")
    kwargs = {}
    if args.budget is not None:
        kwargs["budget"] = args.budget
    report = trace_audit(gens, args.max_len, tol, **kwargs)
    _emit({"schema": SCHEMA, "command": "audit", "passed": report.passed,
           "max_jk_residual": report.max_jk_residual,
           "worst_word": (report.worst_word.format(gens.labels)
                          if report.worst_word else None),
           "words_checked": report.words_checked})
    return 0 if report.passed else 1


def cmd_decide(args):
    gens, file_tol = load_group(args.path)
    tol = _make_tol(args) or file_tol
    report = decision.decide(gens, tol, audit_max_len=args.max_len)
    _emit(report_to_document(report))
    if report.case_label in decision.CERTIFIED_LABELS:
        return 0
    if report.case_label in (decision.INCONSISTENT, decision.COMMON_FIXED_POINT):
        return 2
    return 1


def cmd_fixture(args):
    case_tag = args.case.upper()
    spec_kwargs = {"case_tag": case_tag, "seed": args.seed,
                   "num_generators": args.generators}
    if args.lam is not None:
        spec_kwargs["lam"] = args.lam
    if args.theta is not None:
        spec_kwargs["theta"] = args.theta
    spec = fixtures.FixtureSpec(**spec_kwargs)
    gens = fixtures.make_fixture(spec)
    save_group(args.output, gens)
    return 0


def _parse_components(text, exact):
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError(f"expected w,x,y,z quaternion components, got {text!r}")
    try:
        if exact:
            return Quat(*(Fraction(p) for p in parts))
        return Quat(*(float(p) for p in parts))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad quaternion {text!r}: {exc}")


def cmd_classify_pair(args):
    a = _parse_components(args.a, args.exact)
    b = _parse_components(args.b, args.exact)
    if args.exact:
        result = classify.pair_case_oracle(a, b)
    else:
        tol = _make_tol(args) or DEFAULT_TOL
        result = classify.pair_case(a, b, tol)
    line = result.label
    if result.r is not None:
        line += f" r={float(result.r):g}"
    if result.a_star is not None:
        line += f" a_*={_fmt_complex(result.a_star)} b_*={_fmt_complex(result.b_star)}"
    print(line)
    return 0 if result.label != classify.HYPOTHESIS_VIOLATED else 1


def _fmt_complex(z):
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}i"


def cmd_falsify31(args):
    report = fixtures.falsify_lemma31(args.trials, seed=args.seed)
    print(f"{len(report.counterexamples)} counterexamples "
          f"({report.converged}/{report.trials} converged, "
          f"{len(report.rejected_candidates)} candidates rejected)")
    return 0 if not report.counterexamples else 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(3)


def build_parser():
    parser = _Parser(prog="sp21kit",
                     description="Quaternionic Kleinian group case analysis")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="absolute tolerance override")
    common.add_argument("--exact", action="store_true",
                        help="use the exact rational backend predicates")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common],
                       help="Sp(2,1) membership and structure identities")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("audit", parents=[common],
                       help="complexness of traces over short words")
    p.add_argument("path")
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("decide", parents=[common],
                       help="run the full case decision pipeline")
    p.add_argument("path")
    p.add_argument("--max-len", type=int, default=4,
                   help="trace audit word length")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("fixture", parents=[common],
                       help="synthesize a case-family generator set")
    p.add_argument("--case", required=True,
                   help="one of " + ", ".join(fixtures.CASE_TAGS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--generators", type=int, default=2)
    p.add_argument("--lam", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("classify-pair", parents=[common],
                       help="classify a quaternion pair with complex products")
    p.add_argument("--a", required=True, help="quaternion as w,x,y,z")
    p.add_argument("--b", required=True, help="quaternion as w,x,y,z")
    p.set_defaults(func=cmd_classify_pair)

    p = sub.add_parser("falsify31", parents=[common],
                       help="randomized search against the trace constraint")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_falsify31)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except (GroupFileError, UsageError) as exc:
        print(f"sp21kit: error: {exc}", file=sys.stderr)
        return 3
    except Sp21Error as exc:
        print(f"sp21kit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
