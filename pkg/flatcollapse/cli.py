"""
Command-line surface for flatcollapse.

Every command prints one JSON run report on stdout:
{"command", "inputs_digest", "outcome", "exit_code"}. Logs go to stderr.
Exit codes: 0 success, 1 invalid input or failed validation, 2 inconclusive.
"""

import argparse
import hashlib
import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from .collapse import collapse, collapsed_invariants, is_smooth
from .config import get_metric_config, get_toolkit_config
from .crysgroup import CrystGroup, is_torsion_free, load_validate
from .errors import InconclusiveError, ParseError, ToolkitError, UsageError
from .foliate import classify_leaf, leaf_group, singular_leaf_locus
from .ghmetric import verify_collapse_metric, write_report_csv
from .latgeo import AlgSubspace, l_closure, parse_subspace_document
from .ratcore import vec
from .repq import i_sequence, theorem_c_witnesses
from .telemetry import ToolkitLogger, init_tracing, track_operation

log = logging.getLogger("flatcollapse")
toolkit_log = ToolkitLogger()

Outcome = Tuple[Dict[str, Any], int]


@dataclass
class RunReport:
    command: str
    inputs_digest: str
    outcome: Dict[str, Any]
    exit_code: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "inputs_digest": self.inputs_digest,
                "outcome": self.outcome,
                "exit_code": self.exit_code,
            },
            sort_keys=True,
            indent=2,
        )


# ---------- Inputs ----------

def inputs_digest(paths: List[str]) -> str:
    digest = hashlib.sha256()
    for path in paths:
        try:
            with open(path, "rb") as f:
                digest.update(f.read())
        except OSError:
            digest.update(path.encode())
    return digest.hexdigest()


def read_json(path: str) -> dict:
    try:
        with open(path, "r") as f:
            return json.load(f)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}")


def load_group(path: str) -> CrystGroup:
    g = load_validate(read_json(path))
    toolkit_log.log_group_loaded(g.n, g.order, len(g.generators))
    return g


def load_subspace(path: str, n: int):
    w = parse_subspace_document(read_json(path), n)
    toolkit_log.log_subspace_loaded(w.dim, n, isinstance(w, AlgSubspace) and not w.is_rational())
    return w


def parse_point(text: str, n: int):
    entries = [e for e in text.split(",") if e.strip()]
    if len(entries) != n:
        raise ParseError(f"point {text!r} needs {n} coordinates")
    return vec(entries)


def parse_scales(text: Optional[str]) -> Optional[List[float]]:
    if text is None:
        return None
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError as e:
        raise ParseError(f"cannot parse scales {text!r}: {e}")


# ---------- Commands ----------

@track_operation("validate")
def run_validate(args) -> Outcome:
    g = load_group(args.group)
    return {"dim": g.n, "point_group_order": g.order, "group": g.to_document()}, 0


@track_operation("torsion")
def run_torsion(args) -> Outcome:
    return is_torsion_free(load_group(args.group)).to_document(), 0


@track_operation("closure")
def run_closure(args) -> Outcome:
    g = load_group(args.group)
    result = l_closure(load_subspace(args.subspace, g.n), g.gram)
    return result.to_document(), 0


@track_operation("collapse")
def run_collapse(args) -> Outcome:
    g = load_group(args.group)
    cg = collapse(g, load_subspace(args.subspace, g.n))
    payload = {
        "collapsed_along": cg.w.to_document()["basis"],
        "chart": [[str(e) for e in cg.chart.row(i)] for i in range(cg.chart.rows)],
        "group": cg.group.to_document(),
        "invariants": collapsed_invariants(cg).to_document(),
        "kernel_elements": len(cg.kernel_elements),
    }
    if args.out:
        with open(args.out, "w") as f:
            json.dump(cg.group.to_document(), f, indent=2)
        log.info(f"collapsed group written to {args.out}")
    return payload, 0


@track_operation("smoothness")
def run_smoothness(args) -> Outcome:
    g = load_group(args.group)
    return is_smooth(g, load_subspace(args.subspace, g.n)).to_document(), 0


@track_operation("leaf")
def run_leaf(args) -> Outcome:
    g = load_group(args.group)
    w = load_subspace(args.subspace, g.n)
    u = parse_point(args.point, g.n)
    payload = leaf_group(g, w, u).to_document()
    if is_torsion_free(g).torsion_free:
        payload["classification"] = classify_leaf(g, w, u).to_document()
    return payload, 0


@track_operation("singular_locus")
def run_singular_locus(args) -> Outcome:
    g = load_group(args.group)
    return singular_leaf_locus(g, load_subspace(args.subspace, g.n)).to_document(), 0


@track_operation("isequence")
def run_isequence(args) -> Outcome:
    seq = i_sequence(load_group(args.group), args.budget)
    if not seq.certified:
        toolkit_log.log_inconclusive("isequence", f"unresolved blocks {list(seq.unresolved)}")
        return seq.to_document(), 2
    return seq.to_document(), 0


@track_operation("theorem_c")
def run_theorem_c(args) -> Outcome:
    return theorem_c_witnesses(load_group(args.group), args.budget).to_document(), 0


@track_operation("gh_verify", operation_kind="numeric")
def run_gh_verify(args) -> Outcome:
    g = load_group(args.group)
    w = load_subspace(args.subspace, g.n)
    cfg = get_metric_config().with_overrides(
        s_values=parse_scales(args.s),
        pair_count=args.pairs,
        enum_radius=args.radius,
        tol=args.tol,
        seed=args.seed,
    )
    report = verify_collapse_metric(g, w, cfg)
    if args.csv:
        rows = write_report_csv(report, args.csv)
        toolkit_log.log_csv_written(args.csv, rows)
    return report.to_document(), 0


HANDLERS = {
    "validate": run_validate,
    "torsion": run_torsion,
    "closure": run_closure,
    "collapse": run_collapse,
    "smoothness": run_smoothness,
    "leaf": run_leaf,
    "singular-locus": run_singular_locus,
    "isequence": run_isequence,
    "theorem-c": run_theorem_c,
    "gh-verify": run_gh_verify,
}


class ToolkitArgumentParser(argparse.ArgumentParser):
    """Raises UsageError instead of exiting with status 2, which means inconclusive here."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = ToolkitArgumentParser(
        prog="flatcollapse",
        description="Exact collapse of flat orbifolds along invariant subspaces.",
    )
    subparsers = parser.add_subparsers(dest="command")

    for name, help_text in [
        ("validate", "Validate a group file and enumerate its point group."),
        ("torsion", "Decide whether the group is torsion-free."),
        ("isequence", "Compute the i-sequence of the holonomy representation."),
        ("theorem-c", "Find two collapses with different i-sequences."),
    ]:
        p = subparsers.add_parser(name, help=help_text)
        p.add_argument("group", type=str, help="Group JSON file.")
        if name in ("isequence", "theorem-c"):
            p.add_argument("--budget", type=int, default=None, help="Probe height for splitting components.")

    for name, help_text in [
        ("closure", "L-closure of a subspace."),
        ("collapse", "Collapsed crystallographic group along a subspace."),
        ("smoothness", "Decide whether the collapsed limit is a manifold."),
        ("leaf", "Leaf data through a rational point."),
        ("singular-locus", "Exceptional leaves of the subspace foliation."),
        ("gh-verify", "Numerically verify the metric collapse."),
    ]:
        p = subparsers.add_parser(name, help=help_text)
        p.add_argument("group", type=str, help="Group JSON file.")
        p.add_argument("--subspace", type=str, required=True, help="Subspace JSON file.")
        if name == "collapse":
            p.add_argument("--out", type=str, default=None, help="Write the collapsed group file here.")
        if name == "leaf":
            p.add_argument("--point", type=str, required=True, help='Base point, e.g. "0,1/3".')
        if name == "gh-verify":
            p.add_argument("--s", type=str, default=None, help='Scales, e.g. "1,0.5,0.25".')
            p.add_argument("--pairs", type=int, default=None)
            p.add_argument("--radius", type=float, default=None)
            p.add_argument("--tol", type=float, default=None)
            p.add_argument("--seed", type=int, default=None)
            p.add_argument("--csv", type=str, default=None, help="Write per-scale records as CSV.")
    return parser


def _input_paths(args) -> List[str]:
    return [p for p in (getattr(args, "group", None), getattr(args, "subspace", None)) if p]


def _error_outcome(e: Exception) -> Dict[str, Any]:
    return {"error": type(e).__name__, "message": str(e)}


def run(argv: Optional[List[str]] = None) -> RunReport:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        toolkit_log.log_failure("usage", e)
        return RunReport("", inputs_digest([]), _error_outcome(e), e.exit_code)
    if args.command is None:
        parser.print_help(sys.stderr)
        return RunReport("", inputs_digest([]), {"error": "UsageError", "message": "no command given"}, 1)

    paths = _input_paths(args)
    digest = inputs_digest(paths)
    toolkit_log.log_command_start(args.command, paths)
    toolkit_log.log_inputs_digest(digest)

    try:
        outcome, exit_code = HANDLERS[args.command](args)
    except InconclusiveError as e:
        toolkit_log.log_inconclusive(args.command, str(e))
        outcome, exit_code = _error_outcome(e), e.exit_code
    except ToolkitError as e:
        toolkit_log.log_failure(args.command, e)
        outcome, exit_code = _error_outcome(e), e.exit_code
    except (ValueError, ArithmeticError, OSError, RuntimeError) as e:
        # unreadable config, unwritable --out/--csv targets, numeric breakdowns
        toolkit_log.log_failure(args.command, e)
        outcome, exit_code = _error_outcome(e), 1

    toolkit_log.log_outcome(args.command, exit_code, outcome)
    return RunReport(args.command, digest, outcome, exit_code)


def main(argv: Optional[List[str]] = None) -> int:
    env = get_toolkit_config()
    logging.basicConfig(
        level=env["LOG_LEVEL"].upper(),
        stream=sys.stderr,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    if env["TRACING_ENABLED"]:
        init_tracing(env)

    report = run(argv)
    print(report.to_json())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
