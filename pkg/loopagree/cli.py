"""Command-line controller: parse arguments, call the library, print a
Report. Exit codes: 0 success/IMPLEMENTS/PASS, 1 NOT/FAIL, 2 UNKNOWN,
3 usage or input error."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from .complex import Complex, barycentric_power, product
from .constants import (CATALOG_NAMES, CATALOG_PREFIX, EXIT_USAGE,
                        LOG_FORMAT, MAX_TASK_DIMENSION)
from .errors import LoopAgreeError, UsageError
from .group import decide_implements, task_signature, tasks_equivalent
from .report import (FORMATS, Report, bary_report, catalog_names_report,
                     catalog_report, compose_report, signature_report,
                     verdict_report, verify_report)
from .storage import (complex_to_dict, dumps, load_complex,
                      load_decision_map, load_task, task_to_dict, write_json)
from .task import catalog, compose_all, find_joint_violation, find_violation

logger = logging.getLogger(__name__)

PROG = "loopagree"


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad input; 2 means UNKNOWN here."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _emit(data, out: Optional[str], report: Report, fmt: str) -> None:
    """Artifact to `out` (report on stdout), or artifact on stdout
    (report on stderr)."""
    if out:
        write_json(out, data)
        sys.stdout.write(report.render(fmt))
    else:
        sys.stdout.write(dumps(data))
        sys.stderr.write(report.render(fmt))
    report.emitted = True


def cmd_signature(args: argparse.Namespace) -> Report:
    t = load_task(args.task)
    return signature_report(f"signature {args.task}", t, task_signature(t))


def cmd_compose(args: argparse.Namespace) -> Report:
    if len(args.tasks) < 2:
        raise UsageError("compose needs at least two tasks")
    t = compose_all([load_task(ref) for ref in args.tasks])
    report = compose_report("compose " + " ".join(args.tasks), t, args.out)
    _emit(task_to_dict(t), args.out, report, args.format)
    return report


def cmd_check(args: argparse.Namespace) -> Report:
    sources = [load_task(ref) for ref in args.sources]
    target = load_task(args.target)
    command = f"check {' '.join(args.sources)} --target {args.target}"
    if args.equivalent:
        if len(sources) != 1:
            raise UsageError("--equivalent takes exactly one source")
        return verdict_report(command + " --equivalent",
                              tasks_equivalent(sources[0], target))
    return verdict_report(command, decide_implements(sources, target))


def cmd_verify(args: argparse.Namespace) -> Report:
    command = "verify " + " ".join(args.files)
    if args.joint:
        if len(args.files) != 2:
            raise UsageError("with --joint give TARGET and MAP only")
        t1, t2 = (load_task(ref) for ref in args.joint)
        target = load_task(args.files[0])
        base = product(t1.output, t2.output, max_dim=MAX_TASK_DIMENSION)
        d = load_decision_map(args.files[1], base, target.output)
        return verify_report(command + " --joint " + " ".join(args.joint),
                             find_joint_violation(t1, t2, target, d))
    if len(args.files) != 3:
        raise UsageError("verify needs SOURCE TARGET MAP")
    source, target = load_task(args.files[0]), load_task(args.files[1])
    d = load_decision_map(args.files[2], source.output, target.output)
    return verify_report(command, find_violation(source, target, d))


def cmd_catalog(args: argparse.Namespace) -> Report:
    if args.name is None:
        if args.names_only:
            return catalog_names_report("catalog")
        return catalog_report("catalog", [catalog(n) for n in CATALOG_NAMES])
    t = catalog(args.name.removeprefix(CATALOG_PREFIX))
    report = compose_report(f"catalog {args.name}", t, args.out)
    _emit(task_to_dict(t), args.out, report, args.format)
    return report


def _load_base(ref: str) -> Complex:
    if ref.startswith(CATALOG_PREFIX):
        return load_task(ref).output
    return load_complex(ref)


def cmd_bary(args: argparse.Namespace) -> Report:
    if args.n < 1:
        raise UsageError("-n must be at least 1")
    c = barycentric_power(_load_base(args.complex), args.n)
    report = bary_report(f"bary {args.complex} -n {args.n}", c, args.n,
                         args.out)
    _emit(complex_to_dict(c), args.out, report, args.format)
    return report


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text",
                        help="report format (default: text)")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for debug detail")

    parser = _Parser(prog=PROG,
                     description="Loop agreement tasks: signatures, "
                                 "composition and implementation checks. "
                                 f"Use {CATALOG_PREFIX}NAME for a built-in "
                                 "task wherever a task file is expected.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser,
                                required=True)

    p = sub.add_parser("signature", parents=[common],
                       help="abelianized algebraic signature of a task")
    p.add_argument("task")
    p.set_defaults(handler=cmd_signature)

    p = sub.add_parser("compose", parents=[common],
                       help="compose two or more tasks")
    p.add_argument("tasks", nargs="+")
    p.add_argument("-o", "--out", help="write the composed task here")
    p.set_defaults(handler=cmd_compose)

    p = sub.add_parser("check", parents=[common],
                       help="decide whether sources implement a target")
    p.add_argument("sources", nargs="+")
    p.add_argument("--target", required=True)
    p.add_argument("--equivalent", action="store_true",
                   help="check both directions")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("verify", parents=[common],
                       help="check a decision map against Γ")
    p.add_argument("files", nargs="+", metavar="FILE",
                   help="SOURCE TARGET MAP, or TARGET MAP with --joint")
    p.add_argument("--joint", nargs=2, metavar=("T1", "T2"))
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("catalog", parents=[common],
                       help="list or emit built-in tasks")
    p.add_argument("name", nargs="?")
    p.add_argument("--names-only", action="store_true")
    p.add_argument("-o", "--out")
    p.set_defaults(handler=cmd_catalog)

    p = sub.add_parser("bary", parents=[common],
                       help="iterated barycentric subdivision of a complex")
    p.add_argument("complex", help="complex file, or @NAME for a task output")
    p.add_argument("-n", type=int, default=1)
    p.add_argument("-o", "--out")
    p.set_defaults(handler=cmd_bary)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr,
                        force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _configure_logging(args.verbose)
        report = args.handler(args)
    except (LoopAgreeError, OSError) as exc:
        sys.stderr.write(f"{PROG}: error: {exc}\n")
        return EXIT_USAGE
    except KeyboardInterrupt:
        return EXIT_USAGE
    if not report.emitted:
        sys.stdout.write(report.render(args.format))
    return report.exit_code
