"""Rendering of command results as text or JSON. No computation happens here
beyond formatting."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .complex import Complex
from .constants import CATALOG_NAMES, EXIT_NEGATIVE, EXIT_OK, EXIT_UNKNOWN
from .group import IntMatrix, Outcome, PointedAbelianSignature, Verdict
from .storage import dumps
from .task import LoopTask, Violation

FORMATS = ("text", "json")

_EXIT_CODES = {
    Outcome.IMPLEMENTS: EXIT_OK,
    Outcome.EQUIVALENT: EXIT_OK,
    Outcome.NOT_IMPLEMENTS: EXIT_NEGATIVE,
    Outcome.NOT_EQUIVALENT: EXIT_NEGATIVE,
    Outcome.UNKNOWN: EXIT_UNKNOWN,
}


@dataclass
class Report:
    command: str
    result: Dict[str, Any]
    lines: List[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    # set once the command has written its own output
    emitted: bool = field(default=False, repr=False)

    def render(self, fmt: str = "text") -> str:
        if fmt == "json":
            return dumps({"command": self.command, "exit_code": self.exit_code,
                          "result": self.result})
        return "\n".join([f"# {self.command}", *self.lines]) + "\n"


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

def _fmt(values: Sequence[int]) -> str:
    return "[" + ",".join(str(v) for v in values) + "]"


def orient(sig: PointedAbelianSignature) -> Tuple[Tuple[int, ...],
                                                  Tuple[int, ...]]:
    """(element, inverse) with the element's first nonzero free coordinate
    positive; torsion-only elements take the lexicographically smaller
    orientation."""
    element, inverse = sig.element, sig.negated().element
    free = [e for e, f in zip(element, sig.invariant_factors) if f == 0]
    first = next((e for e in free if e), 0)
    if first < 0 or (first == 0 and inverse < element):
        element, inverse = inverse, element
    return element, inverse


def signature_line(sig: PointedAbelianSignature) -> str:
    element, _ = orient(sig)
    return (f"factors: {_fmt(sig.torsion)} free_rank: {sig.free_rank} "
            f"element: {_fmt(element)}")


def signature_dict(sig: PointedAbelianSignature) -> Dict[str, Any]:
    element, inverse = orient(sig)
    return {"factors": list(sig.torsion), "free_rank": sig.free_rank,
            "element": list(element), "inverse": list(inverse)}


def signature_report(command: str, t: LoopTask,
                     sig: PointedAbelianSignature) -> Report:
    _, inverse = orient(sig)
    return Report(command, {"task": t.label, **signature_dict(sig)},
                  [signature_line(sig), f"inverse: {_fmt(inverse)}"])


# ---------------------------------------------------------------------------
# Complexes and tasks
# ---------------------------------------------------------------------------

def complex_stats(c: Complex) -> Dict[str, Any]:
    return {"vertices": len(c.vertices), "simplexes": len(c),
            "f_vector": list(c.f_vector)}


def _stats_line(c: Complex) -> str:
    return (f"vertices: {len(c.vertices)} simplexes: {len(c)} "
            f"f_vector: {_fmt(c.f_vector)}")


def compose_report(command: str, t: LoopTask,
                   out: Optional[str] = None) -> Report:
    result = {"task": t.label, **complex_stats(t.output),
              "loop_length": t.loop.length}
    lines = [f"task: {t.label}", _stats_line(t.output),
             f"loop_length: {t.loop.length}"]
    if out:
        result["written"] = out
        lines.append(f"written: {out}")
    return Report(command, result, lines)


def bary_report(command: str, c: Complex, n: int,
                out: Optional[str] = None) -> Report:
    result = {"n": n, **complex_stats(c)}
    lines = [f"n: {n}", _stats_line(c)]
    if out:
        result["written"] = out
        lines.append(f"written: {out}")
    return Report(command, result, lines)


def catalog_report(command: str, tasks: Sequence[LoopTask]) -> Report:
    entries = []
    lines = []
    for t in tasks:
        entries.append({"name": t.label, **complex_stats(t.output),
                        "loop_length": t.loop.length})
        lines.append(f"{t.label}: {_stats_line(t.output)} "
                     f"loop_length: {t.loop.length}")
    return Report(command, {"tasks": entries}, lines)


def catalog_names_report(command: str) -> Report:
    return Report(command, {"names": list(CATALOG_NAMES)}, list(CATALOG_NAMES))


# ---------------------------------------------------------------------------
# Verdicts and verification
# ---------------------------------------------------------------------------

def _matrix_lines(m: IntMatrix) -> List[str]:
    if not m.rows:
        return [f"  (0 x {m.cols})"]
    return ["  " + _fmt(r) for r in m.rows]


def verdict_report(command: str, verdict: Verdict) -> Report:
    result: Dict[str, Any] = {"verdict": verdict.outcome.value,
                              "detail": verdict.detail}
    lines = [verdict.outcome.value, f"detail: {verdict.detail}"]
    if verdict.source is not None:
        result["source"] = signature_dict(verdict.source)
        lines.append(f"source: {signature_line(verdict.source)}")
    if verdict.target is not None:
        result["target"] = signature_dict(verdict.target)
        lines.append(f"target: {signature_line(verdict.target)}")
    if verdict.witnesses:
        result["witnesses"] = [m.to_lists() for m in verdict.witnesses]
        for m in verdict.witnesses:
            lines.append("witness:")
            lines.extend(_matrix_lines(m))
    return Report(command, result, lines, _EXIT_CODES[verdict.outcome])


def verify_report(command: str, violation: Optional[Violation]) -> Report:
    if violation is None:
        return Report(command, {"result": "PASS"}, ["PASS"])
    sigma = list(violation.sigma)
    return Report(
        command,
        {"result": "FAIL", "sigma": sigma, "simplex": list(violation.simplex),
         "image": list(violation.image)},
        ["FAIL", f"sigma: {_fmt(sigma)}",
         f"simplex: {list(violation.simplex)}",
         f"image: {list(violation.image)}"],
        EXIT_NEGATIVE)
