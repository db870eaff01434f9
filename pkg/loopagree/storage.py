"""JSON persistence for complexes, loops, tasks and decision maps.

Emitted JSON is canonical (sorted keys, sorted simplexes) so that emitting
the same object twice gives identical bytes.
"""

from __future__ import annotations

import json
import logging
import os
from typing import Any, Dict, List, Optional, Union

from .complex import Complex, SimplicialMap, barycentric_power, build
from .constants import CATALOG, CATALOG_PREFIX
from .errors import LoopAgreeError, ParseError, SourceMismatch, UnknownTask
from .loops import TriangleLoop, make_triangle_loop
from .task import DecisionMap, LoopTask, catalog, compose

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Raw JSON
# ---------------------------------------------------------------------------

def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def read_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def write_json(path: str, data: Any) -> None:
    """Write atomically: temp file, then rename over the target."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    tmp_path = path + ".tmp"
    with open(tmp_path, "w", encoding="utf-8") as fh:
        fh.write(dumps(data))
    os.replace(tmp_path, path)
    logger.debug("wrote %s", path)


def _field(data: Any, key: str, kind: type) -> Any:
    if not isinstance(data, dict):
        raise ParseError(f"expected an object, got {type(data).__name__}")
    if key not in data:
        raise ParseError(f"missing field {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise ParseError(f"field {key!r} should be {kind.__name__}")
    return value


def _strings(value: Any, what: str) -> List[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ParseError(f"{what} should be a list of vertex ids")
    return value


# ---------------------------------------------------------------------------
# Complexes
# ---------------------------------------------------------------------------

def complex_to_dict(c: Complex) -> Dict[str, Any]:
    return {"simplexes": [list(s) for s in c.maximal]}


def complex_from_dict(data: Any) -> Complex:
    raw = _field(data, "simplexes", list)
    tops = [_strings(s, "a simplex") for s in raw]
    try:
        return build(tops)
    except LoopAgreeError as exc:
        raise ParseError(f"bad complex: {exc}") from exc


# ---------------------------------------------------------------------------
# Loops and tasks
# ---------------------------------------------------------------------------

def loop_to_dict(l: TriangleLoop) -> Dict[str, Any]:
    return {"v": list(l.designated),
            "p01": list(l.p01.vertices),
            "p12": list(l.p12.vertices),
            "p20": list(l.p20.vertices)}


def loop_from_dict(data: Any, c: Complex) -> TriangleLoop:
    vertices = _strings(_field(data, "v", list), "v")
    if len(vertices) != 3:
        raise ParseError("a triangle loop has exactly three vertices")
    paths = [_strings(_field(data, key, list), key)
             for key in ("p01", "p12", "p20")]
    return make_triangle_loop(c, *vertices, *paths)


Provenance = Union[str, List["Provenance"]]


def _provenance(t: LoopTask) -> Optional[Provenance]:
    """Catalog name, or nested [left, right] of a composition of them."""
    if t.factors is None:
        if t.abelian and t.name in CATALOG and t == catalog(t.name):
            return t.name
        return None
    parts = [_provenance(f) for f in t.factors]
    return None if None in parts else parts


def _rebuild(spec: Any) -> LoopTask:
    if isinstance(spec, str):
        return catalog(spec)
    if isinstance(spec, list) and len(spec) == 2:
        return compose(_rebuild(spec[0]), _rebuild(spec[1]))
    raise ParseError("'composed_of' should nest catalog names in pairs")


def task_to_dict(t: LoopTask) -> Dict[str, Any]:
    data: Dict[str, Any] = {"complex": complex_to_dict(t.output),
                            "loop": loop_to_dict(t.loop)}
    if t.name:
        data["name"] = t.name
    origin = _provenance(t)
    if isinstance(origin, list):
        data["composed_of"] = origin
    return data


def task_from_dict(data: Any) -> LoopTask:
    """Task from JSON.

    π₁ is certified abelian only when the task rebuilds exactly: a catalog
    task under its own name, or the composition named by `composed_of`.
    """
    output = complex_from_dict(_field(data, "complex", dict))
    loop = loop_from_dict(_field(data, "loop", dict), output)
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("task name should be a string")
    t = LoopTask(output, loop, name)
    if "composed_of" in data:
        try:
            rebuilt = _rebuild(data["composed_of"])
        except UnknownTask as exc:
            raise ParseError(f"'composed_of': {exc}") from exc
        if rebuilt == t:
            return LoopTask(output, loop, name, factors=rebuilt.factors,
                            abelian=rebuilt.abelian)
        logger.warning("%s does not match its 'composed_of'; not certified",
                       t.label)
    elif name in CATALOG and catalog(name) == t:
        return LoopTask(output, loop, name, abelian=True)
    return t


def load_task(ref: str) -> LoopTask:
    """`@name` for a catalog task, otherwise a JSON file path."""
    if ref.startswith(CATALOG_PREFIX):
        return catalog(ref[len(CATALOG_PREFIX):])
    t = task_from_dict(read_json(ref))
    if t.name is None:
        t = LoopTask(t.output, t.loop, os.path.basename(ref),
                     factors=t.factors, abelian=t.abelian)
    return t


def load_complex(path: str) -> Complex:
    return complex_from_dict(read_json(path))


# ---------------------------------------------------------------------------
# Decision maps
# ---------------------------------------------------------------------------

def decision_map_to_dict(d: DecisionMap) -> Dict[str, Any]:
    return {"N": d.n, "assignment": dict(sorted(d.assignment.items()))}


def decision_map_from_dict(data: Any, base: Complex,
                           target: Complex) -> DecisionMap:
    """Decision map from Bary^N(base) to target.

    The source is rebuilt from `base`; the file only stores N and the
    vertex assignment.
    """
    n = _field(data, "N", int)
    if isinstance(n, bool) or n < 0:
        raise ParseError("'N' should be a nonnegative integer")
    raw = _field(data, "assignment", dict)
    if not all(isinstance(v, str) for v in raw.values()):
        raise ParseError("assignment values should be vertex ids")
    source = barycentric_power(base, n)
    extra = sorted(set(raw) - set(source.vertices))
    if extra:
        raise SourceMismatch(f"assignment names vertices outside "
                             f"Bary^{n} of the source: {extra[:5]}")
    unknown = sorted(set(raw.values()) - set(target.vertices))
    if unknown:
        raise ParseError(f"assignment targets unknown vertices {unknown[:5]}")
    return DecisionMap(n, SimplicialMap(source, target, dict(raw)))


def load_decision_map(path: str, base: Complex,
                      target: Complex) -> DecisionMap:
    return decision_map_from_dict(read_json(path), base, target)
