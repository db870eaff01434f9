"""Library constants and the built-in task catalog."""

from typing import Dict, Tuple

# ---------------------------------------------------------------------------
# Naming rules for constructed vertices
# ---------------------------------------------------------------------------
# Product vertices are `<left>|<right>`; barycenters are `{a,b,c}`. Characters
# with structural meaning in an id are escaped with a backslash.
ESCAPE = "\\"
PAIR_SEPARATOR = "|"
BARY_OPEN = "{"
BARY_CLOSE = "}"
BARY_SEPARATOR = ","

PAIR_SPECIALS = frozenset({ESCAPE, PAIR_SEPARATOR})
BARY_SPECIALS = frozenset({ESCAPE, BARY_OPEN, BARY_CLOSE, BARY_SEPARATOR})

# ---------------------------------------------------------------------------
# Size advisories
# ---------------------------------------------------------------------------
# Products and subdivisions blow up quickly. Nothing is refused above these
# bounds; the library only logs a warning.
MAX_ADVISED_VERTICES = 50
MAX_ADVISED_SUBDIVISION = 2

# Loop agreement outputs are at most 2-dimensional.
MAX_TASK_DIMENSION = 2

# ---------------------------------------------------------------------------
# Input complex: the standard 2-simplex on processes 0, 1, 2
# ---------------------------------------------------------------------------
INPUT_SIMPLEXES: Tuple[Tuple[int, ...], ...] = (
    (0,), (1,), (2,),
    (0, 1), (0, 2), (1, 2),
    (0, 1, 2),
)

# Which path of the triangle loop an input edge is carried to. {0,2} uses
# p20; containment is undirected so orientation does not matter.
EDGE_PATHS: Dict[Tuple[int, int], str] = {
    (0, 1): "p01",
    (1, 2): "p12",
    (0, 2): "p20",
}

# ---------------------------------------------------------------------------
# Built-in catalog
# ---------------------------------------------------------------------------
# Each entry: maximal simplexes of the output complex and the triangle loop as
# (designated vertices, p01, p12, p20).

SET_AGREEMENT = "set-agreement"
SIMPLEX_AGREEMENT = "simplex-agreement"
TORUS = "torus"
PROJECTIVE_PLANE = "projective-plane"
POINT = "point"

_ZETA = (("0", "1", "2"), ("0", "1"), ("1", "2"), ("2", "0"))

# 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7. The loop
# 0 -> 3 -> 6 -> 0 is a primitive lattice direction, i.e. a meridian.
_TORUS_TRIANGLES = tuple(
    tri
    for i in range(7)
    for tri in (
        (str(i), str((i + 1) % 7), str((i + 3) % 7)),
        (str(i), str((i + 2) % 7), str((i + 3) % 7)),
    )
)

# 6-vertex projective plane (hemi-icosahedron). 1-2-5 is not a face, so it
# lifts to an open path on the icosahedron and is essential.
_RP2_TRIANGLES = (
    ("1", "2", "3"), ("1", "2", "4"), ("1", "3", "5"), ("1", "4", "6"),
    ("1", "5", "6"), ("2", "3", "6"), ("2", "4", "5"), ("2", "5", "6"),
    ("3", "4", "5"), ("3", "4", "6"),
)

CATALOG = {
    SET_AGREEMENT: {
        "simplexes": (("0", "1"), ("1", "2"), ("0", "2")),
        "loop": _ZETA,
    },
    SIMPLEX_AGREEMENT: {
        "simplexes": (("0", "1", "2"),),
        "loop": _ZETA,
    },
    TORUS: {
        "simplexes": _TORUS_TRIANGLES,
        "loop": (("0", "3", "6"), ("0", "3"), ("3", "6"), ("6", "0")),
    },
    PROJECTIVE_PLANE: {
        "simplexes": _RP2_TRIANGLES,
        "loop": (("1", "2", "5"), ("1", "2"), ("2", "5"), ("5", "1")),
    },
    POINT: {
        "simplexes": (("0",),),
        "loop": (("0", "0", "0"), ("0",), ("0",), ("0",)),
    },
}

CATALOG_NAMES = tuple(CATALOG)

# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3

CATALOG_PREFIX = "@"
LOG_FORMAT = "%(name)s:%(levelname)s:%(message)s"
