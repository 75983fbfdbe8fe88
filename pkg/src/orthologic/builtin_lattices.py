"""Pinned data for the builtin lattices.

O7 and O8 are read off their Hasse diagrams: an edge drawn through an
intermediate node is recorded as a chain of covers.  The invariant checks in
``build_from_hasse`` guard the transcription.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from .errors import UnknownBuiltin
from .lattice import (
    FiniteOrtholattice,
    HasseSpec,
    SubsetFamilySpec,
    build_from_hasse,
    from_subset_family,
    parse_hasse_text,
)


def _pairs(text: str) -> tuple[tuple[str, str], ...]:
    return tuple(tuple(item.split()) for item in text.split(";") if item.strip())


O6 = HasseSpec(
    name="O6",
    elements=("0", "x", "x'", "y", "y'", "1"),
    covers=_pairs("0 x; 0 y'; x y; y' x'; y 1; x' 1"),
    ortho=_pairs("0 1; x x'; y y'"),
)

O7 = HasseSpec(
    name="O7",
    elements=("0", "x", "x'", "y", "y'", "z", "z'", "w", "w'", "1"),
    covers=_pairs(
        "0 x; 0 w; 0 z'; x y; y z; y w'; w z; w y'; z' y'; z' w'; y' x'; z 1; w' 1; x' 1"
    ),
    ortho=_pairs("0 1; x x'; y y'; z z'; w w'"),
)

# Left column w < z < y < x first, then the remaining atoms and coatoms
# bottom-up, so that the diagram's own reading gives index order.
O8 = HasseSpec(
    name="O8",
    elements=(
        "0", "w", "z", "y", "x",
        "v'", "x'", "u'", "y'", "r", "t", "s'", "t'", "r'", "s", "u", "z'", "v", "w'",
        "1",
    ),
    covers=_pairs(
        "0 w; 0 v'; 0 x';"
        " w z; w r; v' z; v' u'; x' y'; x' s';"
        " z y; z t; u' t; u' r'; s' t'; s' r'; y' z';"
        " t s; r s; r u; t' z'; t' u; r' w';"
        " y x; s x; u v; z' w'; z' v;"
        " x 1; v 1; w' 1"
    ),
    ortho=_pairs("0 1; x x'; y y'; z z'; w w'; u u'; v v'; r r'; s s'; t t'"),
)

MO2 = HasseSpec(
    name="MO2",
    elements=("0", "a", "a'", "b", "b'", "1"),
    covers=_pairs("0 a; 0 a'; 0 b; 0 b'; a 1; a' 1; b 1; b' 1"),
    ortho=_pairs("0 1; a a'; b b'"),
)

_ATOMS = "abcd"


def boolean_spec(k: int) -> SubsetFamilySpec:
    """Powerset of ``k`` atoms; element ``i`` is the subset with bitmask ``i``."""
    atoms = _ATOMS[:k]
    family = []
    labels = []
    for mask in range(2**k):
        s = frozenset(a for bit, a in enumerate(atoms) if mask >> bit & 1)
        family.append(s)
        if mask == 0:
            labels.append("0")
        elif mask == 2**k - 1:
            labels.append("1")
        else:
            labels.append("".join(a for a in atoms if a in s))
    return SubsetFamilySpec(f"B{2**k}", frozenset(atoms), tuple(family), tuple(labels))


HEXAGON = SubsetFamilySpec(
    name="hexagon",
    universe=frozenset({-1, 0, 1}),
    family=(
        frozenset(),
        frozenset({-1}),
        frozenset({-1, 0}),
        frozenset({1}),
        frozenset({0, 1}),
        frozenset({-1, 0, 1}),
    ),
)

BUILTIN_NAMES = ("O6", "O7", "O8", "B2", "B4", "B8", "B16", "MO2")


@lru_cache(maxsize=None)
def builtin(name: str) -> FiniteOrtholattice:
    """Return a builtin lattice by name (``O6``, ``O7``, ``O8``, ``B2`` ... ``B16``, ``MO2``)."""
    specs = {"O6": O6, "O7": O7, "O8": O8, "MO2": MO2}
    if name in specs:
        return build_from_hasse(specs[name])
    booleans = {"B2": 1, "B4": 2, "B8": 3, "B16": 4}
    if name in booleans:
        return from_subset_family(boolean_spec(booleans[name]))
    raise UnknownBuiltin(f"unknown builtin lattice {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def all_builtins() -> list[FiniteOrtholattice]:
    return [builtin(n) for n in BUILTIN_NAMES]


def load_lattice(ref: str) -> FiniteOrtholattice:
    """A builtin by name, ``hexagon`` for the subset-family copy of O6, else a
    lattice file by path."""
    if ref in BUILTIN_NAMES:
        return builtin(ref)
    if ref == "hexagon":
        return from_subset_family(HEXAGON)
    path = Path(ref)
    if not path.is_file():
        raise UnknownBuiltin(f"{ref!r} is neither a builtin lattice ({', '.join(BUILTIN_NAMES)}, hexagon) nor a file")
    return build_from_hasse(parse_hasse_text(path.read_text()))
