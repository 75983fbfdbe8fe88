"""The weak-orthomodularity table over O6, O7 and O8.

Each condition is measured under the ``==q`` reading, the ``==c`` reading and
the Horn reading ``t = 1 => s = 1`` where those apply, and compared with the
claimed pass/fail pattern.  It is treated as something to re-measure:
disagreements are reported, never corrected.

Every row is also run through a subalgebra-closure meta-check.  Universal
Horn sentences (identities included) are inherited by subalgebras, so a row
passing on O7 or O8 must pass on the O6 copy found inside it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .builtin_lattices import builtin
from .checker import CheckResult, check_condition
from .lattice import FiniteOrtholattice, find_o6_subalgebra, subalgebra
from .terms import reading_of

LATTICES = ("O6", "O7", "O8")
READINGS = ("q", "c", "horn")

# claimed outcome on (O6, O7, O8)
CLAIMED = {
    "WOM_horn1": ("pass", "pass", "pass"),
    "WOM_horn2": ("pass", "pass", "pass"),
    "WOML1_id": ("fail", "pass", "pass"),
    "WOML2_id": ("fail", "fail", "pass"),
    "OM_horn": ("fail", "fail", "fail"),
    "OM_unit": ("pass", "pass", "pass"),
}

# rows whose outcome is independently verified and may be asserted outright
VERIFIED = ("WOM_horn1", "WOM_horn2", "OM_horn", "OM_unit")


@dataclass
class ClosureCheck:
    parent: str
    subalgebra: tuple[str, ...]
    parent_status: str
    sub_status: str

    @property
    def holds(self) -> bool:
        return self.parent_status == "fail" or self.sub_status == "pass"

    def to_dict(self) -> dict:
        return {
            "parent": self.parent,
            "subalgebra": list(self.subalgebra),
            "parent_status": self.parent_status,
            "sub_status": self.sub_status,
            "holds": self.holds,
        }


@dataclass
class TableRow:
    condition: str
    reading: str
    checked: str
    results: dict[str, CheckResult]
    closure: list[ClosureCheck]

    @property
    def claimed(self) -> tuple[str, ...]:
        return CLAIMED[self.condition]

    def status(self, lattice: str) -> str:
        return self.results[lattice].status

    def agrees(self, lattice: str) -> bool:
        return self.status(lattice) == self.claimed[LATTICES.index(lattice)]

    @property
    def divergent(self) -> list[str]:
        return [name for name in LATTICES if not self.agrees(name)]

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "reading": self.reading,
            "checked": self.checked,
            "computed": {k: r.status for k, r in self.results.items()},
            "claimed": dict(zip(LATTICES, self.claimed)),
            "divergent": self.divergent,
            "witness": {k: r.witness_labels() for k, r in self.results.items() if not r.passed},
            "closure": [c.to_dict() for c in self.closure],
        }


@dataclass
class WomlTable:
    rows: list[TableRow]
    subalgebras: dict[str, tuple[str, ...]]

    @property
    def closure_holds(self) -> bool:
        return all(c.holds for row in self.rows for c in row.closure)

    @property
    def divergences(self) -> list[tuple[str, str, str]]:
        return [(r.condition, r.reading, name) for r in self.rows for name in r.divergent]

    def row(self, condition: str, reading: str = "q") -> TableRow:
        for r in self.rows:
            if r.condition == condition and r.reading == reading:
                return r
        raise KeyError((condition, reading))

    def to_dict(self) -> dict:
        return {
            "lattices": list(LATTICES),
            "subalgebras": {k: list(v) for k, v in self.subalgebras.items()},
            "rows": [r.to_dict() for r in self.rows],
            "closure_holds": self.closure_holds,
            "claims_consistent": claims_consistent(),
            "divergences": [list(d) for d in self.divergences],
        }


def claims_consistent() -> dict[str, bool]:
    """Whether each claimed pattern is possible at all: O6 sits inside O7
    and O8, so passing either of them while failing O6 cannot happen."""
    return {c: not (o6 == "fail" and "pass" in (o7, o8)) for c, (o6, o7, o8) in CLAIMED.items()}


def _o6_inside(L: FiniteOrtholattice) -> FiniteOrtholattice | None:
    found = find_o6_subalgebra(L)
    if found is None:
        return None
    return subalgebra(L, found, name=f"O6<{L.name}")


def woml_table(*, jobs: int = 1) -> WomlTable:
    lattices = {name: builtin(name) for name in LATTICES}
    subs = {name: _o6_inside(lattices[name]) for name in ("O7", "O8")}
    rows = []
    for cond in CLAIMED:
        for reading in READINGS:
            checked = reading_of(cond, reading)
            if checked is None:
                continue
            results = {name: check_condition(L, checked, jobs=jobs) for name, L in lattices.items()}
            for r in results.values():
                r.reading = reading
            closure = []
            for parent, S in subs.items():
                if S is None:
                    continue
                closure.append(
                    ClosureCheck(parent, tuple(S.labels), results[parent].status, check_condition(S, checked).status)
                )
            rows.append(TableRow(cond, reading, checked, results, closure))
    return WomlTable(rows, {k: tuple(S.labels) for k, S in subs.items() if S is not None})


def render(table: WomlTable) -> str:
    """Plain-text report: computed next to claimed, divergences marked."""
    head = f"{'condition':<12} {'reading':<7} " + " ".join(f"{n:<11}" for n in LATTICES) + " closure"
    out = [head, "-" * len(head)]
    for r in table.rows:
        cells = []
        for name in LATTICES:
            mark = "" if r.agrees(name) else "!"
            cells.append(f"{r.status(name)}/{r.claimed[LATTICES.index(name)]}{mark}".ljust(11))
        closure = "ok" if all(c.holds for c in r.closure) else "BROKEN"
        out.append(f"{r.condition:<12} {r.reading:<7} " + " ".join(cells) + " " + closure)
    out.append("")
    out.append("cells read computed/claimed; '!' marks a divergence")
    for k, labels in table.subalgebras.items():
        out.append(f"O6 inside {k}: {{{', '.join(labels)}}}")
    bad = [c for c, ok in claims_consistent().items() if not ok]
    if bad:
        out.append("claimed pattern impossible under subalgebra closure: " + ", ".join(bad))
    out.append(f"subalgebra closure on computed rows: {'holds' if table.closure_holds else 'BROKEN'}")
    if table.divergences:
        out.append(f"{len(table.divergences)} divergent cells:")
        for cond, reading, name in table.divergences:
            row = table.row(cond, reading)
            res = row.results[name]
            w = " ".join(f"{k}={v}" for k, v in res.witness_labels().items())
            out.append(f"  {cond} [{reading}] on {name}: computed {res.status}" + (f" at {w}" if w else ""))
    return "\n".join(out)
