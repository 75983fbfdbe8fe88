"""Exhaustive-valuation checking of identities and Horn conditions.

Valuations are enumerated in lexicographic order of element indices, the
first declared variable being the most significant digit.  Terms are
evaluated for a whole block of valuations at once by indexing the lattice's
numpy tables, so the first failing valuation is simply the smallest failing
position.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, InternalInconsistency, TooManyVariables, UnboundVariable
from .lattice import FiniteOrtholattice, find_o6_subalgebra
from .terms import (
    ONE,
    And,
    Const,
    Equiv,
    HornCondition,
    Impl,
    Not,
    Or,
    Term,
    Var,
    builtin_condition,
    natural_key,
    to_unicode,
    variables,
)

DEFAULT_BUDGET = 10**8
CHUNK = 1 << 16

Valuation = dict  # variable name -> element index


# --- evaluation ----------------------------------------------------------------


def _ev(t: Term, L: FiniteOrtholattice, env, cache: dict):
    if t in cache:
        return cache[t]
    o, m, j = L.ortho, L.meet, L.join
    if isinstance(t, Var):
        try:
            r = env[t.name]
        except KeyError:
            raise UnboundVariable(f"no value for variable {t.name}") from None
    elif isinstance(t, Const):
        r = L.top if t.value else L.bottom
    elif isinstance(t, Not):
        r = o[_ev(t.arg, L, env, cache)]
    else:
        a = _ev(t.left, L, env, cache)
        b = _ev(t.right, L, env, cache)
        if isinstance(t, Or):
            r = j[a, b]
        elif isinstance(t, And):
            r = m[a, b]
        elif isinstance(t, Impl):
            r = _impl(t.kind, a, b, o, m, j)
        elif t.kind == "q":
            r = j[m[a, b], m[o[a], o[b]]]
        else:
            r = m[j[o[a], b], j[o[b], a]]
    cache[t] = r
    return r


def _impl(kind, a, b, o, m, j):
    if kind == "c":
        return j[o[a], b]
    if kind == "1":
        return j[o[a], m[a, b]]
    if kind == "2":
        return _impl("1", o[b], o[a], o, m, j)
    if kind == "3":
        return j[j[m[o[a], o[b]], m[o[a], b]], m[a, j[o[a], b]]]
    if kind == "4":
        return _impl("3", o[b], o[a], o, m, j)
    if kind == "5":
        return j[j[m[a, b], m[o[a], b]], m[o[a], o[b]]]
    raise ValueError(f"unknown implication ->{kind}")


def evaluate(t: Term, L: FiniteOrtholattice, valuation: Valuation) -> int:
    """Value of ``t`` in ``L`` under ``valuation`` (variable name -> element index)."""
    return int(_ev(t, L, valuation, {}))


def evaluate_many(t: Term, L: FiniteOrtholattice, env: dict[str, np.ndarray]) -> np.ndarray:
    """Vectorised :func:`evaluate`: ``env`` maps names to index arrays."""
    r = _ev(t, L, env, {})
    if np.ndim(r) == 0:
        size = max((np.size(v) for v in env.values()), default=1)
        return np.full(size, int(r), dtype=np.int64)
    return r


def enumerate_valuations(L: FiniteOrtholattice, k: int) -> Iterator[tuple[int, ...]]:
    """All ``|L|**k`` tuples of element indices in lexicographic order."""
    return itertools.product(range(L.n), repeat=k)


def _decode(start: int, stop: int, n: int, k: int) -> list[np.ndarray]:
    idx = np.arange(start, stop, dtype=np.int64)
    cols = []
    for pos in range(k):
        cols.append((idx // n ** (k - 1 - pos)) % n)
    return cols


# --- results ---------------------------------------------------------------------


@dataclass
class CheckResult:
    """Outcome of one exhaustive scan.

    ``witness`` is the first failing valuation and ``values`` the evaluated
    sides at that valuation; both are empty on a pass.
    """

    lattice: FiniteOrtholattice
    condition: str
    status: str
    scanned: int
    witness: dict[str, int] = field(default_factory=dict)
    values: dict[str, int] = field(default_factory=dict)
    reading: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def __bool__(self):
        return self.passed

    def witness_labels(self) -> dict[str, str]:
        return {v: self.lattice.label(e) for v, e in self.witness.items()}

    def value_labels(self) -> dict[str, str]:
        return {k: self.lattice.label(e) for k, e in self.values.items()}

    def to_dict(self) -> dict:
        return {
            "lattice": self.lattice.name,
            "condition": self.condition,
            "reading": self.reading,
            "status": self.status,
            "scanned": self.scanned,
            "witness": self.witness_labels(),
            "values": self.value_labels(),
        }

    def describe(self) -> str:
        head = f"{self.condition} on {self.lattice.name}: {self.status} ({self.scanned} valuations)"
        if self.passed:
            return head
        w = " ".join(f"{k}={v}" for k, v in self.witness_labels().items())
        vals = ", ".join(f"{k}={v}" for k, v in self.value_labels().items())
        return f"{head}\n  witness: {w}\n  values:  {vals}"


# --- scanning ------------------------------------------------------------------


def _first_failure(
    L: FiniteOrtholattice,
    vars: Sequence[str],
    premises: Sequence[tuple[Term, Term]],
    conclusion: tuple[Term, Term],
    start: int,
    stop: int,
) -> int | None:
    cols = _decode(start, stop, L.n, len(vars))
    pos = np.arange(stop - start)
    env = dict(zip(vars, cols))
    for lhs, rhs in premises:
        if pos.size == 0:
            return None
        # premises filter in declaration order; later sides see survivors only
        ok = evaluate_many(lhs, L, env) == evaluate_many(rhs, L, env)
        pos = pos[ok]
        env = {v: c[ok] for v, c in env.items()}
    if pos.size == 0:
        return None
    bad = evaluate_many(conclusion[0], L, env) != evaluate_many(conclusion[1], L, env)
    if not bad.any():
        return None
    return start + int(pos[np.argmax(bad)])


def scan(
    L: FiniteOrtholattice,
    vars: Sequence[str],
    premises: Sequence[tuple[Term, Term]],
    conclusion: tuple[Term, Term],
    *,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    chunk: int = CHUNK,
) -> tuple[int | None, int]:
    """Index of the first valuation violating the condition, and the total.

    With ``jobs > 1`` blocks are checked concurrently and the least failing
    index over all blocks is returned, so the answer never depends on ``jobs``.
    """
    total = L.n ** len(vars)
    if total > budget:
        raise BudgetExceeded(f"{total} valuations exceed the budget of {budget}")
    blocks = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    if jobs <= 1 or len(blocks) == 1:
        for s, e in blocks:
            hit = _first_failure(L, vars, premises, conclusion, s, e)
            if hit is not None:
                return hit, total
        return None, total
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        hits = pool.map(lambda b: _first_failure(L, vars, premises, conclusion, *b), blocks)
        found = [h for h in hits if h is not None]
    return (min(found) if found else None), total


def _valuation_at(index: int, vars: Sequence[str], n: int) -> dict[str, int]:
    k = len(vars)
    return {v: (index // n ** (k - 1 - i)) % n for i, v in enumerate(vars)}


def check_horn(
    L: FiniteOrtholattice,
    cond: HornCondition,
    *,
    reading: str | None = None,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> CheckResult:
    """Every valuation satisfying all premises must satisfy the conclusion."""
    hit, total = scan(L, cond.vars, cond.premises, cond.conclusion, budget=budget, jobs=jobs)
    if hit is None:
        return CheckResult(L, cond.name, "pass", total, reading=reading)
    w = _valuation_at(hit, cond.vars, L.n)
    values = {}
    for i, (lhs, rhs) in enumerate(cond.premises, 1):
        values[f"premise{i}.lhs"] = evaluate(lhs, L, w)
        values[f"premise{i}.rhs"] = evaluate(rhs, L, w)
    if cond.premises:
        values["conclusion.lhs"] = evaluate(cond.conclusion[0], L, w)
        values["conclusion.rhs"] = evaluate(cond.conclusion[1], L, w)
    else:
        values["lhs"] = evaluate(cond.conclusion[0], L, w)
        values["rhs"] = evaluate(cond.conclusion[1], L, w)
    return CheckResult(L, cond.name, "fail", hit + 1, w, values, reading=reading)


def check_identity(
    L: FiniteOrtholattice,
    lhs: Term,
    rhs: Term,
    *,
    vars: Sequence[str] | None = None,
    name: str | None = None,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> CheckResult:
    """``lhs = rhs`` under every valuation of ``vars`` (default: all variables
    of both sides in natural order)."""
    if vars is None:
        vars = sorted(set(variables(lhs)) | set(variables(rhs)), key=natural_key)
    name = name or f"{to_unicode(lhs, True)} = {to_unicode(rhs, True)}"
    return check_horn(L, HornCondition(name, tuple(vars), (), (lhs, rhs)), budget=budget, jobs=jobs)


def check_condition(L: FiniteOrtholattice, name: str, **kw) -> CheckResult:
    return check_horn(L, builtin_condition(name), **kw)


# --- validity and consequence for wffs ----------------------------------------------


def _to_lattice(A: Term) -> tuple[Term, dict[str, str]]:
    from .logic import translate  # translate lives with the logics

    t = translate(A)
    back = {f"a{v[1:]}": v for v in variables(A)}
    return t, back


def check_consequence(
    L: FiniteOrtholattice,
    gamma: Iterable[Term],
    A: Term,
    *,
    name: str | None = None,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> CheckResult:
    """``h(X) = 1`` for every ``X`` in ``gamma`` implies ``h(A) = 1``."""
    gamma = list(gamma)
    t, back = _to_lattice(A)
    prem = []
    for X in gamma:
        tx, bx = _to_lattice(X)
        back.update(bx)
        prem.append((tx, ONE))
    vars = sorted(back, key=natural_key)
    if name is None:
        name = to_unicode(A, False)
        if gamma:
            name = ", ".join(to_unicode(X, False) for X in gamma) + " ⊨ " + name
    cond = HornCondition(name, tuple(vars), tuple(prem), (t, ONE))
    res = check_horn(L, cond, budget=budget, jobs=jobs)
    res.witness = {back[v]: e for v, e in res.witness.items()}
    if not gamma and res.values:
        res.values = {"value": res.values["lhs"]}
    return res


def check_validity(L: FiniteOrtholattice, A: Term, **kw) -> CheckResult:
    """``h(A) = 1`` for every valuation ``h``."""
    return check_consequence(L, [], A, **kw)


# --- classification ------------------------------------------------------------------

FLAG_ORDER = ("OL", "WOML", "WOML1", "WOML2", "OML", "WDL", "DL", "WOML*", "WOML1*", "WOML2*", "WDL*")
PROFILE_CONDITIONS = (
    "OL1", "OL2", "OL3", "OL4", "OL5", "OL6",
    "WOM_horn1", "WOM_horn2", "WOML1_id", "WOML2_id",
    "OM_horn", "OM_eq", "COMM", "WDIST", "DIST_horn", "DIST_eq",
)


@dataclass
class VarietyProfile:
    lattice: FiniteOrtholattice
    flags: dict[str, bool]
    witnesses: dict[str, CheckResult]
    checks: dict[str, CheckResult]

    def __getitem__(self, flag: str) -> bool:
        return self.flags[flag]

    def to_dict(self) -> dict:
        return {
            "lattice": self.lattice.name,
            "flags": dict(self.flags),
            "witnesses": {
                k: {"condition": r.condition, "witness": r.witness_labels(), "values": r.value_labels()}
                for k, r in self.witnesses.items()
            },
            "conditions": {k: r.status for k, r in self.checks.items()},
        }


def classify(L: FiniteOrtholattice, *, jobs: int = 1) -> VarietyProfile:
    """Variety flags of ``L``, starred classes included.

    OML is read from the orthomodularity Horn condition, DL from the
    distributive identity and WDL from commensurability; the equivalent
    alternatives are evaluated too and kept in ``checks``.  The OML witness
    comes from the equation form: both forms define the same class, but only
    a failing equation pins down the pair that generates the bad sublattice.
    """
    checks = {name: check_condition(L, name, jobs=jobs) for name in PROFILE_CONDITIONS}
    ok = {k: r.passed for k, r in checks.items()}
    ol_fail = next((checks[f"OL{i}"] for i in range(1, 7) if not ok[f"OL{i}"]), None)

    flags = {}
    flags["OL"] = ol_fail is None
    flags["WOML"] = flags["OL"] and ok["WOM_horn1"]
    flags["WOML1"] = flags["WOML"] and ok["WOML1_id"]
    flags["WOML2"] = flags["WOML1"] and ok["WOML2_id"]
    flags["OML"] = flags["OL"] and ok["OM_horn"]
    flags["WDL"] = flags["OL"] and ok["COMM"]
    flags["DL"] = flags["OL"] and ok["DIST_eq"]
    flags["WOML*"] = flags["WOML"] and not ok["OM_horn"] and not ok["WOML2_id"] and not ok["WOML1_id"]
    flags["WOML1*"] = flags["WOML1"] and not ok["OM_horn"] and not ok["WOML2_id"]
    flags["WOML2*"] = flags["WOML2"] and not ok["OM_horn"]
    flags["WDL*"] = flags["WDL"] and not ok["DIST_eq"]

    source = {
        "WOML": "WOM_horn1",
        "WOML1": "WOML1_id",
        "WOML2": "WOML2_id",
        "OML": "OM_eq",
        "WDL": "COMM",
        "DL": "DIST_eq",
    }
    witnesses = {}
    if ol_fail is not None:
        witnesses["OL"] = ol_fail
    for flag, cond in source.items():
        if not checks[cond].passed:
            witnesses[flag] = checks[cond]
    return VarietyProfile(L, flags, witnesses, checks)


# --- OML oracle and Holland cross-check ----------------------------------------------


def oml_counterexample(t: Term, s: Term) -> CheckResult | None:
    """A failing check of ``t = s`` in B2 or MO2, or None.

    The free orthomodular lattice on two generators is MO2 x 2^4, so a
    two-variable identity holds in every OML exactly when it holds in the
    two-element Boolean algebra and in MO2.
    """
    from .builtin_lattices import builtin

    names = sorted(set(variables(t)) | set(variables(s)), key=natural_key)
    if len(names) > 2:
        raise TooManyVariables(f"oml_equiv2 handles at most 2 variables, got {', '.join(names)}")
    for L in (builtin("B2"), builtin("MO2")):
        r = check_identity(L, t, s, vars=names)
        if not r.passed:
            return r
    return None


def oml_equiv2(t: Term, s: Term) -> bool:
    """Whether ``t = s`` holds in every orthomodular lattice (at most 2 variables)."""
    return oml_counterexample(t, s) is None


@dataclass
class HollandReport:
    lattice: FiniteOrtholattice
    om: CheckResult
    subalgebra: tuple[int, ...] | None

    @property
    def consistent(self) -> bool:
        return self.om.passed == (self.subalgebra is None)

    def subalgebra_labels(self) -> list[str] | None:
        if self.subalgebra is None:
            return None
        return [self.lattice.label(e) for e in self.subalgebra]

    def to_dict(self) -> dict:
        return {
            "lattice": self.lattice.name,
            "om_horn": self.om.status,
            "om_witness": self.om.witness_labels(),
            "o6_subalgebra": self.subalgebra_labels(),
            "consistent": self.consistent,
        }


def cross_validate_oml(L: FiniteOrtholattice) -> HollandReport:
    """Orthomodularity must pass exactly when no O6 subalgebra exists."""
    rep = HollandReport(L, check_condition(L, "OM_horn"), find_o6_subalgebra(L))
    if not rep.consistent:
        raise InternalInconsistency(
            f"{L.name}: OM_horn {rep.om.status} but O6 subalgebra {rep.subalgebra_labels()}; "
            f"OM witness {rep.om.witness_labels()}"
        )
    return rep
