"""The axiomatic systems CL and QL: schema matching, derivation checking and
soundness suites over finite lattices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from .checker import CheckResult, check_consequence, check_validity
from .errors import (
    BadHypothesisIndex,
    BadMP,
    FormatError,
    NotAnAxiomInstance,
    TermSyntaxError,
    UnknownAxiom,
)
from .lattice import FiniteOrtholattice
from .terms import (
    Impl,
    Not,
    Or,
    Term,
    Var,
    expand,
    parse_schema,
    parse_wff,
    rename,
    subterms,
    substitute,
    to_text,
    to_unicode,
    variables,
)

METAVARS = ("A", "B", "C")

# rule of inference per system: the implication R1 detaches
RULE_KIND = {"CL": "c", "QL": "3"}


@dataclass(frozen=True)
class AxiomSchema:
    name: str
    pattern: Term
    text: str

    @property
    def system(self) -> str:
        return self.name.split(".", 1)[0]


def _schemas(system: str, rows: Sequence[tuple[str, str]]) -> dict[str, AxiomSchema]:
    out = {}
    for label, text in rows:
        name = f"{system}.{label}"
        out[name] = AxiomSchema(name, parse_schema(text), text)
    return out


CL_AXIOMS = _schemas(
    "CL",
    [
        ("A1", "A v A ->c A"),
        ("A2", "A ->c B v A"),
        ("A3", "B v A ->c A v B"),
        ("A4", "(A ->c B) ->c (C v A ->c C v B)"),
    ],
)

# QL numbering starts at A2 and skips A11
QL_AXIOMS = _schemas(
    "QL",
    [
        ("A2", "A ==q B ->c (B ==q C ->c A ==q C)"),
        ("A3", "A ==q B ->c ~A ==q ~B"),
        ("A4", "A ==q B ->c A ^ C ==q B ^ C"),
        ("A5", "A ^ B ==q B ^ A"),
        ("A6", "A ^ (B ^ C) ==q (A ^ B) ^ C"),
        ("A7", "A ^ (A v B) ==q A"),
        ("A8", "~A ^ A ==q (~A ^ A) ^ B"),
        ("A9", "A ==q ~~A"),
        ("A10", "~(A v B) ==q ~A ^ ~B"),
        ("A12", "(A ==q B) ==q (B ==q A)"),
        ("A13", "A ==q B ->c (A ->c B)"),
        ("A14", "(A ->c B) ->3 (A ->3 (A ->3 B))"),
    ],
)

AXIOMS = {"CL": CL_AXIOMS, "QL": QL_AXIOMS}


def axiom(name: str, system: str | None = None) -> AxiomSchema:
    """Look up ``CL.A1`` style names; a bare ``A9`` needs ``system``."""
    if "." not in name and system:
        name = f"{system}.{name}"
    sys_ = name.split(".", 1)[0]
    try:
        return AXIOMS[sys_][name]
    except KeyError:
        raise UnknownAxiom(f"{name} is not an axiom") from None


# --- schema matching -------------------------------------------------------------


def _match(p: Term, w: Term, sigma: dict[str, Term]) -> bool:
    if isinstance(p, Var) and p.name in METAVARS:
        bound = sigma.get(p.name)
        if bound is None:
            sigma[p.name] = w
            return True
        return bound == w
    if type(p) is not type(w):
        return False
    if isinstance(p, Var):
        return p == w
    if isinstance(p, Not):
        return _match(p.arg, w.arg, sigma)
    if isinstance(p, Or):
        return _match(p.left, w.left, sigma) and _match(p.right, w.right, sigma)
    return False


def match_schema(schema: AxiomSchema, w: Term) -> dict[str, Term] | None:
    """Substitution ``σ`` with ``expand(σ(pattern)) == expand(w)``, or None.

    Matching runs on the ``~``/``v`` normal forms, so ``~p0 v p1`` is an
    instance of ``A ->c B``.  Bindings are reported in ``w``'s own spelling
    when some subformula of ``w`` expands to the bound normal form.
    """
    sigma: dict[str, Term] = {}
    if not _match(expand(schema.pattern, wff=True), expand(w, wff=True), sigma):
        return None
    spelled = {}
    for sub in subterms(w):
        spelled.setdefault(expand(sub, wff=True), sub)
    return {k: spelled.get(v, v) for k, v in sorted(sigma.items())}


def instantiate(schema: AxiomSchema, sigma: dict[str, Term]) -> Term:
    return substitute(schema.pattern, sigma)


def fresh_instance(schema: AxiomSchema) -> Term:
    """The schema with ``A, B, C`` replaced by ``p0, p1, p2``."""
    return instantiate(schema, {m: Var(f"p{i}") for i, m in enumerate(METAVARS)})


# --- derivations -------------------------------------------------------------------


@dataclass(frozen=True)
class Hypothesis:
    index: int


@dataclass(frozen=True)
class Axiom:
    name: str


@dataclass(frozen=True)
class MP:
    """Modus ponens from line ``minor`` (A) and line ``major`` (A -> B), 1-based."""

    minor: int
    major: int


Justification = Union[Hypothesis, Axiom, MP]


@dataclass(frozen=True)
class Line:
    wff: Term
    why: Justification


@dataclass
class Derivation:
    system: str
    hypotheses: list[Term] = field(default_factory=list)
    lines: list[Line] = field(default_factory=list)

    @property
    def conclusion(self) -> Term | None:
        return self.lines[-1].wff if self.lines else None


@dataclass(frozen=True)
class Verified:
    system: str
    hypotheses: tuple[Term, ...]
    conclusion: Term

    def __str__(self):
        gamma = ", ".join(to_unicode(h, False) for h in self.hypotheses)
        return f"{gamma} ⊢{self.system} {to_unicode(self.conclusion, False)}".strip()


def _same(a: Term, b: Term) -> bool:
    return a == b or expand(a, wff=True) == expand(b, wff=True)


def _check_mp(d: Derivation, k: int, step: MP, wff: Term):
    kind = RULE_KIND[d.system]
    arrow = "->c" if kind == "c" else "->3"
    for ref in (step.minor, step.major):
        if not 1 <= ref < k:
            raise BadMP(f"mp cites line {ref}, which is not an earlier line", k)
    minor = d.lines[step.minor - 1].wff
    major = d.lines[step.major - 1].wff
    if _same(major, Impl(kind, minor, wff)):
        return
    if not isinstance(major, Impl):
        raise BadMP(f"line {step.major} is not an implication; {d.system} detaches {arrow}", k)
    if major.kind != kind:
        raise BadMP(
            f"line {step.major} is a ->{major.kind} implication but {d.system} detaches {arrow}", k
        )
    if not _same(major.left, minor):
        raise BadMP(f"antecedent of line {step.major} is not line {step.minor}", k)
    raise BadMP(f"consequent of line {step.major} is not this line's formula", k)


def verify_derivation(d: Derivation) -> Verified:
    """Check every line; raise a :class:`DerivationError` subclass at the first
    bad one, else return the verified judgement ``Γ ⊢ last line``."""
    if d.system not in AXIOMS:
        raise ValueError(f"unknown system {d.system!r}")
    if not d.lines:
        raise BadMP("derivation has no lines")
    for k, line in enumerate(d.lines, 1):
        why = line.why
        if isinstance(why, Hypothesis):
            if not 0 <= why.index < len(d.hypotheses):
                raise BadHypothesisIndex(f"no hypothesis number {why.index}", k)
            if not _same(d.hypotheses[why.index], line.wff):
                raise BadHypothesisIndex(f"hypothesis {why.index} is not this line's formula", k)
        elif isinstance(why, Axiom):
            try:
                schema = axiom(why.name, d.system)
            except UnknownAxiom:
                raise UnknownAxiom(f"{why.name} is not an axiom of {d.system}", k) from None
            if schema.system != d.system:
                raise UnknownAxiom(f"{schema.name} is not an axiom of {d.system}", k)
            if match_schema(schema, line.wff) is None:
                raise NotAnAxiomInstance(f"formula is not an instance of {schema.name}", k)
        elif isinstance(why, MP):
            _check_mp(d, k, why, line.wff)
        else:
            raise TypeError(f"unknown justification {why!r}")
    return Verified(d.system, tuple(d.hypotheses), d.conclusion)


def parse_derivation(text: str) -> Derivation:
    """Parse derivation-file text.

    ::

        system QL
        hyp 1 p0                 # line 1, also hypothesis 0
        hyp 2 p0 ->3 p1          # line 2, also hypothesis 1
        line 3 mp 1 2 p1         # from line 1 (A) and line 2 (A ->3 B)
        line 4 axiom A9 p1 ==q ~~p1
        line 5 hyp 0 p0          # cite hypothesis 0 again

    Line numbers must run 1, 2, 3, ... in file order.
    """
    system = None
    d = None
    expected = 1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        word, rest = parts[0], (parts[1] if len(parts) > 1 else "")
        if word == "system":
            if d is not None:
                raise FormatError("second 'system' line", lineno)
            system = rest.strip()
            if system not in AXIOMS:
                raise FormatError(f"unknown system {system!r}; use CL or QL", lineno)
            d = Derivation(system)
            continue
        if d is None:
            raise FormatError("derivation must start with 'system CL' or 'system QL'", lineno)

        def number(tok):
            try:
                return int(tok)
            except ValueError:
                raise FormatError(f"expected a number, got {tok!r}", lineno) from None

        def formula(txt):
            try:
                return parse_wff(txt)
            except TermSyntaxError as exc:
                raise FormatError(str(exc), lineno) from exc

        if word == "hyp":
            k, _, body = rest.partition(" ")
            if number(k) != expected:
                raise FormatError(f"expected line number {expected}", lineno)
            w = formula(body)
            d.hypotheses.append(w)
            d.lines.append(Line(w, Hypothesis(len(d.hypotheses) - 1)))
        elif word == "line":
            toks = rest.split(None, 2)
            if len(toks) < 3:
                raise FormatError("line needs: <k> <hyp|axiom|mp> ...", lineno)
            k, how, body = toks
            if number(k) != expected:
                raise FormatError(f"expected line number {expected}", lineno)
            if how == "axiom":
                name, _, body = body.partition(" ")
                d.lines.append(Line(formula(body), Axiom(name)))
            elif how == "hyp":
                i, _, body = body.partition(" ")
                d.lines.append(Line(formula(body), Hypothesis(number(i))))
            elif how == "mp":
                bits = body.split(None, 2)
                if len(bits) < 3:
                    raise FormatError("mp needs: <i> <j> <wff>", lineno)
                d.lines.append(Line(formula(bits[2]), MP(number(bits[0]), number(bits[1]))))
            else:
                raise FormatError(f"unknown justification {how!r}", lineno)
        else:
            raise FormatError(f"unknown directive {word!r}", lineno)
        expected += 1
    if d is None:
        raise FormatError("empty derivation")
    return d


def format_derivation(d: Derivation) -> str:
    out = [f"system {d.system}"]
    for k, line in enumerate(d.lines, 1):
        why, w = line.why, to_text(line.wff)
        if isinstance(why, Hypothesis):
            out.append(f"line {k} hyp {why.index} {w}")
        elif isinstance(why, Axiom):
            out.append(f"line {k} axiom {why.name} {w}")
        else:
            out.append(f"line {k} mp {why.minor} {why.major} {w}")
    return "\n".join(out) + "\n"


# --- semantics -----------------------------------------------------------------------


def translate(A: Term) -> Term:
    """Lattice term of a wff: ``p_k`` becomes ``a_k``; connectives map to their
    lattice counterparts node for node."""
    return rename(A, {v: "a" + v[1:] for v in variables(A)})


@dataclass
class SoundnessReport:
    system: str
    lattice: FiniteOrtholattice
    axioms: dict[str, CheckResult]
    rule: CheckResult

    @property
    def passed(self) -> bool:
        return self.rule.passed and all(r.passed for r in self.axioms.values())

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "lattice": self.lattice.name,
            "status": "pass" if self.passed else "fail",
            "axioms": {k: r.to_dict() for k, r in self.axioms.items()},
            "rule": self.rule.to_dict(),
        }


def rule_instance(system: str) -> tuple[list[Term], Term]:
    """Premises ``p0, p0 -> p1`` and conclusion ``p1`` of R1."""
    p0, p1 = Var("p0"), Var("p1")
    return [p0, Impl(RULE_KIND[system], p0, p1)], p1


def soundness_suite(system: str, L: FiniteOrtholattice, *, jobs: int = 1) -> SoundnessReport:
    """Validity of every axiom of ``system`` on ``L`` and preservation of
    truth by its rule R1."""
    results = {}
    for name, schema in AXIOMS[system].items():
        results[name] = check_validity(L, fresh_instance(schema), name=name, jobs=jobs)
    gamma, concl = rule_instance(system)
    rule = check_consequence(L, gamma, concl, name=f"{system}.R1", jobs=jobs)
    return SoundnessReport(system, L, results, rule)
