"""Formula and lattice-term syntax.

Wffs and lattice terms share one tree type.  Wffs use variables ``p0, p1, ...``
and no constants; lattice terms use arbitrary identifiers plus ``0`` and
``1``.  Derived connectives stay as nodes until :func:`expand` is called.

ASCII surface syntax, weakest to strongest binding::

    ->c ->0 ->1 ... ->5     implication (non-associative)
    ==q ==c                 equivalence (non-associative)
    v                       join / disjunction (left-assoc)
    ^                       meet / conjunction (left-assoc)
    ~x   x'                 negation / orthocomplement

The Unicode spellings ``→i ≡q ≡c ∨ ∪ ∧ ∩ ¬ ′`` are accepted as well.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import AmbiguousChain, FormatError, TermSyntaxError, UnknownCondition

IMPL_KINDS = ("c", "1", "2", "3", "4", "5")
EQUIV_KINDS = ("q", "c")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Not:
    arg: "Term"


@dataclass(frozen=True)
class Or:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class And:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Impl:
    """Implication ``->kind``; kind ``"c"`` is the classical ``->0``."""

    kind: str
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Equiv:
    kind: str
    left: "Term"
    right: "Term"


Term = Union[Var, Const, Not, Or, And, Impl, Equiv]
ZERO = Const(0)
ONE = Const(1)

_WFF_VAR = re.compile(r"p(0|[1-9][0-9]*)\Z")


def variables(t: Term) -> list[str]:
    """Variable names in natural order (``p2`` before ``p10``)."""
    names = set()
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, Var):
            names.add(x.name)
        elif isinstance(x, Not):
            stack.append(x.arg)
        elif not isinstance(x, Const):
            stack.extend((x.left, x.right))
    return sorted(names, key=natural_key)


def natural_key(name: str):
    m = re.match(r"(.*?)(\d*)\Z", name)
    head, digits = m.group(1), m.group(2)
    return (head, int(digits) if digits else -1, name)


def is_wff(t: Term) -> bool:
    """True when ``t`` only uses ``p<k>`` variables and no constants."""
    for x in subterms(t):
        if isinstance(x, Const):
            return False
        if isinstance(x, Var) and not _WFF_VAR.match(x.name):
            return False
    return True


def subterms(t: Term) -> Iterator[Term]:
    """Pre-order traversal."""
    yield t
    if isinstance(t, Not):
        yield from subterms(t.arg)
    elif isinstance(t, (Or, And, Impl, Equiv)):
        yield from subterms(t.left)
        yield from subterms(t.right)


def substitute(t: Term, mapping: dict[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Const):
        return t
    if isinstance(t, Not):
        return Not(substitute(t.arg, mapping))
    if isinstance(t, (Impl, Equiv)):
        return type(t)(t.kind, substitute(t.left, mapping), substitute(t.right, mapping))
    return type(t)(substitute(t.left, mapping), substitute(t.right, mapping))


def rename(t: Term, names: dict[str, str]) -> Term:
    return substitute(t, {old: Var(new) for old, new in names.items()})


def is_primitive(t: Term) -> bool:
    return all(isinstance(x, (Var, Const, Not, Or)) for x in subterms(t))


# --- expansion ---------------------------------------------------------------


def _unfold(t: Term, wff: bool) -> Term:
    """One definitional step for a derived node."""
    if isinstance(t, And):
        return Not(Or(Not(t.left), Not(t.right)))
    a, b = t.left, t.right
    if isinstance(t, Impl):
        k = t.kind
        if k == "c":
            return Or(Not(a), b)
        if k == "1":
            return Or(Not(a), And(a, b))
        if k == "2":
            return Impl("1", Not(b), Not(a))
        if k == "3":
            return Or(Or(And(Not(a), Not(b)), And(Not(a), b)), And(a, Or(Not(a), b)))
        if k == "4":
            return Impl("3", Not(b), Not(a))
        if k == "5":
            return Or(Or(And(a, b), And(Not(a), b)), And(Not(a), Not(b)))
    if isinstance(t, Equiv):
        # logic and lattice definitions list the disjuncts/conjuncts in
        # opposite orders; the two agree in every ortholattice
        if t.kind == "q":
            if wff:
                return Or(And(Not(a), Not(b)), And(a, b))
            return Or(And(a, b), And(Not(a), Not(b)))
        if wff:
            return And(Impl("c", b, a), Impl("c", a, b))
        return And(Or(Not(a), b), Or(Not(b), a))
    raise TypeError(f"not a derived node: {t!r}")


def expand(t: Term, wff: bool | None = None) -> Term:
    """Rewrite every derived connective into ``~``/``v`` (and constants).

    Wffs unfold with the propositional definitions and lattice terms with the
    lattice ones; ``wff=None`` decides by :func:`is_wff`.  No double negation
    is cancelled, so the result is a pure function of the input tree.
    """
    if wff is None:
        wff = is_wff(t)
    cache: dict[Term, Term] = {}

    def go(x: Term) -> Term:
        if x in cache:
            return cache[x]
        if isinstance(x, (Var, Const)):
            r = x
        elif isinstance(x, Not):
            r = Not(go(x.arg))
        elif isinstance(x, Or):
            r = Or(go(x.left), go(x.right))
        else:
            r = go(_unfold(x, wff))
        cache[x] = r
        return r

    return go(t)


# --- lexer and parser --------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<impl>(?:->|→)\s*(?P<ik>[0-5c]))
  | (?P<equiv>(?:==|≡)\s*(?P<ek>[qc]))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<const>[01](?![0-9]))
  | (?P<op>[~¬'′^∧∩∨∪()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind == "ik" or kind == "ek":
            kind = "impl" if m.group("impl") else "equiv"
        if kind == "impl":
            k = m.group("ik")
            toks.append(_Tok("impl", "c" if k == "0" else k, pos))
        elif kind == "equiv":
            toks.append(_Tok("equiv", m.group("ek"), pos))
        elif kind == "ident":
            word = m.group("ident")
            toks.append(_Tok("or", "v", pos) if word == "v" else _Tok("ident", word, pos))
        elif kind == "const":
            toks.append(_Tok("const", m.group("const"), pos))
        elif kind == "op":
            c = m.group("op")
            if c in "~¬":
                toks.append(_Tok("not", c, pos))
            elif c in "'′":
                toks.append(_Tok("prime", c, pos))
            elif c in "^∧∩":
                toks.append(_Tok("and", c, pos))
            elif c in "∨∪":
                toks.append(_Tok("or", c, pos))
            else:
                toks.append(_Tok(c, c, pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, mode: str):
        self.text = text
        self.mode = mode
        self.toks = _lex(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None, cls=TermSyntaxError):
        tok = tok or self.peek()
        return cls(msg, tok.pos, self.text)

    def parse(self) -> Term:
        t = self.impl()
        if self.peek().kind != "end":
            tok = self.peek()
            raise self.error(f"unexpected {tok.value or tok.kind!r}")
        return t

    def impl(self) -> Term:
        left = self.equiv()
        if self.peek().kind == "impl":
            op = self.take()
            right = self.equiv()
            if self.peek().kind == "impl":
                raise self.error("chained implications need parentheses", cls=AmbiguousChain)
            return Impl(op.value, left, right)
        return left

    def equiv(self) -> Term:
        left = self.disj()
        if self.peek().kind == "equiv":
            op = self.take()
            right = self.disj()
            if self.peek().kind == "equiv":
                raise self.error("chained equivalences need parentheses", cls=AmbiguousChain)
            return Equiv(op.value, left, right)
        return left

    def disj(self) -> Term:
        t = self.conj()
        while self.peek().kind == "or":
            self.take()
            t = Or(t, self.conj())
        return t

    def conj(self) -> Term:
        t = self.unary()
        while self.peek().kind == "and":
            self.take()
            t = And(t, self.unary())
        return t

    def unary(self) -> Term:
        if self.peek().kind == "not":
            self.take()
            return Not(self.unary())
        t = self.atom()
        while self.peek().kind == "prime":
            self.take()
            t = Not(t)
        return t

    def atom(self) -> Term:
        tok = self.take()
        if tok.kind == "(":
            t = self.impl()
            if self.peek().kind != ")":
                raise self.error("expected ')'")
            self.take()
            return t
        if tok.kind == "ident":
            if self.mode == "wff" and not _WFF_VAR.match(tok.value):
                raise self.error(f"wff variables are p0, p1, ...; got {tok.value!r}", tok)
            return Var(tok.value)
        if tok.kind == "const":
            if self.mode == "wff":
                raise self.error("constants are not allowed in wffs", tok)
            return Const(int(tok.value))
        if tok.kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {tok.value!r}", tok)


def parse_term(text: str) -> Term:
    """Parse a lattice term (identifiers, ``0``, ``1``)."""
    return _Parser(text, "term").parse()


def parse_wff(text: str) -> Term:
    """Parse a wff over ``p0, p1, ...``."""
    return _Parser(text, "wff").parse()


def parse_schema(text: str) -> Term:
    """Parse an axiom schema; metavariables are plain identifiers."""
    return _Parser(text, "schema").parse()


# --- printing ----------------------------------------------------------------

_PREC = {Impl: 1, Equiv: 2, Or: 3, And: 4}


def _prec(t: Term) -> int:
    return _PREC.get(type(t), 5)


def to_text(t: Term) -> str:
    """Canonical ASCII form; ``parse(to_text(t)) == t``."""
    return _render(t, _ASCII)


def to_unicode(t: Term, lattice: bool | None = None) -> str:
    """Report notation: ``∪ ∩ ′`` for lattice terms, ``∨ ∧ ¬`` for wffs."""
    if lattice is None:
        lattice = not is_wff(t)
    return _render(t, _UNI_LATTICE if lattice else _UNI_LOGIC)


_ASCII = {"or": " v ", "and": " ^ ", "impl": " ->{} ", "equiv": " =={} ", "not": "~{}", "postfix": False}
_UNI_LOGIC = {"or": " ∨ ", "and": " ∧ ", "impl": " →{} ", "equiv": " ≡{} ", "not": "¬{}", "postfix": False}
_UNI_LATTICE = {"or": " ∪ ", "and": " ∩ ", "impl": " →{} ", "equiv": " ≡{} ", "not": "{}′", "postfix": True}


def _render(t: Term, sym: dict) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, Not):
        inner = _render(t.arg, sym)
        if _prec(t.arg) < 5:
            inner = f"({inner})"
        return sym["not"].format(inner)
    p = _prec(t)
    left = _render(t.left, sym)
    right = _render(t.right, sym)
    if isinstance(t, (Or, And)):
        # left-associative: a same-level left child needs no parentheses
        if _prec(t.left) < p:
            left = f"({left})"
        if _prec(t.right) <= p:
            right = f"({right})"
        op = sym["or"] if isinstance(t, Or) else sym["and"]
        return left + op + right
    if _prec(t.left) <= p:
        left = f"({left})"
    if _prec(t.right) <= p:
        right = f"({right})"
    op = sym["impl"] if isinstance(t, Impl) else sym["equiv"]
    kind = t.kind if not (isinstance(t, Impl) and t.kind == "c" and sym is _UNI_LATTICE) else "0"
    return left + op.format(kind) + right


# --- Horn conditions ----------------------------------------------------------


@dataclass(frozen=True)
class HornCondition:
    """``premises ⇒ conclusion`` over lattice terms, universally quantified
    over ``vars``.  With no premises it is an identity."""

    name: str
    vars: tuple[str, ...]
    premises: tuple[tuple[Term, Term], ...]
    conclusion: tuple[Term, Term]

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "premises", tuple(tuple(p) for p in self.premises))
        object.__setattr__(self, "conclusion", tuple(self.conclusion))
        declared = set(self.vars)
        if len(declared) != len(self.vars):
            raise ValueError(f"{self.name}: duplicate variables")
        for lhs, rhs in self.premises + (self.conclusion,):
            for v in variables(lhs) + variables(rhs):
                if v not in declared:
                    raise ValueError(f"{self.name}: variable {v} is not declared")

    @property
    def is_identity(self) -> bool:
        return not self.premises

    def __str__(self):
        eqs = lambda p: f"{to_unicode(p[0], True)} = {to_unicode(p[1], True)}"
        if not self.premises:
            return eqs(self.conclusion)
        return " & ".join(eqs(p) for p in self.premises) + "  ⇒  " + eqs(self.conclusion)


def identity(name: str, lhs: str, rhs: str, vars: str | None = None) -> HornCondition:
    l, r = parse_term(lhs), parse_term(rhs)
    vs = vars.split() if vars else sorted(set(variables(l)) | set(variables(r)), key=natural_key)
    return HornCondition(name, tuple(vs), (), (l, r))


def horn(name: str, vars: str, premises: list[tuple[str, str]], conclusion: tuple[str, str]) -> HornCondition:
    return HornCondition(
        name,
        tuple(vars.split()),
        tuple((parse_term(a), parse_term(b)) for a, b in premises),
        (parse_term(conclusion[0]), parse_term(conclusion[1])),
    )


def _catalog() -> dict[str, HornCondition]:
    c: dict[str, HornCondition] = {}

    def add(cond):
        c[cond.name] = cond

    add(identity("OL1", "a''", "a"))
    add(identity("OL2", "a v (a ^ b)", "a"))
    add(identity("OL3", "a v b", "b v a"))
    add(identity("OL4", "a ^ b", "(a' v b')'"))
    add(identity("OL5", "a v (b v b')", "b v b'"))
    add(identity("OL6", "(a v b) v c", "a v (b v c)"))
    add(horn("OM_horn", "a b", [("a ==q b", "1")], ("a", "b")))
    add(horn("DIST_horn", "a b", [("a ==c b", "1")], ("a", "b")))
    add(identity("OM_eq", "a v (a' ^ (a v b))", "a v b"))
    add(identity("OM_unit", "a v (a' ^ (a v b)) ==q a v b", "1"))
    add(identity("DIST_eq", "a ^ (b v c)", "(a ^ b) v (a ^ c)"))
    add(horn("WOM_horn1", "a b", [("a ->1 b", "1")], ("b' ->1 a'", "1")))
    add(horn("WOM_horn2", "a b c", [("a ==q b", "1")], ("(a v c) ==q (b v c)", "1")))
    add(identity("WOML1_id", "(a ->1 b) ==q (b ->1 a)", "a ==q b"))
    add(identity("WOML2_id", "(a ==q b)' ->1 a'", "a ->1 b"))
    add(identity("WOML1_unit", "((a ->1 b) ==q (b ->1 a)) ==q (a ==q b)", "1"))
    add(identity("WOML2_unit", "((a ==q b)' ->1 a') ==q (a ->1 b)", "1"))
    add(identity("COMM", "(a ^ b) v (a ^ b') v (a' ^ b) v (a' ^ b')", "1"))
    add(identity("WDIST", "a v (b ^ c) ==c (a v b) ^ (a v c)", "1"))
    for i in ("0", "1", "2", "3", "4", "5"):
        add(horn(f"IMPL_LEQ_{i}", "a b", [(f"a ->{i} b", "1")], ("a ^ b", "a")))
    for i in ("1", "2", "3", "4", "5"):
        add(identity(f"EQUIV_DECOMP_{i}", "a ==q b", f"(a ->{i} b) ^ (b ->{i} a)"))
    return c


_BASE = _catalog()

# conditions written with a bare equivalence; ==q is the default reading
READINGS = ("q", "c", "horn")
AMBIGUOUS = ("WOM_horn2", "WOML1_id", "WOML2_id", "WOML1_unit", "WOML2_unit")


def _map_equiv(t: Term, kind: str) -> Term:
    if isinstance(t, (Var, Const)):
        return t
    if isinstance(t, Not):
        return Not(_map_equiv(t.arg, kind))
    l, r = _map_equiv(t.left, kind), _map_equiv(t.right, kind)
    if isinstance(t, Equiv):
        return Equiv(kind, l, r)
    if isinstance(t, Impl):
        return Impl(t.kind, l, r)
    return type(t)(l, r)


def c_reading(cond: HornCondition) -> HornCondition:
    """Replace every ``==q`` by ``==c``."""

    def m(eq):
        return _map_equiv(eq[0], "c"), _map_equiv(eq[1], "c")

    return HornCondition(cond.name + "_c", cond.vars, tuple(m(p) for p in cond.premises), m(cond.conclusion))


def horn_reading(cond: HornCondition) -> HornCondition:
    """Turn the identity ``t = s`` into ``t = 1 ⇒ s = 1``."""
    if cond.premises:
        raise ValueError(f"{cond.name} already has premises")
    lhs, rhs = cond.conclusion
    return HornCondition(cond.name + "_horn", cond.vars, ((lhs, ONE),), (rhs, ONE))


def builtin_condition(name: str) -> HornCondition:
    """Look up a catalog condition.

    ``<name>_c`` gives the ``==c`` reading of a bare-equivalence condition and
    ``<name>_horn`` the ``t = 1 ⇒ s = 1`` reading of an identity; the two
    suffixes combine as ``<name>_c_horn``.
    """
    if name in _BASE:
        return _BASE[name]
    base, horn_suffix = name, False
    if base.endswith("_horn"):
        base, horn_suffix = base[: -len("_horn")], True
    c_suffix = False
    if base.endswith("_c") and base[:-2] in AMBIGUOUS:
        base, c_suffix = base[:-2], True
    if base not in _BASE:
        raise UnknownCondition(f"unknown condition {name!r}")
    cond = _BASE[base]
    if c_suffix:
        cond = c_reading(cond)
    if horn_suffix:
        if not cond.is_identity:
            raise UnknownCondition(f"{base} is not an identity, so it has no _horn reading")
        cond = horn_reading(cond)
    return cond


def condition_names() -> list[str]:
    """Catalog base names plus the ``_c`` variants of ambiguous conditions."""
    return list(_BASE) + [n + "_c" for n in AMBIGUOUS]


def reading_of(name: str, reading: str) -> str | None:
    """Catalog name for ``name`` under reading ``q``, ``c`` or ``horn``;
    None when the reading does not apply."""
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    if name not in _BASE:
        return None
    if reading == "q":
        return name
    if reading == "c":
        return name + "_c" if name in AMBIGUOUS else None
    return name + "_horn" if _BASE[name].is_identity else None


# --- condition files ---------------------------------------------------------

_SINGLE_EQ = re.compile(r"(?<!=)=(?![=])")


def _split_equation(text: str, lineno: int) -> tuple[Term, Term]:
    parts = _SINGLE_EQ.split(text)
    if len(parts) != 2:
        raise FormatError("expected exactly one '=' in equation", lineno)
    try:
        return parse_term(parts[0]), parse_term(parts[1])
    except TermSyntaxError as exc:
        raise FormatError(str(exc), lineno) from exc


def parse_conditions(text: str) -> list[HornCondition]:
    """Parse condition-file text::

        condition NAME
        vars a b c
        premise <term> = <term>      # zero or more
        conclude <term> = <term>
    """
    out: list[HornCondition] = []
    cur: dict | None = None

    def finish(lineno):
        if cur is None:
            return
        if cur["conclusion"] is None:
            raise FormatError(f"condition {cur['name']} has no 'conclude' line", lineno)
        vs = cur["vars"]
        if vs is None:
            names = set()
            for l, r in cur["premises"] + [cur["conclusion"]]:
                names.update(variables(l) + variables(r))
            vs = sorted(names, key=natural_key)
        try:
            out.append(HornCondition(cur["name"], tuple(vs), tuple(cur["premises"]), cur["conclusion"]))
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from exc

    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "condition":
            finish(lineno)
            if not rest or len(rest.split()) != 1:
                raise FormatError("'condition' takes one name", lineno)
            cur = {"name": rest, "vars": None, "premises": [], "conclusion": None}
            continue
        if cur is None:
            raise FormatError(f"'{word}' before any 'condition' line", lineno)
        if word == "vars":
            cur["vars"] = rest.split()
        elif word == "premise":
            if cur["conclusion"] is not None:
                raise FormatError("premise after conclude", lineno)
            cur["premises"].append(_split_equation(rest, lineno))
        elif word == "conclude":
            if cur["conclusion"] is not None:
                raise FormatError("second conclude line", lineno)
            cur["conclusion"] = _split_equation(rest, lineno)
        else:
            raise FormatError(f"unknown directive {word!r}", lineno)
    finish(lineno)
    if not out:
        raise FormatError("no conditions found")
    return out


def format_condition(cond: HornCondition) -> str:
    lines = [f"condition {cond.name}", "vars " + " ".join(cond.vars)]
    for l, r in cond.premises:
        lines.append(f"premise {to_text(l)} = {to_text(r)}")
    l, r = cond.conclusion
    lines.append(f"conclude {to_text(l)} = {to_text(r)}")
    return "\n".join(lines) + "\n"
