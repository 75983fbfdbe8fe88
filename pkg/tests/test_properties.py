import hypothesis.strategies as st
from hypothesis import given, settings

from oracle import ev, oracle_from
from orthologic import BUILTIN_NAMES, builtin
from orthologic.checker import evaluate, scan
from orthologic.logic import QL_AXIOMS, instantiate, match_schema
from orthologic.terms import (
    ONE,
    ZERO,
    And,
    Equiv,
    Impl,
    Not,
    Or,
    Var,
    builtin_condition,
    expand,
    is_primitive,
    parse_term,
    parse_wff,
    to_text,
    to_unicode,
    variables,
)

LATTICE_VARS = ("a", "b", "c")
WFF_VARS = ("p0", "p1", "p2")


def terms(names, consts=True):
    leaves = st.sampled_from([Var(n) for n in names] + ([ZERO, ONE] if consts else []))

    def grow(sub):
        return st.one_of(
            st.builds(Not, sub),
            st.builds(Or, sub, sub),
            st.builds(And, sub, sub),
            st.builds(Impl, st.sampled_from(["c", "1", "2", "3", "4", "5"]), sub, sub),
            st.builds(Equiv, st.sampled_from(["q", "c"]), sub, sub),
        )

    return st.recursive(leaves, grow, max_leaves=8)


lattice_terms = terms(LATTICE_VARS)
wffs = terms(WFF_VARS, consts=False)
lattices = st.sampled_from(BUILTIN_NAMES).map(builtin)


@given(lattice_terms)
def test_print_parse_round_trip(t):
    assert parse_term(to_text(t)) == t
    assert parse_term(to_unicode(t)) == t


@given(wffs)
def test_wff_round_trip(t):
    assert parse_wff(to_text(t)) == t


@given(st.one_of(lattice_terms, wffs))
def test_expand_idempotent_and_keeps_variables(t):
    e = expand(t)
    assert is_primitive(e)
    assert expand(e) == e
    assert variables(e) == variables(t)


@given(lattice_terms, lattices, st.data())
def test_evaluation_respects_expansion(t, L, data):
    env = {v: data.draw(st.integers(0, L.n - 1)) for v in variables(t)}
    assert evaluate(t, L, env) == evaluate(expand(t), L, env)


@settings(max_examples=40)
@given(lattice_terms, st.sampled_from(["O6", "O7", "O8", "MO2"]), st.data())
def test_evaluation_matches_oracle(t, name, data):
    L = builtin(name)
    O = oracle_from(L)
    env = {v: data.draw(st.integers(0, L.n - 1)) for v in variables(t)}
    assert L.label(evaluate(t, L, env)) == ev(t, O, {v: L.label(i) for v, i in env.items()})


@given(lattices, st.data())
def test_de_morgan_tables(L, data):
    x = data.draw(st.integers(0, L.n - 1))
    y = data.draw(st.integers(0, L.n - 1))
    o = L.ortho
    assert o[L.join[x, y]] == L.meet[o[x], o[y]]
    assert o[L.meet[x, y]] == L.join[o[x], o[y]]
    assert o[o[x]] == x


@given(st.sampled_from(sorted(QL_AXIOMS)), st.data())
def test_schema_match_round_trip(name, data):
    s = QL_AXIOMS[name]
    sigma = {m: data.draw(wffs) for m in variables(s.pattern)}
    w = instantiate(s, sigma)
    got = match_schema(s, w)
    assert got is not None
    # a binding may be respelled but must denote the same instance
    assert instantiate(s, got) == w or expand(instantiate(s, got)) == expand(w)


@settings(max_examples=20)
@given(
    st.sampled_from(["OM_horn", "OM_eq", "DIST_eq", "WOML2_id", "COMM", "WOM_horn2"]),
    st.sampled_from(["O7", "O8", "MO2"]),
    st.integers(2, 4),
    st.integers(5, 300),
)
def test_scan_is_independent_of_jobs_and_chunking(cond, name, jobs, chunk):
    L = builtin(name)
    c = builtin_condition(cond)
    ref = scan(L, c.vars, c.premises, c.conclusion)
    assert scan(L, c.vars, c.premises, c.conclusion, jobs=jobs, chunk=chunk) == ref
