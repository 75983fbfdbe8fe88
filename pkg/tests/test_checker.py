import pytest

from oracle import first_failure, oracle_from
from orthologic import BUILTIN_NAMES, builtin, builtin_condition, parse_term, parse_wff
from orthologic.checker import (
    FLAG_ORDER,
    check_condition,
    check_consequence,
    check_horn,
    check_identity,
    check_validity,
    classify,
    cross_validate_oml,
    enumerate_valuations,
    evaluate,
    oml_counterexample,
    oml_equiv2,
    scan,
)
from orthologic.errors import BudgetExceeded, TooManyVariables, UnboundVariable
from orthologic.lattice import find_o6_subalgebra, subalgebra
from orthologic.logic import AXIOMS, fresh_instance
from orthologic.terms import ONE, condition_names

OML_BUILTINS = ("B2", "B4", "B8", "B16", "MO2")


def env(L, **labels):
    return {k: L.index(v) for k, v in labels.items()}


def test_evaluate_examples():
    O6 = builtin("O6")
    assert O6.label(evaluate(parse_term("a v b"), O6, env(O6, a="x", b="y'"))) == "1"
    assert O6.label(evaluate(parse_term("a v (a' ^ (a v b))"), O6, env(O6, a="x", b="y"))) == "x"
    for L in (builtin(n) for n in BUILTIN_NAMES):
        for e in range(L.n):
            assert evaluate(parse_term("a v a'"), L, {"a": e}) == L.top


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        evaluate(parse_term("a v b"), builtin("O6"), {"a": 0})


def test_enumerate_valuations():
    assert len(list(enumerate_valuations(builtin("O6"), 2))) == 36
    assert sum(1 for _ in enumerate_valuations(builtin("O8"), 3)) == 8000
    assert list(enumerate_valuations(builtin("B2"), 0)) == [()]
    vals = list(enumerate_valuations(builtin("O6"), 2))
    assert vals == sorted(vals)


def test_check_identity_examples():
    O6 = builtin("O6")
    assert check_condition(O6, "OM_unit").passed
    r = check_identity(O6, parse_term("a v (a' ^ (a v b))"), parse_term("a v b"))
    assert r.witness_labels() == {"a": "x", "b": "y"}
    assert r.value_labels() == {"lhs": "x", "rhs": "y"}
    assert check_condition(builtin("B4"), "OM_eq").passed


def test_check_horn_examples():
    O6 = builtin("O6")
    r = check_condition(O6, "OM_horn")
    assert r.witness_labels() == {"a": "x", "b": "y"}
    assert r.value_labels()["premise1.lhs"] == "1"
    assert check_condition(O6, "WOM_horn1").passed
    assert check_condition(builtin("B8"), "DIST_horn").passed


def test_scanned_counts():
    O6 = builtin("O6")
    r = check_condition(O6, "OM_horn")
    # (x, y) is valuation number 1*6 + 3 = 9, counted from zero
    assert r.scanned == 10
    assert check_condition(O6, "COMM").scanned == 36


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_ol_axioms_hold_everywhere(name):
    L = builtin(name)
    for i in range(1, 7):
        assert check_condition(L, f"OL{i}").passed


@pytest.mark.parametrize("lat", ["O6", "O7", "O8", "MO2"])
@pytest.mark.parametrize("cond", ["OM_horn", "OM_eq", "DIST_eq", "WOML1_id", "WOML2_id_c", "WOM_horn2", "COMM"])
def test_first_witness_matches_oracle(lat, cond):
    L = builtin(lat)
    c = builtin_condition(cond)
    r = check_horn(L, c)
    want, count = first_failure(oracle_from(L), c.vars, c.premises, c.conclusion)
    assert (r.witness_labels() or None) == want
    assert r.scanned == count


def test_o8_om_horn_has_no_witness_at_w_y():
    # w ==q y = w v y' = v, so the Horn premise is false at (w, y)
    O8 = builtin("O8")
    val = evaluate(parse_term("a ==q b"), O8, env(O8, a="w", b="y"))
    assert O8.label(val) == "v"
    # the equation fails there, and its two sides give a genuine Horn witness
    r = check_condition(O8, "OM_eq")
    assert r.witness_labels() == {"a": "w", "b": "y"}
    lhs, rhs = r.value_labels()["lhs"], r.value_labels()["rhs"]
    prem = evaluate(parse_term("a ==q b"), O8, env(O8, a=lhs, b=rhs))
    assert prem == O8.top and lhs != rhs
    assert check_condition(O8, "OM_horn").witness_labels() == {"a": "w", "b": "r"}


def test_impl_leq_0_fails_on_mo2_because_mo2_is_not_distributive():
    MO2 = builtin("MO2")
    r = check_condition(MO2, "IMPL_LEQ_0")
    assert r.witness_labels() == {"a": "a", "b": "b"}
    assert not classify(MO2)["DL"]
    for i in range(1, 6):
        assert check_condition(MO2, f"IMPL_LEQ_{i}").passed


def test_validity_examples():
    O7 = builtin("O7")
    assert check_validity(O7, parse_wff("p0 ^ (p0 v p1) ==q p0")).passed
    for n in BUILTIN_NAMES:
        assert check_validity(builtin(n), parse_wff("p0 v ~p0")).passed
    r = check_validity(builtin("B2"), parse_wff("p0"))
    assert r.witness_labels() == {"p0": "0"}
    assert r.value_labels() == {"value": "0"}


def test_consequence_examples():
    O6 = builtin("O6")
    assert check_consequence(O6, [parse_wff("p0")], parse_wff("p0")).passed
    r = check_consequence(O6, [parse_wff("p0"), parse_wff("p0 ->3 p1")], parse_wff("p1"))
    assert r.passed and r.scanned == 36
    A = parse_wff("p0 v p1")
    assert check_consequence(O6, [], A).to_dict() == check_validity(O6, A).to_dict()


def test_consequence_witness_uses_wff_names():
    r = check_consequence(builtin("O6"), [parse_wff("p1")], parse_wff("p0"))
    assert set(r.witness) == {"p0", "p1"}


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_r1_sound_where_ql_axioms_hold(name):
    L = builtin(name)
    if all(check_validity(L, fresh_instance(s)).passed for s in AXIOMS["QL"].values()):
        assert check_consequence(L, [parse_wff("p0"), parse_wff("p0 ->3 p1")], parse_wff("p1")).passed


def test_budget():
    with pytest.raises(BudgetExceeded):
        check_condition(builtin("O8"), "DIST_eq", budget=1000)


def test_jobs_do_not_change_the_witness():
    O8 = builtin("O8")
    cond = builtin_condition("DIST_eq")
    a = check_horn(O8, cond, jobs=1)
    for jobs in (2, 4):
        # tiny chunks so several blocks really run concurrently
        hit, _ = scan(O8, cond.vars, cond.premises, cond.conclusion, jobs=jobs, chunk=97)
        assert hit + 1 == a.scanned
        assert check_horn(O8, cond, jobs=jobs).to_dict() == a.to_dict()


def test_determinism():
    O8 = builtin("O8")
    runs = [check_condition(O8, "WOML2_id").to_dict() for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]


# --- classification ---------------------------------------------------------------


def test_classify_boolean():
    p = classify(builtin("B4"))
    for flag in FLAG_ORDER:
        assert p[flag] == ("*" not in flag)


def test_classify_o6():
    p = classify(builtin("O6"))
    assert p["OL"] and p["WOML"] and p["WDL"] and p["WDL*"]
    assert not p["OML"] and not p["DL"]
    assert p.witnesses["OML"].witness_labels() == {"a": "x", "b": "y"}
    assert p.witnesses["DL"].witness_labels() == {"a": "x'", "b": "x", "c": "y'"}


def test_classify_o8_oml_witness():
    p = classify(builtin("O8"))
    assert not p["OML"]
    assert p.witnesses["OML"].witness_labels() == {"a": "w", "b": "y"}


def test_classify_o7_is_woml1_star():
    p = classify(builtin("O7"))
    assert p["WOML1*"] and not p["WOML2"]


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_profile_invariants(name):
    p = classify(builtin(name))
    assert not p["OML"] or p["WOML2"]
    assert not p["WOML2"] or p["WOML1"]
    assert not p["WOML1"] or p["WOML"]
    assert not p["DL"] or (p["OML"] and p["WDL"])
    # both orthomodularity forms agree, as do both distributivity forms
    c = p.checks
    assert c["OM_horn"].passed == c["OM_eq"].passed
    assert c["DIST_horn"].passed == c["DIST_eq"].passed
    assert c["COMM"].passed == c["WDIST"].passed


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_monotone_chain(name):
    L = builtin(name)
    om, w2, w1, w = (check_condition(L, n).passed for n in ("OM_horn", "WOML2_id", "WOML1_id", "WOM_horn1"))
    assert (not om or w2) and (not w2 or w1) and (not w1 or w)


def test_mo2_profile():
    p = classify(builtin("MO2"))
    assert p["OML"] and not p["WDL"] and not p["DL"]


# --- subalgebra closure ----------------------------------------------------------


@pytest.mark.parametrize("parent", ["O7", "O8"])
def test_identities_inherited_by_o6_subalgebra(parent):
    L = builtin(parent)
    S = subalgebra(L, find_o6_subalgebra(L))
    for name in condition_names():
        if check_condition(L, name).passed:
            assert check_condition(S, name).passed, name


# --- OML oracle ------------------------------------------------------------------


def test_oml_equiv2_self_tests():
    # OL6 (associativity) has three variables and is out of the oracle's reach
    for i in range(1, 6):
        assert oml_equiv2(*builtin_condition(f"OL{i}").conclusion)
    assert oml_equiv2(*builtin_condition("OM_eq").conclusion)
    assert not oml_equiv2(*builtin_condition("COMM").conclusion)


def test_oml_equiv2_counterexample():
    r = oml_counterexample(parse_term("a v b"), parse_term("a ^ b"))
    assert r.lattice.name == "B2"
    assert r.witness_labels() == {"a": "0", "b": "1"}
    assert oml_counterexample(parse_term("a"), parse_term("a''")) is None
    # commensurability holds in every Boolean block but not in MO2
    assert oml_counterexample(*builtin_condition("COMM").conclusion).lattice.name == "MO2"


def test_oml_equiv2_rejects_three_variables():
    with pytest.raises(TooManyVariables):
        oml_equiv2(parse_term("(a v b) v c"), parse_term("a v (b v c)"))


@pytest.mark.parametrize("i", range(1, 6))
def test_equiv_decomposition(i):
    t, s = builtin_condition(f"EQUIV_DECOMP_{i}").conclusion
    for n in OML_BUILTINS:
        L = builtin(n)
        for x in range(L.n):
            for y in range(L.n):
                assert evaluate(t, L, {"a": x, "b": y}) == evaluate(s, L, {"a": x, "b": y})


def test_equiv_decomposition_fails_somewhere_off_oml():
    fails = [
        (i, n)
        for i in range(1, 6)
        for n in ("O6", "O7", "O8")
        if not check_condition(builtin(n), f"EQUIV_DECOMP_{i}").passed
    ]
    assert fails


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_holland_agreement(name):
    rep = cross_validate_oml(builtin(name))
    assert rep.consistent
    assert (rep.subalgebra is None) == (name in OML_BUILTINS)


def test_check_result_json_shape():
    d = check_condition(builtin("O6"), "OM_horn").to_dict()
    assert list(d) == ["lattice", "condition", "reading", "status", "scanned", "witness", "values"]
    assert d["witness"] == {"a": "x", "b": "y"}


def test_identity_with_explicit_vars():
    r = check_identity(builtin("B2"), parse_term("a"), parse_term("a"), vars=["a", "b"])
    assert r.scanned == 4
    assert check_identity(builtin("B2"), ONE, ONE).scanned == 1
