import json

import pytest

from canon import (Bounds, DerivationTrace, EquationalSystem, Step, bulk_step, check_derivation,
                   classify, contract, critical_proofs, critical_step, dump_trace,
                   ground_completion, load_trace, mass_step, parse_formula, preset,
                   run_completion, sharp, trace_sets)
from canon.completion import bulk_witnesses, mass_proofs
from canon.terms import LPO, Signature, SizeOrder
from conftest import fs

TALLY = Signature.tally()
pf = parse_formula


def ids(ps):
    return sorted(p.id for p in ps)


def states(trace):
    return [sorted(s) for s in trace.states]


@pytest.fixture(scope="module")
def eq7():
    return EquationalSystem(TALLY, preset("completion"), Bounds(7, 5))


# ------------------------------------------------------------ critical proofs

def test_no_critical_proofs_for_canonical_sets(eq7, counterexample):
    assert critical_proofs(eq7, fs("2 = 0")) == []
    assert critical_proofs(counterexample, sharp(counterexample, {"b"})) == []


def test_critical_proofs_of_counterexample(counterexample):
    got = ids(critical_proofs(counterexample, {"b"}))
    assert got == ["b/a"]
    assert "(b/a)/c" not in got


def test_premises_of_unreduced_presentation_are_critical(eq7, even):
    # every critical proof from {4=2, 4=0} is a premise's own trivial proof
    assert {str(p) for p in critical_proofs(eq7, even)} == {"I(4,0)", "I(4,2)"}


# ------------------------------------------------------------ contraction and steps

def test_contract(eq7, counterexample):
    assert contract(eq7, fs("2 = 0")) == fs("2 = 0")
    assert contract(eq7, fs("4 = 2", "4 = 0", "2 = 0")) == fs("2 = 0")
    assert contract(counterexample, {"a", "b"}) == {"b"}


@pytest.mark.parametrize("step", [critical_step, bulk_step, mass_step])
def test_steps_fix_the_canonical_basis(step, eq7, counterexample):
    assert step(eq7, fs("2 = 0")) == fs("2 = 0")
    sh = sharp(counterexample, {"b"})
    assert step(counterexample, sh) == sh


def test_critical_step_counterexample(counterexample):
    assert critical_step(counterexample, {"b"}) == {"b"}


def test_critical_step_stalls_on_unreduced_tally(eq7, even):
    # critical theorems are the premises themselves, so nothing is added
    assert critical_step(eq7, even) == even


def test_bulk_step(counterexample, fan):
    assert ids(bulk_witnesses(counterexample, {"b"})) == ["c/a"]
    assert bulk_step(counterexample, {"b"}) == {"b", "c"}
    assert ids(bulk_witnesses(fan, {"c", "d"})) == ["a1/c"]
    assert bulk_step(fan, {"c", "d"}) == {"a1", "d"}


def test_mass_step(counterexample, unique_needed):
    assert ids(mass_proofs(counterexample, {"b"})) == ["(b/a)/c"]
    assert mass_step(counterexample, {"b"}) == {"b", "c"}
    assert mass_proofs(unique_needed, {"a"}) == []
    assert mass_step(unique_needed, {"a"}) == {"a"}
    assert bulk_step(unique_needed, {"a"}) == {"a"}


# ------------------------------------------------------------ runs

def test_runs_on_counterexample(counterexample):
    assert states(run_completion(counterexample, {"b"}, "bulk")) == [["b"], ["b", "c"]]
    assert states(run_completion(counterexample, {"b"}, "mass")) == [["b"], ["b", "c"]]
    assert states(run_completion(counterexample, {"b"}, "critical")) == [["b"], ["b"]]


@pytest.mark.parametrize("mechanism", ["bulk", "mass"])
def test_runs_on_tally(mechanism, eq7, even):
    t = run_completion(eq7, even, mechanism)
    assert t.final == fs("2 = 0") == sharp(eq7, even)
    assert [s.kind for s in t.steps] == [mechanism]


def test_run_errors(eq7, even):
    with pytest.raises(ValueError, match="mechanism"):
        run_completion(eq7, even, "eager")
    t = run_completion(eq7, even, "bulk", max_steps=0)
    assert not t.terminated and t.states == [even]


# ------------------------------------------------------------ ground completion

def test_ground_completion_tally(eq7, even):
    t = ground_completion(even, SizeOrder(), TALLY)
    assert t.terminated and t.final == fs("2 = 0") == sharp(eq7, even)
    assert {s.kind for s in t.steps} <= {"deduce", "delete"}
    v = check_derivation(eq7, t)
    assert v.good and v.fair and v.contracting and v.canonical


def test_ground_completion_constants(constants_sig, constants_order):
    t = ground_completion(fs("a = c", "s(a) = b"), constants_order, constants_sig)
    assert t.final == fs("a = c", "s(c) = b")


def test_ground_completion_delete():
    t = ground_completion(fs("0 = 0"), SizeOrder(), TALLY)
    assert t.final == frozenset() and [s.kind for s in t.steps] == ["delete"]


def test_ground_completion_errors(constants_sig):
    with pytest.raises(ValueError, match="equations only"):
        ground_completion(fs("1 != 0"), SizeOrder(), TALLY)
    with pytest.raises(ValueError, match="not total"):
        ground_completion(fs("a = c"), SizeOrder(), constants_sig)
    with pytest.raises(ValueError, match="does not rank"):
        ground_completion(fs("a = c"), LPO(["s", "a"]), constants_sig)


def test_ground_completion_step_cap(even):
    t = ground_completion(even, SizeOrder(), TALLY, max_steps=1)
    assert not t.terminated and len(t.steps) == 1


# ------------------------------------------------------------ traces

def test_trace_sets(eq7, even):
    t = DerivationTrace([frozenset("b"), frozenset("bc")], [Step("bulk", ("c",), ())])
    assert trace_sets(t) == (frozenset("bc"), frozenset("bc"))
    g = ground_completion(even, SizeOrder(), TALLY)
    limit, union = trace_sets(g)
    assert limit == fs("2 = 0")
    assert union == fs("4 = 2", "4 = 0", "2 = 0")


def test_trace_validation():
    with pytest.raises(ValueError, match="at least one"):
        DerivationTrace([])
    with pytest.raises(ValueError, match="exactly one step"):
        DerivationTrace([frozenset("a"), frozenset("b")])
    with pytest.raises(ValueError, match="unknown kind"):
        DerivationTrace([frozenset("a"), frozenset("b")], [Step("jump", ("b",), ("a",))])
    with pytest.raises(ValueError, match="does not turn"):
        DerivationTrace([frozenset("a"), frozenset("b")], [Step("expand", ("b",), ())])


def test_trace_files_round_trip(eq7, even, counterexample):
    t = ground_completion(even, SizeOrder(), TALLY)
    text = dump_trace(eq7, t)
    back = load_trace(eq7, text)
    assert back.states == t.states and back.steps == t.steps
    assert dump_trace(eq7, back) == text
    c = run_completion(counterexample, {"b"}, "bulk")
    assert dump_trace(counterexample, load_trace(counterexample, dump_trace(counterexample, c))) \
        == dump_trace(counterexample, c)
    with pytest.raises(ValueError, match="malformed"):
        load_trace(eq7, json.dumps({"states": [["2 = 0"]]}))


def test_check_derivation_bulk(counterexample):
    v = check_derivation(counterexample, run_completion(counterexample, {"b"}, "bulk"))
    assert all(v.flags().values())
    assert v.bounds is None


def test_check_derivation_critical(counterexample):
    t = run_completion(counterexample, {"b"}, "critical")
    v = check_derivation(counterexample, t)
    assert v.good and not v.fair
    assert "b/a" in v.witnesses["fair"]
    assert not classify(counterexample, t.final).complete


def test_check_derivation_rejects_oscillation(oscillation):
    t = DerivationTrace([frozenset("c"), frozenset("b")], [Step("expand", ("b",), ("c",))])
    v = check_derivation(oscillation, t)
    assert not v.good and v.witnesses["good"].startswith("step 0:")


def test_check_derivation_reports_bounds(eq7, even):
    v = check_derivation(eq7, run_completion(eq7, even, "critical"))
    assert v.to_json()["bounds"] == {"max_term_size": 7, "max_proof_depth": 5}
    assert v.good and not v.fair and not v.canonical
