import os

import pytest

from canon import (Bounds, EquationalSystem, check_postulates, classify,
                   compare_justifications, enumerate_proofs, minimal, normal_form_proofs,
                   parse_formula, preset, read_abstract_system, redundant, sharp, simpler)
from canon import framework as fw
from canon.abstract import AbstractSystem
from canon.equational import bounded_theory
from canon.proofs import format_proof, intro, succ, trans, z_proof
from canon.terms import Signature, eq, numeral, universe
from conftest import fs

DATA = os.path.join(os.path.dirname(__file__), "data")
TALLY = Signature.tally()
pf = parse_formula


def names(ps):
    return sorted(p.id for p in ps)


def shown(system, formulas):
    return sorted(system.format_formula(f) for f in formulas)


# ------------------------------------------------------------ bounded oracle

def simpler_by_enumeration(system, A, B, small=5):
    """A ⊑ B checked on literal enumerations: each proof from A whose
    conclusion has sides of size at most ``small`` must have a proof from
    B at least as good."""
    if system.theory(A) != system.theory(B):
        return False
    size = system.bounds.max_term_size
    pb = {}
    for q in enumerate_proofs(B, Bounds(size, 4), system.sig, projections=False):
        pb.setdefault(q.concl, []).append(q)
    for p in enumerate_proofs(A, Bounds(size, 3), system.sig):
        if max(t.size for t in p.concl.sides) > small:
            continue
        if not any(q is p or system.gt(p, q) for q in pb.get(p.concl, ())):
            return False
    return True


@pytest.fixture(scope="module")
def eq6():
    return EquationalSystem(TALLY, preset("completion"), Bounds(6, 5))


# ------------------------------------------------------------ minimal

def test_minimal_of_singleton(counterexample):
    s = counterexample
    assert minimal(s, [s.trivial("b")]) == [s.trivial("b")]


def test_minimal_proof_of_two_equals_zero(even):
    system = EquationalSystem(TALLY, preset("example_rpo"), Bounds(6, 3))
    proofs = [p for p in enumerate_proofs(even, Bounds(6, 3), TALLY) if p.concl is pf("2 = 0")]
    assert [format_proof(p) for p in minimal(system, proofs)] == ["T(I(4,0),I(4,2))"]


def test_minimal_rejects_foreign_proofs(counterexample, oscillation):
    with pytest.raises(ValueError, match="invalid"):
        minimal(counterexample, [oscillation.proof("b/c")])


# ------------------------------------------------------------ normal forms and sharp

def test_normal_forms_of_nothing_include_reflexivity():
    system = EquationalSystem(TALLY, preset("completion"), Bounds(5, 5))
    nf = set(normal_form_proofs(system, []))
    for j in range(5):
        assert succ(z_proof(TALLY), j) in nf


def test_normal_forms_of_even_use_two_equals_zero(even):
    system = EquationalSystem(TALLY, preset("completion"), Bounds(9, 5))
    for p in normal_form_proofs(system, even):
        assert p.premises <= {pf("2 = 0")}


def test_normal_forms_of_counterexample(counterexample):
    assert names(normal_form_proofs(counterexample, {"b"})) == ["c/a", "eps_b", "eps_c"]


@pytest.mark.parametrize("name,size,start,expected", [
    ("completion", 7, ["4 = 2", "4 = 0"], ["2 = 0"]),
    ("congruence_closure", 9, ["4 = 2", "4 = 0"], ["2 = 0", "4 = 0", "6 = 0", "8 = 0"]),
    ("refutation", 5, ["1 != 1", "1 != 0"], ["0 != 0"]),
])
def test_sharp_goldens(name, size, start, expected):
    system = EquationalSystem(TALLY, preset(name), Bounds(size, 5))
    assert shown(system, sharp(system, fs(*start))) == sorted(expected)


def test_sharp_deductive_closure_is_the_theory(even):
    system = EquationalSystem(TALLY, preset("deductive_closure"), Bounds(5, 5))
    expected = {eq(numeral(i), numeral(j)) for i in range(5) for j in range(5) if (i - j) % 2 == 0}
    assert sharp(system, even) == expected


def test_sharp_constants(constants_sys):
    assert shown(constants_sys, sharp(constants_sys, fs("a = c", "s(a) = b"))) == ["a = c", "s(c) = b"]


# ------------------------------------------------------------ comparisons

def test_compare_justifications_modes(counterexample, oscillation):
    s = counterexample
    P = [s.proof("eps_a"), s.proof("b/a")]
    assert compare_justifications(s, P, P, fw.BETTER_EQ)
    assert compare_justifications(s, P, P, fw.SIMILAR)
    assert not compare_justifications(s, P, P, fw.MUCH_BETTER)
    assert compare_justifications(s, [s.proof("eps_a")], [s.proof("b/a")], fw.MUCH_BETTER)
    o = oscillation
    assert not compare_justifications(o, [o.proof("eps_c")], [o.proof("b/c")], fw.BETTER_EQ)
    with pytest.raises(ValueError):
        compare_justifications(s, P, P, "sideways")


def test_simpler_examples(eq6, even, oscillation):
    assert simpler(eq6, even, even)
    assert simpler(eq6, even, fs("2 = 0"))
    assert simpler_by_enumeration(eq6, even, fs("2 = 0"))
    assert not simpler(eq6, fs("2 = 0"), even)
    assert not simpler_by_enumeration(eq6, fs("2 = 0"), even)
    assert not simpler(oscillation, {"c"}, {"b"})
    assert "theories differ" in fw.simpler_witness(eq6, even, fs("2 = 0", "1 = 0"))


def test_redundant_examples(eq6):
    assert redundant(eq6, []) == frozenset()
    A = fs("4 = 2", "4 = 0", "2 = 0")
    assert redundant(eq6, A) == fs("4 = 2", "4 = 0")
    assert {r for r in A if simpler_by_enumeration(eq6, A, A - {r})} == fs("4 = 2", "4 = 0")
    assert redundant(eq6, fs("2 = 0")) == frozenset()


# ------------------------------------------------------------ classification

def test_classify_canonical(eq6):
    v = classify(eq6, fs("2 = 0"))
    assert v.flags() == {"contracted": True, "saturated": True, "complete": True, "canonical": True}
    assert v.witnesses == {}


def test_classify_counterexample(counterexample):
    v = classify(counterexample, {"b"})
    assert not v.complete and not v.saturated and not v.canonical
    assert v.contracted
    assert "c/a" in v.witnesses["saturated"]
    assert "theorem a" in v.witnesses["complete"]


def test_classify_unreduced(eq6, even):
    v = classify(eq6, even)
    assert not v.saturated and not v.canonical and v.contracted
    assert v.to_json()["witnesses"]["canonical"] == v.witnesses["saturated"]
    v = classify(eq6, fs("4 = 2", "4 = 0", "2 = 0"))
    assert not v.contracted


def test_classify_whole_theory_under_deductive_closure(even):
    system = EquationalSystem(TALLY, preset("deductive_closure"), Bounds(5, 5))
    A = bounded_theory(even, universe(TALLY, 5))
    v = classify(system, A)
    assert v.saturated and v.contracted


# ------------------------------------------------------------ postulates

def test_postulates_trivial_sample(counterexample):
    assert check_postulates(counterexample, [counterexample.trivial("a")]).ok


def test_postulates_on_enumeration(even):
    system = EquationalSystem(TALLY, preset("completion"), Bounds(6, 3))
    report = check_postulates(system, enumerate_proofs(even, Bounds(6, 3), TALLY))
    assert report.ok and report.checked == 679


def test_postulates_sub_violation():
    recs = [{"id": "eps_a", "premises": ["a"], "conclusion": "a", "subproofs": ["eps_a"]},
            {"id": "eps_b", "premises": ["b"], "conclusion": "b", "subproofs": ["eps_b"]},
            {"id": "odd", "premises": ["a"], "conclusion": "a", "subproofs": ["odd", "eps_a", "eps_b"]}]
    s = AbstractSystem(["a", "b"], recs, [])
    report = check_postulates(s, s.proofs)
    assert [v.kind for v in report.violations] == ["sub"]
    assert report.to_json()["ok"] is False


def test_postulates_cut_violation():
    s = read_abstract_system(os.path.join(DATA, "cut_violation.sys"))
    assert [v.kind for v in check_postulates(s, s.proofs).violations] == ["cut"]
