"""Canonicity core, generic over a proof-system backend.

A backend (``EquationalSystem`` or ``AbstractSystem``) bundles the proof
system with its ordering and bounds.  It supplies three things:

* ``theory(A)``: the theorems of ``A`` (bounded for equational systems),
* ``minimal_proofs(X)``: the minimal proofs using premises from ``X``,
  grouped by conclusion,
* proof accessors and the strict comparison ``gt``.

Comparisons of whole proof sets reduce to their minimal elements: by
well-foundedness, ``Pf(A)`` is better than ``Pf(B)`` exactly when the
minimal proofs of ``A`` are better than the minimal proofs of ``B``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence

from .abstract import Violation, cut_violations

BETTER_EQ, MUCH_BETTER, SIMILAR = "better_eq", "much_better", "similar"


def _sorted_formulas(sys, fs: Iterable) -> List:
    return sorted(set(fs), key=sys.formula_key)


def _sorted_proofs(sys, ps: Iterable) -> List:
    return sorted(set(ps), key=sys.proof_key)


def minimal(sys, P: Iterable) -> List:
    """The members of ``P`` with no smaller member of ``P``."""
    P = _sorted_proofs(sys, P)
    for p in P:
        if not sys.is_valid(p):
            raise ValueError(f"invalid proof {sys.format_proof(p)}")
    return [p for p in P if not any(sys.gt(p, q) for q in P)]


def minimal_proofs(sys, A: Iterable) -> List:
    """μPf(A), all conclusions together."""
    table = sys.minimal_proofs(A)
    return _sorted_proofs(sys, (p for ps in table.values() for p in ps))


def normal_form_proofs(sys, A: Iterable) -> List:
    """Nf(A): minimal proofs that may use any theorem of ``A`` as a premise."""
    return minimal_proofs(sys, sys.theory(A))


def premises_of(sys, proofs: Iterable) -> FrozenSet:
    out = set()
    for p in proofs:
        out |= sys.premises(p)
    return frozenset(out)


def sharp(sys, A: Iterable) -> FrozenSet:
    """The canonical basis: premises of the normal-form proofs."""
    return premises_of(sys, normal_form_proofs(sys, A))


def _better(sys, P: Iterable, Q: Sequence, strict: bool) -> Optional[object]:
    """Return the first p in P with no q in Q below it (None if there is none)."""
    by_concl: Dict[object, List] = {}
    for q in Q:
        by_concl.setdefault(sys.conclusion(q), []).append(q)
    for p in _sorted_proofs(sys, P):
        ok = False
        for q in by_concl.get(sys.conclusion(p), ()):
            if sys.gt(p, q) or (not strict and p is q):
                ok = True
                break
        if not ok:
            return p
    return None


def compare_justifications(sys, P: Iterable, Q: Iterable, mode: str = BETTER_EQ) -> bool:
    P, Q = list(P), list(Q)
    if mode == BETTER_EQ:
        return _better(sys, P, Q, strict=False) is None
    if mode == MUCH_BETTER:
        return _better(sys, P, Q, strict=True) is None
    if mode == SIMILAR:
        return _better(sys, P, Q, False) is None and _better(sys, Q, P, False) is None
    raise ValueError(f"unknown comparison mode {mode!r}")


def simpler_witness(sys, A: Iterable, B: Iterable) -> Optional[str]:
    """Why ``A ⊑ B`` fails, or None when it holds."""
    A, B = frozenset(A), frozenset(B)
    ta, tb = sys.theory(A), sys.theory(B)
    if ta != tb:
        diff = _sorted_formulas(sys, ta ^ tb)[0]
        side = "first" if diff in ta else "second"
        return f"theories differ: {sys.format_formula(diff)} holds only in the {side}"
    p = _better(sys, minimal_proofs(sys, A), minimal_proofs(sys, B), strict=False)
    if p is not None:
        return f"{sys.format_proof(p)} has no proof at least as good in the second"
    return None


def simpler(sys, A: Iterable, B: Iterable) -> bool:
    """A ⊑ B: same theory, and B's proofs are at least as good as A's."""
    return simpler_witness(sys, A, B) is None


def redundant(sys, A: Iterable) -> FrozenSet:
    A = frozenset(A)
    return frozenset(r for r in A if simpler(sys, A, A - {r}))


@dataclass
class Verdict:
    contracted: bool
    saturated: bool
    complete: bool
    canonical: bool
    witnesses: Dict[str, str] = field(default_factory=dict)

    def flags(self) -> Dict[str, bool]:
        return {"contracted": self.contracted, "saturated": self.saturated,
                "complete": self.complete, "canonical": self.canonical}

    def to_json(self) -> dict:
        return {**self.flags(), "witnesses": dict(sorted(self.witnesses.items()))}


def classify(sys, A: Iterable) -> Verdict:
    A = frozenset(A)
    wit: Dict[str, str] = {}

    used = premises_of(sys, minimal_proofs(sys, A))
    unused = _sorted_formulas(sys, A - used)
    if unused:
        wit["contracted"] = (f"{sys.format_formula(unused[0])} is not a premise "
                             "of any minimal proof")

    nf = normal_form_proofs(sys, A)
    unsupported = [n for n in nf if not sys.premises(n) <= A]
    if unsupported:
        wit["saturated"] = (f"normal-form proof {sys.format_proof(unsupported[0])} "
                            "needs premises outside the presentation")

    covered = {sys.conclusion(n) for n in nf if sys.premises(n) <= A}
    missing = _sorted_formulas(sys, sys.theory(A) - covered)
    if missing:
        wit["complete"] = (f"theorem {sys.format_formula(missing[0])} has no "
                           "normal-form proof from the presentation")

    contracted = not unused
    saturated = not unsupported
    canonical = contracted and saturated
    if not canonical:
        wit["canonical"] = wit.get("saturated") or wit["contracted"]
    return Verdict(contracted, saturated, not missing, canonical, wit)


@dataclass
class PostulateReport:
    checked: int
    violations: List[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"checked": self.checked, "ok": self.ok,
                "violations": [{"kind": v.kind, "proofs": list(v.proofs), "message": v.message}
                               for v in self.violations]}


def check_postulates(sys, sample: Iterable) -> PostulateReport:
    """Check Triv, Sub and Cut on a finite sample of proofs."""
    sample = _sorted_proofs(sys, sample)
    fmt = sys.format_proof
    out: List[Violation] = []
    for p in sample:
        subs = sys.subproofs(p)
        if p not in subs:
            out.append(Violation("structure", (fmt(p),), f"{fmt(p)} is not its own subproof"))
        for a in _sorted_formulas(sys, sys.premises(p)):
            has = getattr(sys, "has_trivial", lambda _a: True)(a)
            if not has or sys.trivial(a) not in subs:
                out.append(Violation("triv", (fmt(p),),
                                     f"{fmt(p)} uses {sys.format_formula(a)} without its trivial proof"))
        for q in _sorted_proofs(sys, subs):
            if not sys.premises(q) <= sys.premises(p):
                out.append(Violation("sub", (fmt(p), fmt(q)),
                                     f"subproof {fmt(q)} of {fmt(p)} has extra premises"))
    out += cut_violations(sys, sample)
    return PostulateReport(len(sample), out)
