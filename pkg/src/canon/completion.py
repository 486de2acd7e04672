"""Completion mechanisms, derivation traces and their validators."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import framework as fw
from .terms import LPO, Formula, Signature, SizeOrder, TermOrder, eq, multiset_gt

STEP_KINDS = ("expand", "contract", "deduce", "delete", "critical", "bulk", "mass")
MECHANISMS = ("critical", "bulk", "mass")
DEFAULT_MAX_STEPS = 1000


class BoundInsufficient(RuntimeError):
    """No strictly smaller proof was found for some critical proof."""


@dataclass(frozen=True)
class Step:
    kind: str
    added: Tuple = ()
    removed: Tuple = ()


@dataclass
class DerivationTrace:
    """States A_0..A_n; the derivation is read as constant after A_n."""

    states: List[FrozenSet]
    steps: List[Step] = field(default_factory=list)
    terminated: bool = True

    def __post_init__(self):
        if not self.states:
            raise ValueError("a trace needs at least one state")
        if len(self.steps) != len(self.states) - 1:
            raise ValueError("a trace needs exactly one step between consecutive states")
        for i, s in enumerate(self.steps):
            if s.kind not in STEP_KINDS:
                raise ValueError(f"step {i}: unknown kind {s.kind!r}")
            expect = (self.states[i] - frozenset(s.removed)) | frozenset(s.added)
            if expect != self.states[i + 1]:
                raise ValueError(f"step {i} does not turn state {i} into state {i + 1}")

    @classmethod
    def start(cls, A: Iterable) -> "DerivationTrace":
        return cls([frozenset(A)])

    def push(self, kind: str, new_state: Iterable, key=None) -> None:
        new_state = frozenset(new_state)
        cur = self.states[-1]
        order = (lambda xs: tuple(sorted(xs, key=key))) if key else tuple
        self.steps.append(Step(kind, order(new_state - cur), order(cur - new_state)))
        self.states.append(new_state)

    @property
    def final(self) -> FrozenSet:
        return self.states[-1]


def trace_sets(t: DerivationTrace) -> Tuple[FrozenSet, FrozenSet]:
    """(limit, union): the persisting formulas and everything that ever appeared."""
    union = frozenset().union(*t.states)
    return t.final, union


# ------------------------------------------------------------ trace files

def dump_trace(sys, t: DerivationTrace) -> str:
    fmt = sys.format_formula
    srt = lambda xs: [fmt(x) for x in sorted(xs, key=sys.formula_key)]
    doc = {
        "states": [srt(s) for s in t.states],
        "steps": [{"kind": s.kind, "added": srt(s.added), "removed": srt(s.removed)}
                  for s in t.steps],
        "terminated": t.terminated,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def load_trace(sys, text: str) -> DerivationTrace:
    try:
        doc = json.loads(text)
        parse = sys.parse_formula
        states = [frozenset(parse(x) for x in s) for s in doc["states"]]
        steps = [Step(s["kind"], tuple(parse(x) for x in s.get("added", [])),
                      tuple(parse(x) for x in s.get("removed", []))) for s in doc["steps"]]
        return DerivationTrace(states, steps, bool(doc.get("terminated", True)))
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise ValueError(f"malformed trace file: {e}") from None


# ------------------------------------------------------------ step operators

def critical_proofs(sys, A: Iterable) -> List:
    """Minimal non-normal-form proofs whose proper subproofs are all normal-form."""
    nf = set(fw.normal_form_proofs(sys, A))
    out = []
    for p in fw.minimal_proofs(sys, A):
        if p in nf:
            continue
        if all(q in nf for q in sys.subproofs(p) if q is not p):
            out.append(p)
    return out


def contract(sys, B: Iterable) -> FrozenSet:
    B = frozenset(B)
    return B - fw.redundant(sys, B)


def critical_step(sys, A: Iterable) -> FrozenSet:
    A = frozenset(A)
    return contract(sys, A | {sys.conclusion(p) for p in critical_proofs(sys, A)})


def bulk_witnesses(sys, A: Iterable) -> List:
    """A set of normal-form proofs beating every critical proof.

    Critical proofs are visited in canonical order; each one not already
    beaten gets the canonically least normal-form proof below it.
    """
    A = frozenset(A)
    nf: Dict[object, List] = {}
    for n in fw.normal_form_proofs(sys, A):
        nf.setdefault(sys.conclusion(n), []).append(n)
    chosen: List = []
    for p in critical_proofs(sys, A):
        if any(sys.conclusion(q) == sys.conclusion(p) and sys.gt(p, q) for q in chosen):
            continue
        below = [n for n in nf.get(sys.conclusion(p), ()) if sys.gt(p, n)]
        if not below:
            raise BoundInsufficient(
                f"no normal-form proof below critical proof {sys.format_proof(p)}; "
                "enlarge the bounds")
        chosen.append(min(below, key=sys.proof_key))
    return chosen


def bulk_step(sys, A: Iterable) -> FrozenSet:
    A = frozenset(A)
    return contract(sys, A | fw.premises_of(sys, bulk_witnesses(sys, A)))


def mass_proofs(sys, A: Iterable) -> List:
    """Minimal proofs beaten by their conclusion's trivial proof, no proper
    subproof of which is."""
    def beaten(q) -> bool:
        return sys.gt(q, sys.trivial(sys.conclusion(q)))

    return [p for p in fw.minimal_proofs(sys, A)
            if beaten(p) and not any(beaten(q) for q in sys.subproofs(p) if q is not p)]


def mass_step(sys, A: Iterable) -> FrozenSet:
    A = frozenset(A)
    return contract(sys, A | {sys.conclusion(p) for p in mass_proofs(sys, A)})


_STEPS: Dict[str, Callable] = {"critical": critical_step, "bulk": bulk_step, "mass": mass_step}


def run_completion(sys, A0: Iterable, mechanism: str,
                   max_steps: int = DEFAULT_MAX_STEPS) -> DerivationTrace:
    """Iterate one mechanism until a fixpoint.

    The step confirming the fixpoint is recorded only when it is the
    first step, so a trace always shows at least one step.
    """
    if mechanism not in _STEPS:
        raise ValueError(f"unknown mechanism {mechanism!r}")
    step = _STEPS[mechanism]
    trace = DerivationTrace.start(A0)
    for _ in range(max_steps):
        nxt = step(sys, trace.final)
        if nxt == trace.final:
            if not trace.steps:
                trace.push(mechanism, nxt, sys.formula_key)
            return trace
        trace.push(mechanism, nxt, sys.formula_key)
    trace.terminated = step(sys, trace.final) == trace.final
    return trace


# ------------------------------------------------------------ ground completion

def _check_total(order: TermOrder, sig: Signature) -> None:
    if isinstance(order, SizeOrder) and not sig.is_tally:
        raise ValueError("the size order is not total on this signature; give a precedence")
    if isinstance(order, LPO):
        missing = [n for n, _ in sig.symbols if n not in order.precedence]
        if missing:
            raise ValueError(f"the term order does not rank {', '.join(missing)}")


def _deduce(E: Sequence[Formula], order: TermOrder) -> Optional[Tuple[Formula, Formula]]:
    """The first Deduce inference under the default policy."""
    rules = []
    for r in E:
        u, v = r.lhs, r.rhs
        if order.gt(v, u):
            u, v = v, u
        if order.gt(u, v):
            rules.append((r, u, v))
    for e in E:
        for side in e.display_sides:
            w = e.other(side)
            for path, sub in side.positions():
                for r, u, v in rules:
                    if r is e or sub is not u:
                        continue
                    # the rewritten equation must exceed the rule it is rewritten by
                    if not _mul_gt(order, e.sides, r.sides):
                        continue
                    return e, eq(w, side.replace_at(path, v))
    return None


def _mul_gt(order: TermOrder, xs, ys) -> bool:
    return multiset_gt(xs, ys, order.gt)


def ground_completion(E: Iterable[Formula], term_order: TermOrder,
                      sig: Optional[Signature] = None,
                      max_steps: int = 100000) -> DerivationTrace:
    """Deduce/Delete completion of ground equations into a canonical basis.

    Policy: Delete eagerly; otherwise rewrite the smallest reducible
    equation at its leftmost-innermost redex.
    """
    E = frozenset(E)
    for f in E:
        if not f.is_eq:
            raise ValueError(f"ground completion takes equations only, got {f}")
    if sig is not None:
        _check_total(term_order, sig)
    key = lambda f: f.key
    trace = DerivationTrace.start(E)
    for _ in range(max_steps):
        cur = sorted(trace.final, key=key)
        trivial = [f for f in cur if f.trivial]
        if trivial:
            trace.push("delete", trace.final - {trivial[0]}, key)
            continue
        inf = _deduce(cur, term_order)
        if inf is None:
            return trace
        old, new = inf
        trace.push("deduce", (trace.final - {old}) | {new}, key)
    trace.terminated = False
    return trace


# ------------------------------------------------------------ validation

@dataclass
class DerivationVerdict:
    good: bool
    fair: bool
    uniformly_fair: bool
    contracting: bool
    saturating: bool
    completing: bool
    canonical: bool
    witnesses: Dict[str, str] = field(default_factory=dict)
    bounds: Optional[dict] = None

    def flags(self) -> Dict[str, bool]:
        return {k: getattr(self, k) for k in ("good", "fair", "uniformly_fair", "contracting",
                                               "saturating", "completing", "canonical")}

    def to_json(self) -> dict:
        out = {**self.flags(), "witnesses": dict(sorted(self.witnesses.items()))}
        if self.bounds:
            out["bounds"] = self.bounds
        return out


def check_derivation(sys, t: DerivationTrace) -> DerivationVerdict:
    fmt_p, fmt_f = sys.format_proof, sys.format_formula
    wit: Dict[str, str] = {}

    good = True
    for i in range(len(t.states) - 1):
        why = fw.simpler_witness(sys, t.states[i], t.states[i + 1])
        if why is not None:
            good = False
            wit["good"] = f"step {i}: {why}"
            break

    limit, union = trace_sets(t)
    mu_union = fw.minimal_proofs(sys, union)

    loser = fw._better(sys, critical_proofs(sys, limit), mu_union, strict=True)
    if loser is not None:
        wit["fair"] = f"critical proof {fmt_p(loser)} is never beaten"

    a0_sharp = fw.sharp(sys, t.states[0])
    trivials = [sys.trivial(a) for a in sorted(limit - a0_sharp, key=sys.formula_key)]
    unbeaten = fw._better(sys, trivials, mu_union, strict=True)
    if unbeaten is not None:
        wit["uniformly_fair"] = f"trivial proof {fmt_p(unbeaten)} is never beaten"

    stuck = sorted(fw.redundant(sys, union) & limit, key=sys.formula_key)
    if stuck:
        wit["contracting"] = f"{fmt_f(stuck[0])} is redundant yet persists"

    nf0 = fw.normal_form_proofs(sys, t.states[0])
    lost = [n for n in nf0 if not sys.premises(n) <= limit]
    if lost:
        wit["saturating"] = f"normal-form proof {fmt_p(lost[0])} is not supported by the limit"

    reached = {sys.conclusion(n) for n in nf0 if sys.premises(n) <= limit}
    missing = sorted(sys.theory(t.states[0]) - reached, key=sys.formula_key)
    if missing:
        wit["completing"] = f"theorem {fmt_f(missing[0])} has no normal-form proof in the limit"

    saturating, contracting = not lost, not stuck
    canonical = saturating and contracting
    if not canonical:
        wit["canonical"] = wit.get("saturating") or wit["contracting"]
    bounds = None if getattr(sys, "exact", False) else {
        k: v for k, v in sys.describe().items() if k.startswith("max_")}
    return DerivationVerdict(good, loser is None, unbeaten is None, contracting,
                             saturating, not missing, canonical, wit, bounds)
