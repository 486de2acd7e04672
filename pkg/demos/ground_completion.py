"""Deduce/Delete ground completion, checked against the canonical basis.

Each step rewrites one equation with a smaller one. The resulting trace is
good and fair, and it ends at the canonical basis for the completion ordering.
"""
from canon import (Bounds, EquationalSystem, Signature, check_derivation, ground_completion,
                   parse_formula, parse_term_order, preset, sharp)
from canon.terms import SizeOrder

cases = [
    (Signature.tally(), SizeOrder(), ["4 = 2", "4 = 0"], Bounds(7, 5)),
    (Signature.parse("s/1 a/0 b/0 c/0"), parse_term_order("s > a > b > c"),
     ["a = c", "s(a) = b"], Bounds(4, 5)),
]
for sig, order, text, bounds in cases:
    E = {parse_formula(t) for t in text}
    system = EquationalSystem(sig, preset("completion", order), bounds)
    t = ground_completion(E, order, sig)
    print("input:", text)
    for step, state in zip(t.steps, t.states[1:]):
        print(f"  {step.kind:6} -> {sorted(map(system.format_formula, state))}")
    v = check_derivation(system, t)
    print("  verdict:", {k: getattr(v, k) for k in ("good", "fair", "contracting", "canonical")})
    print("  equals sharp:", t.final == sharp(system, E))
