"""Three completion mechanisms on the tally example and on a small abstract system.

The critical mechanism only adds conclusions of critical proofs. The bulk and
mass mechanisms may add premises that normal-form proofs need directly.
"""
from canon import (Bounds, EquationalSystem, Signature, check_derivation, parse_formula,
                   preset, run_completion, sharp)
from canon.fixtures import abstract_fixture

tally = EquationalSystem(Signature.tally(), preset("completion"), Bounds(7, 5))
A = {parse_formula("4 = 2"), parse_formula("4 = 0")}
print("target:", sorted(map(tally.format_formula, sharp(tally, A))))
for mechanism in ("critical", "bulk", "mass"):
    t = run_completion(tally, A, mechanism)
    states = [sorted(map(tally.format_formula, s)) for s in t.states]
    v = check_derivation(tally, t)
    print(f"  {mechanism:8} {states}  fair={v.fair} canonical={v.canonical}")

# on the fan system c has three incomparable minimal proofs: bulk keeps one
# witness, mass keeps c, and neither reaches the basis
fan = abstract_fixture("fan")
for mechanism in ("bulk", "mass"):
    t = run_completion(fan, {"c", "d"}, mechanism)
    print(f"fan {mechanism:5} {[sorted(s) for s in t.states]}  sharp={sorted(sharp(fan, {'c', 'd'}))}")
