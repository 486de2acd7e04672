"""The canonical basis of a small tally theory depends on the proof ordering.

Start from 4 = 2 and 4 = 0. Every preset proves the same theorems. Each one
keeps a different set of premises, namely those needed by its normal-form
proofs.
"""
from canon import Bounds, EquationalSystem, Signature, classify, parse_formula, preset, sharp

A = {parse_formula("4 = 2"), parse_formula("4 = 0")}
tally = Signature.tally()


def show(system, fs):
    return ", ".join(sorted(system.format_formula(f) for f in fs))


for name, size in [("completion", 7), ("congruence_closure", 9), ("deductive_closure", 5)]:
    system = EquationalSystem(tally, preset(name), Bounds(size, 5))
    basis = sharp(system, A)
    print(f"{name:20} basis: {show(system, basis)}")
    print(f"{'':20} start verdict: {classify(system, A).flags()}")
    print(f"{'':20} basis verdict: {classify(system, basis).flags()}")

# inconsistent input: under refutation ordering everything collapses to 0 != 0
system = EquationalSystem(tally, preset("refutation"), Bounds(5, 5))
bad = {parse_formula("1 != 1"), parse_formula("1 != 0")}
print(f"{'refutation':20} basis: {show(system, sharp(system, bad))}")
