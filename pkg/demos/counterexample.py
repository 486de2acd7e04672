"""Fairness with respect to critical proofs is not enough on its own.

From {b}, the only critical proof is b/a. Its conclusion a is added and
then contracted away as redundant. The critical mechanism therefore stays at
{b} and b/a is never beaten. It never adds c, so it never reaches the
canonical basis {b, c}. The bulk and mass mechanisms get there in one step.
"""
from canon import check_derivation, classify, run_completion, sharp
from canon.completion import critical_proofs
from canon.fixtures import abstract_fixture

s = abstract_fixture("counterexample")
print("canonical basis of {b}:", sorted(sharp(s, {"b"})))
print("critical proofs of {b}:", [p.id for p in critical_proofs(s, {"b"})])

for mechanism in ("critical", "bulk", "mass"):
    t = run_completion(s, {"b"}, mechanism)
    v = check_derivation(s, t)
    print(f"{mechanism:8} states={[sorted(x) for x in t.states]}"
          f" fair={v.fair} uniformly_fair={v.uniformly_fair} canonical={v.canonical}")
    if not v.canonical:
        print("         ", classify(s, t.final).witnesses)

# the uniqueness of minimal proofs matters: with no ordering at all,
# both proofs of b stay minimal and nothing moves
u = abstract_fixture("unique_needed")
print("no ordering:", [sorted(x) for x in run_completion(u, {"a"}, "bulk").states])
