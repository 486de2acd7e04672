"""How the proof orderings rank a few characteristic pairs of proofs."""
from canon import Signature, compare_proofs, parse_term, preset
from canon.proofs import congruence, format_proof, intro, succ, trans
from canon.terms import eq, parse_term_order

sig = Signature.parse("s/1 a/0 b/0 c/0")
order = parse_term_order("s > a > b > c")
total, sup = preset("ground_completion_total", order), preset("superposition", order)
t = parse_term


def show(cfg, p, q):
    print(f"  {format_proof(p):40} {compare_proofs(cfg, p, q, sig).name:12} {format_proof(q)}")


print("rewriting s(a) to s(c) with a = c gives a smaller proof:")
show(total, intro(eq(t("b"), t("s(a)"))),
     trans(intro(eq(t("b"), t("s(c)"))), succ(intro(eq(t("a"), t("c"))))))

print("congruence pushed inside transitivity is smaller:")
w, m, v = t("b"), t("s(a)"), t("c")
show(total, trans(congruence("s", intro(eq(w, m))), congruence("s", intro(eq(m, v)))),
     congruence("s", trans(intro(eq(w, m)), intro(eq(m, v)))))

print("a peak is greater than the direct equation, a valley is smaller:")
show(sup, trans(intro(eq(t("b"), t("s(a)"))), intro(eq(t("s(a)"), t("c")))), intro(eq(t("b"), t("c"))))
show(sup, trans(intro(eq(t("s(a)"), t("c"))), intro(eq(t("c"), t("b")))), intro(eq(t("s(a)"), t("b"))))
