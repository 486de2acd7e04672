"""Ground equational proof terms over the combinators Z, I, S, T, P, F.

* ``Z``             proves ``0 = 0`` for the signature's designated constant.
* ``I(f)``          introduces the premise ``f`` (the trivial proof of ``f``).
* ``S_g(p1..pn)``   functional reflexivity: from ``u_i = v_i`` infer
                    ``g(u..) = g(v..)``; with ``n = 0`` it proves ``c = c``
                    for a constant ``c`` other than the one ``Z`` covers.
* ``T(p, q)``       transitivity with unordered branches; either two
                    equations sharing a term, or an equation and a
                    disequation sharing a term.
* ``P(a, c)``       projection: concludes whatever ``c`` concludes while
                    carrying the premises of ``a``.
* ``F_{j=k}(p)``    from some ``t != t`` infer the equation ``j = k``.

Proof objects are interned, so structurally equal proofs are the same
object.  Every node records its conclusion, which disambiguates ``T``
and ``S`` nodes whose children admit more than one reading.
"""
from __future__ import annotations

from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .terms import EQ, NEQ, Formula, Signature, Term, eq, format_term, neq

Z, I, S, T, P, F = "Z", "I", "S", "T", "P", "F"
RULES = (Z, I, S, T, P, F)


class Proof:
    __slots__ = ("rule", "concl", "children", "sym", "premises", "depth",
                 "size", "key", "_subproofs", "__weakref__")
    _table: Dict[tuple, "Proof"] = {}

    def __new__(cls, rule: str, concl: Formula, children: Sequence["Proof"] = (),
                sym: Optional[str] = None):
        if rule not in RULES:
            raise ValueError(f"unknown rule {rule!r}")
        children = tuple(children)
        if rule == T:
            children = tuple(sorted(children, key=lambda p: p.key))
        k = (rule, concl, children, sym)
        p = cls._table.get(k)
        if p is None:
            p = object.__new__(cls)
            p.rule = rule
            p.concl = concl
            p.children = children
            p.sym = sym
            prem = frozenset((concl,)) if rule == I else frozenset()
            for c in children:
                prem |= c.premises
            p.premises = prem
            p.depth = 1 + max((c.depth for c in children), default=0)
            p.size = 1 + sum(c.size for c in children)
            p.key = (p.size, rule, sym or "", concl.key, tuple(c.key for c in children))
            p._subproofs = None
            cls._table[k] = p
        return p

    def __reduce__(self):
        return (Proof, (self.rule, self.concl, self.children, self.sym))

    @property
    def subproofs(self) -> FrozenSet["Proof"]:
        """All subproofs, including the proof itself."""
        if self._subproofs is None:
            out = {self}
            for c in self.children:
                out |= c.subproofs
            self._subproofs = frozenset(out)
        return self._subproofs

    @property
    def proper_subproofs(self) -> FrozenSet["Proof"]:
        return self.subproofs - {self}

    def positions(self) -> Iterator[Tuple[Tuple[int, ...], "Proof"]]:
        yield (), self
        for i, c in enumerate(self.children):
            for path, q in c.positions():
                yield (i,) + path, q

    def replace_at(self, path: Tuple[int, ...], new: "Proof") -> "Proof":
        if not path:
            return new
        kids = list(self.children)
        kids[path[0]] = kids[path[0]].replace_at(path[1:], new)
        return Proof(self.rule, self.concl, kids, self.sym)

    def __repr__(self) -> str:
        return f"Proof({format_proof(self)!r})"

    def __str__(self) -> str:
        return format_proof(self)


# ----------------------------------------------------------- constructors

def z_proof(sig: Signature) -> Proof:
    c = Term(sig.zero)
    return Proof(Z, eq(c, c))


def intro(f: Formula) -> Proof:
    """The trivial proof of ``f``."""
    return Proof(I, f)


def const_refl(c: str) -> Proof:
    t = Term(c)
    return Proof(S, eq(t, t), (), sym=c)


def congruence(g: str, *children: Proof, concl: Optional[Formula] = None) -> Proof:
    """``S_g`` over ``children``; the conclusion defaults to reading each
    child's equation left to right."""
    if concl is None:
        for c in children:
            if not c.concl.is_eq:
                raise ValueError("S needs equational premises")
        concl = eq(Term(g, [c.concl.lhs for c in children]),
                   Term(g, [c.concl.rhs for c in children]))
    return Proof(S, concl, children, sym=g)


def succ(p: Proof, times: int = 1) -> Proof:
    for _ in range(times):
        p = congruence("s", p)
    return p


def reflexivity(sig: Signature, t: Term) -> Proof:
    """The S-tower proof of ``t = t``."""
    if not t.args:
        return z_proof(sig) if t.head == sig.zero else const_refl(t.head)
    return congruence(t.head, *(reflexivity(sig, a) for a in t.args))


def trans_conclusions(a: Formula, b: Formula) -> List[Formula]:
    """Every conclusion a T node over premises ``a`` and ``b`` may have."""
    if a.kind == NEQ and b.kind == NEQ:
        return []
    if a.kind == NEQ:
        a, b = b, a
    out = []
    for j in set(a.sides):
        if j in b.sides:
            out.append(Formula(b.kind, a.other(j), b.other(j)))
    return sorted(set(out), key=lambda f: f.key)


def trans(p: Proof, q: Proof, concl: Optional[Formula] = None) -> Proof:
    options = trans_conclusions(p.concl, q.concl)
    if concl is None:
        if len(options) != 1:
            raise ValueError(f"T({p}, {q}) has {len(options)} possible conclusions")
        concl = options[0]
    return Proof(T, concl, (p, q))


def project(a: Proof, c: Proof) -> Proof:
    return Proof(P, c.concl, (a, c))


def explode(p: Proof, concl: Formula) -> Proof:
    return Proof(F, concl, (p,))


def shared_term(p: Proof) -> Optional[Term]:
    """For a T node, the term its two branches share (None if ambiguous)."""
    if p.rule != T:
        return None
    a, b = (c.concl for c in p.children)
    if a.kind == NEQ:
        a, b = b, a
    for j in a.sides:
        if j in b.sides and Formula(b.kind, a.other(j), b.other(j)) is p.concl:
            return j
    return None


# --------------------------------------------------------------- checking

def proof_error(sig: Signature, p: Proof, path: str = "") -> Optional[str]:
    """Return a diagnostic naming the first bad node, or None if ``p`` is valid."""
    where = path or "root"
    for t in p.concl.sides:
        try:
            sig.check_term(t)
        except ValueError as e:
            return f"{where}: {e}"
    arity = {Z: 0, I: 0, T: 2, P: 2, F: 1}
    if p.rule in arity and len(p.children) != arity[p.rule]:
        return f"{where}: {p.rule} takes {arity[p.rule]} subproofs"
    for i, c in enumerate(p.children):
        err = proof_error(sig, c, f"{path}.{i}" if path else str(i))
        if err:
            return err
    f = p.concl
    if p.rule == Z:
        zero = Term(sig.zero)
        if f is not eq(zero, zero):
            return f"{where}: Z proves {sig.zero} = {sig.zero}, not {f}"
    elif p.rule == S:
        g = p.sym
        if g is None or g not in sig or sig.arity(g) != len(p.children):
            return f"{where}: S needs one subproof per argument of its symbol"
        if not p.children and g == sig.zero:
            return f"{where}: reflexivity of {g} is the axiom Z"
        if not f.is_eq or f.lhs.head != g or f.rhs.head != g:
            return f"{where}: S_{g} must conclude an equation between {g}-terms"
        for i, c in enumerate(p.children):
            if not c.concl.is_eq or c.concl is not eq(f.lhs.args[i], f.rhs.args[i]):
                return f"{where}: argument {i} of {f} is not justified by {c.concl}"
    elif p.rule == T:
        if f not in trans_conclusions(p.children[0].concl, p.children[1].concl):
            return f"{where}: T cannot conclude {f} from {p.children[0].concl} and {p.children[1].concl}"
    elif p.rule == P:
        if f is not p.children[1].concl:
            return f"{where}: P must conclude what its second branch concludes"
    elif p.rule == F:
        c = p.children[0].concl
        if c.kind != NEQ or not c.trivial:
            return f"{where}: F needs a proof of some t != t, got {c}"
        if not f.is_eq:
            return f"{where}: F concludes an equation"
    return None


def check_proof(sig: Signature, p: Proof) -> bool:
    return proof_error(sig, p) is None


# -------------------------------------------------------------- printing

def format_proof(p: Proof, numerals: bool = True) -> str:
    def fmt_f(f: Formula) -> str:
        a, b = (format_term(t, numerals) for t in f.display_sides)
        return f"{a},{b}" if f.is_eq else f"{a}!={b}"

    if p.rule == Z:
        return "Z"
    if p.rule == I:
        return f"I({fmt_f(p.concl)})"
    if p.rule == S:
        if not p.children:
            return f"S_{p.sym}"
        if p.sym == "s" and len(p.children) == 1:
            n, q = 0, p
            while q.rule == S and q.sym == "s" and len(q.children) == 1:
                n, q = n + 1, q.children[0]
            inner = format_proof(q, numerals)
            return f"S({inner})" if n == 1 else f"S^{n}({inner})"
        return f"S_{p.sym}({','.join(format_proof(c, numerals) for c in p.children)})"
    if p.rule == F:
        return f"F[{p.concl.format(numerals)}]({format_proof(p.children[0], numerals)})"
    kids = ",".join(format_proof(c, numerals) for c in p.children)
    if p.rule == T and len(trans_conclusions(*(c.concl for c in p.children))) > 1:
        return f"T[{p.concl.format(numerals)}]({kids})"
    return f"{p.rule}({kids})"
