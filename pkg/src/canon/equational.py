"""Ground equational backend: theory oracle, proof enumeration, minimal proofs.

Everything is computed relative to a finite universe of terms (all terms
up to ``Bounds.max_term_size`` nodes).  The theory restricted to that
universe comes from congruence closure, which is exact because the
universe is closed under subterms.

Minimal proofs are found by a fixpoint over per-conclusion antichains.
A minimal proof only has minimal subproofs, and it never nests two
subproofs with the same conclusion, so building candidates from the
current antichains and keeping only undominated ones converges to the
exact set of minimal proofs over the universe.  Projection nodes are
never minimal (``P(a, c)`` is larger than its own branch ``c``), and
neither is a transitivity step with a reflexive branch, so the fixpoint
skips both.
"""
from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .orderings import OrderingConfig, ProofOrder, CompareResult
from .proofs import (F, I, P, S, T, Z, Proof, check_proof, const_refl, explode,
                     format_proof, intro, project, trans_conclusions, z_proof)
from .terms import (EQ, NEQ, Formula, Signature, Term, eq, format_term, infer_signature,
                    neq, parse_formula, universe)

log = logging.getLogger(__name__)

DEFAULT_MAX_NODES = 10 ** 6


class BoundExceeded(RuntimeError):
    """A bounded computation would exceed the node budget."""


class NotATheorem(ValueError):
    pass


def node_budget() -> int:
    raw = os.environ.get("CANON_MAX_NODES")
    return int(raw) if raw else DEFAULT_MAX_NODES


@dataclass(frozen=True)
class Bounds:
    max_term_size: int = 6
    max_proof_depth: int = 5

    def __post_init__(self):
        if self.max_term_size < 1 or self.max_proof_depth < 1:
            raise ValueError("bounds must be positive")


# ------------------------------------------------------ congruence closure

class _UnionFind:
    def __init__(self, items: Iterable[Term]):
        self.parent = {t: t for t in items}

    def find(self, t: Term) -> Term:
        root = t
        while self.parent[root] is not root:
            root = self.parent[root]
        while self.parent[t] is not root:
            self.parent[t], t = root, self.parent[t]
        return root

    def union(self, a: Term, b: Term) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra is rb:
            return False
        if ra.key < rb.key:
            ra, rb = rb, ra
        self.parent[ra] = rb
        return True


def _closure(terms: Iterable[Term], equations: Iterable[Formula]) -> _UnionFind:
    """Congruence closure over a subterm-closed term set."""
    terms = list(terms)
    uf = _UnionFind(terms)
    for e in equations:
        uf.union(e.lhs, e.rhs)
    compound = [t for t in terms if t.args]
    changed = True
    while changed:
        changed = False
        table: Dict[tuple, Term] = {}
        for t in compound:
            sig = (t.head, tuple(uf.find(a) for a in t.args))
            other = table.setdefault(sig, t)
            if other is not t and uf.union(other, t):
                changed = True
    return uf


def _subterm_closure(formulas: Iterable[Formula]) -> Set[Term]:
    out: Set[Term] = set()
    for f in formulas:
        for side in f.sides:
            out.update(side.subterms())
    return out


class _Theory:
    """Membership in Th(A) via congruence closure over a subterm-closed set."""

    def __init__(self, A: Iterable[Formula], terms: Iterable[Term]):
        A = list(A)
        self.uf = _closure(terms, (f for f in A if f.is_eq))
        find = self.uf.find
        self.diseqs = {frozenset((find(f.lhs), find(f.rhs))) for f in A if not f.is_eq}
        self.inconsistent = any(len(d) == 1 for d in self.diseqs)

    def holds(self, f: Formula) -> bool:
        if self.inconsistent:
            return True
        a, b = self.uf.find(f.lhs), self.uf.find(f.rhs)
        if f.is_eq:
            return a is b
        return frozenset((a, b)) in self.diseqs


def decide_membership(A: Iterable[Formula], f: Formula) -> bool:
    """Whether ``f`` is a theorem of ``A`` (unbounded, by congruence closure)."""
    A = list(A)
    return _Theory(A, _subterm_closure(A + [f])).holds(f)


def congruence_classes(A: Iterable[Formula], b: Bounds,
                       sig: Optional[Signature] = None) -> List[FrozenSet[Term]]:
    """The finest congruence on the bounded universe containing A's equations,
    as classes sorted by their least member."""
    A = list(A)
    sig = sig or infer_signature(t for f in A for t in f.sides)
    U = universe(sig, b.max_term_size)
    _check_within(A, U)
    uf = _closure(U, (f for f in A if f.is_eq))
    groups: Dict[Term, List[Term]] = {}
    for t in U:
        groups.setdefault(uf.find(t), []).append(t)
    classes = [frozenset(g) for g in groups.values()]
    return sorted(classes, key=lambda c: min(t.key for t in c))


def _check_within(A: Iterable[Formula], U: Sequence[Term]) -> None:
    inside = set(U)
    for f in A:
        for t in f.sides:
            if t not in inside:
                raise ValueError(f"{f} lies outside the term universe; raise --max-term-size")


def all_formulas(U: Sequence[Term]) -> List[Formula]:
    out = []
    for i, a in enumerate(U):
        for b in U[i:]:
            out.append(eq(a, b))
            out.append(neq(a, b))
    return sorted(set(out), key=lambda f: f.key)


def bounded_theory(A: Iterable[Formula], U: Sequence[Term]) -> FrozenSet[Formula]:
    """Th(A) restricted to formulas whose sides lie in ``U``."""
    A = list(A)
    _check_within(A, U)
    th = _Theory(A, U)
    return frozenset(f for f in all_formulas(U) if th.holds(f))


def trivial_proof(f: Formula) -> Proof:
    return intro(f)


# ------------------------------------------------------ literal enumeration

def _initial(sig: Signature, A: Iterable[Formula]) -> List[Proof]:
    out = [z_proof(sig)]
    out += [const_refl(c) for c in sig.constants if c != sig.zero]
    out += [intro(f) for f in A]
    return out


def _same_head_pairs(U: Sequence[Term]) -> List[Tuple[Term, Term]]:
    by_head: Dict[Tuple[str, int], List[Term]] = {}
    for t in U:
        if t.args:
            by_head.setdefault((t.head, len(t.args)), []).append(t)
    pairs = []
    for ts in by_head.values():
        for i, a in enumerate(ts):
            for b in ts[i:]:
                pairs.append((a, b))
    return pairs


def _proof_key(p: Proof):
    return p.key


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BoundExceeded(
                f"proof enumeration exceeded {self.limit} nodes; "
                "lower the bounds or raise CANON_MAX_NODES")


def enumerate_proofs(A: Iterable[Formula], b: Bounds, sig: Optional[Signature] = None,
                     projections: bool = True) -> List[Proof]:
    """Every valid proof with premises in ``A``, depth at most
    ``b.max_proof_depth`` and all terms in the bounded universe."""
    A = sorted(set(A), key=lambda f: f.key)
    sig = sig or infer_signature(t for f in A for t in f.sides)
    U = universe(sig, b.max_term_size)
    _check_within(A, U)
    budget = _Budget(node_budget())
    eqs = [f for f in all_formulas(U) if f.is_eq]
    pairs = _same_head_pairs(U)

    layers: List[List[Proof]] = [_initial(sig, A)]
    seen: Set[Proof] = set(layers[0])
    by_concl: Dict[Formula, List[Proof]] = {}
    for p in layers[0]:
        by_concl.setdefault(p.concl, []).append(p)

    for _depth in range(2, b.max_proof_depth + 1):
        prev = set(layers[-1])
        older = [p for layer in layers for p in layer]
        new: List[Proof] = []

        def emit(p: Proof) -> None:
            if p not in seen:
                budget.spend()
                seen.add(p)
                new.append(p)

        for l, r in pairs:
            pools = [by_concl.get(eq(x, y), []) for x, y in zip(l.args, r.args)]
            if not all(pools):
                continue
            for kids in itertools.product(*pools):
                if any(k in prev for k in kids):
                    emit(Proof(S, eq(l, r), kids, sym=l.head))
        for p in layers[-1]:
            for q in older:
                if q in prev and q.key < p.key:
                    continue  # unordered pair already produced from the other side
                for c in trans_conclusions(p.concl, q.concl):
                    emit(Proof(T, c, (p, q)))
                if projections:
                    emit(project(p, q))
                    if q is not p:
                        emit(project(q, p))
            if p.concl.kind == NEQ and p.concl.trivial:
                for e in eqs:
                    emit(explode(p, e))
        new.sort(key=_proof_key)
        if not new:
            break
        layers.append(new)
        for p in new:
            by_concl.setdefault(p.concl, []).append(p)
    return sorted(seen, key=_proof_key)


def find_proof(A: Iterable[Formula], f: Formula, sig: Optional[Signature] = None,
               max_depth: int = 64) -> Optional[Proof]:
    """Search for any proof of ``f`` from ``A`` by deepening, keeping one
    proof per conclusion; the universe is the subterm closure of the input.

    Returns None once no new conclusion appears, which means ``f`` is not a
    theorem.  Independent of congruence closure, so it serves as an oracle.
    """
    A = sorted(set(A), key=lambda x: x.key)
    terms = _subterm_closure(A + [f])
    sig = sig or infer_signature(terms)
    for c in sig.constants:
        terms.add(Term(c))
    U = sorted(terms, key=lambda t: t.key)
    pairs = _same_head_pairs(U)
    eqs = [x for x in all_formulas(U) if x.is_eq]
    known: Dict[Formula, Proof] = {}
    for p in _initial(sig, A):
        known.setdefault(p.concl, p)
    for _ in range(max_depth):
        if f in known:
            return known[f]
        found: Dict[Formula, Proof] = {}
        for l, r in pairs:
            c = eq(l, r)
            if c in known or c in found:
                continue
            kids = [known.get(eq(x, y)) for x, y in zip(l.args, r.args)]
            if all(kids):
                found[c] = Proof(S, c, kids, sym=l.head)
        facts = sorted(known.values(), key=_proof_key)
        for p, q in itertools.combinations_with_replacement(facts, 2):
            for c in trans_conclusions(p.concl, q.concl):
                if c not in known and c not in found:
                    found[c] = Proof(T, c, (p, q))
        for p in facts:
            if p.concl.kind == NEQ and p.concl.trivial:
                for e in eqs:
                    if e not in known and e not in found:
                        found[e] = explode(p, e)
        if not found:
            return None
        known.update(found)
    return known.get(f)


# ------------------------------------------------------ minimal proofs

def _insert(order: ProofOrder, bucket: List[Proof], cand: Proof) -> bool:
    for q in bucket:
        if q is cand or order.gt(cand, q):
            return False
    bucket[:] = [q for q in bucket if not order.gt(q, cand)]
    bucket.append(cand)
    return True


def minimal_table(X: Iterable[Formula], sig: Signature, U: Sequence[Term],
                  order: ProofOrder) -> Dict[Formula, Tuple[Proof, ...]]:
    """μPf(X) over the universe ``U``, grouped by conclusion."""
    X = sorted(set(X), key=lambda f: f.key)
    budget = _Budget(node_budget())
    best: Dict[Formula, List[Proof]] = {}
    eq_by_term: Dict[Term, Set[Formula]] = {}
    neq_by_term: Dict[Term, Set[Formula]] = {}
    pairs_by_arg: Dict[Formula, List[Tuple[Term, Term]]] = {}
    for l, r in _same_head_pairs(U):
        for x, y in zip(l.args, r.args):
            pairs_by_arg.setdefault(eq(x, y), []).append((l, r))
    eqs = [f for f in all_formulas(U) if f.is_eq]

    def index(c: Formula) -> None:
        table = eq_by_term if c.is_eq else neq_by_term
        for t in c.sides:
            table.setdefault(t, set()).add(c)

    fresh: List[Proof] = []
    for p in _initial(sig, X):
        budget.spend()
        if _insert(order, best.setdefault(p.concl, []), p):
            index(p.concl)
            fresh.append(p)

    while fresh:
        fresh_set = set(fresh)
        cands: Set[Proof] = set()
        for p in fresh:
            c = p.concl
            if c.is_eq:
                for l, r in pairs_by_arg.get(c, ()):
                    pools = [best.get(eq(x, y), ()) for x, y in zip(l.args, r.args)]
                    if all(pools):
                        for kids in itertools.product(*pools):
                            if any(k in fresh_set for k in kids):
                                cands.add(Proof(S, eq(l, r), kids, sym=l.head))
                if not c.trivial:
                    for j in c.sides:
                        a = c.other(j)
                        for e in eq_by_term.get(j, ()):
                            if e.trivial:
                                continue
                            concl = eq(a, e.other(j))
                            for q in best.get(e, ()):
                                cands.add(Proof(T, concl, (p, q)))
                        for d in neq_by_term.get(j, ()):
                            concl = neq(a, d.other(j))
                            for q in best.get(d, ()):
                                cands.add(Proof(T, concl, (p, q)))
            else:
                for j in c.sides:
                    b = c.other(j)
                    for e in eq_by_term.get(j, ()):
                        if e.trivial:
                            continue
                        concl = neq(e.other(j), b)
                        for q in best.get(e, ()):
                            cands.add(Proof(T, concl, (q, p)))
                if c.trivial:
                    for e in eqs:
                        cands.add(explode(p, e))
        budget.spend(len(cands))
        fresh = []
        for cand in sorted(cands, key=_proof_key):
            bucket = best.setdefault(cand.concl, [])
            was_empty = not bucket
            if _insert(order, bucket, cand):
                if was_empty:
                    index(cand.concl)
                fresh.append(cand)
        # proofs evicted later in the same round must not seed new candidates
        live = {q for bucket in best.values() for q in bucket}
        fresh = [p for p in fresh if p in live]
    return {c: tuple(sorted(ps, key=_proof_key)) for c, ps in best.items() if ps}


# ------------------------------------------------------ backend

class EquationalSystem:
    """Framework backend for ground equations and disequations."""

    exact = False

    def __init__(self, sig: Signature, cfg: OrderingConfig, bounds: Bounds = Bounds(),
                 numerals: bool = True):
        self.sig = sig
        self.numerals = numerals and sig.is_tally
        self.cfg = cfg.resolve(sig)
        self.bounds = bounds
        self.order = ProofOrder(self.cfg, sig)
        self.universe = universe(sig, bounds.max_term_size)
        self._mu: Dict[FrozenSet[Formula], Dict[Formula, Tuple[Proof, ...]]] = {}
        self._th: Dict[FrozenSet[Formula], FrozenSet[Formula]] = {}

    # formulas
    def check_presentation(self, A: Iterable[Formula]) -> None:
        A = list(A)
        for f in A:
            for t in f.sides:
                self.sig.check_term(t)
        _check_within(A, self.universe)

    def theory(self, A: Iterable[Formula]) -> FrozenSet[Formula]:
        A = frozenset(A)
        th = self._th.get(A)
        if th is None:
            self.check_presentation(A)
            th = self._th[A] = bounded_theory(A, self.universe)
        return th

    def holds(self, A: Iterable[Formula], f: Formula) -> bool:
        return decide_membership(A, f)

    def minimal_proofs(self, X: Iterable[Formula]) -> Dict[Formula, Tuple[Proof, ...]]:
        X = frozenset(X)
        table = self._mu.get(X)
        if table is None:
            self.check_presentation(X)
            table = self._mu[X] = minimal_table(X, self.sig, self.universe, self.order)
        return table

    def all_proofs(self, A: Iterable[Formula]) -> List[Proof]:
        return enumerate_proofs(A, self.bounds, self.sig)

    # proofs
    def premises(self, p: Proof) -> FrozenSet[Formula]:
        return p.premises

    def conclusion(self, p: Proof) -> Formula:
        return p.concl

    def subproofs(self, p: Proof) -> FrozenSet[Proof]:
        return p.subproofs

    def trivial(self, f: Formula) -> Proof:
        return intro(f)

    def is_valid(self, p: Proof) -> bool:
        return check_proof(self.sig, p)

    def gt(self, p: Proof, q: Proof) -> bool:
        return p.concl is q.concl and self.order.gt(p, q)

    def compare(self, p: Proof, q: Proof) -> CompareResult:
        return self.order.compare(p, q)

    def replacements(self, p: Proof, q: Proof, r: Proof) -> List[Proof]:
        """p with occurrences of subproof q replaced by r, one position at a time."""
        return [p.replace_at(path, r) for path, s in p.positions() if s is q]

    # ordering and printing
    @staticmethod
    def formula_key(f: Formula):
        return f.key

    @staticmethod
    def proof_key(p: Proof):
        return p.key

    def format_term(self, t: Term) -> str:
        return format_term(t, self.numerals)

    def format_formula(self, f: Formula) -> str:
        return f.format(self.numerals)

    def format_proof(self, p: Proof) -> str:
        return format_proof(p, self.numerals)

    def parse_formula(self, text: str) -> Formula:
        f = parse_formula(text)
        for t in f.sides:
            self.sig.check_term(t)
        return f

    def describe(self) -> dict:
        return {"backend": "equational", "signature": str(self.sig),
                "max_term_size": self.bounds.max_term_size,
                "max_proof_depth": self.bounds.max_proof_depth}


def minimal_proof(A: Iterable[Formula], c: Formula, cfg: OrderingConfig,
                  b: Bounds = Bounds(), sig: Optional[Signature] = None) -> List[Proof]:
    """The minimal proofs of ``c`` using premises from ``A``."""
    A = list(A)
    sig = sig or infer_signature(t for f in A + [c] for t in f.sides)
    if not decide_membership(A, c):
        raise NotATheorem(f"{c} is not a theorem of the presentation")
    system = EquationalSystem(sig, cfg, b)
    system.check_presentation([c])
    return list(system.minimal_proofs(A).get(c, ()))


# ------------------------------------------------------ presentation files

def parse_presentation(text: str) -> Tuple[Signature, List[Formula]]:
    sig: Optional[Signature] = None
    formulas: List[Formula] = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("sig ") or line == "sig":
            if sig is not None or formulas:
                raise ValueError(f"line {n}: the sig header must come first")
            sig = Signature.parse(line[3:])
            continue
        try:
            formulas.append(parse_formula(line))
        except ValueError as e:
            raise ValueError(f"line {n}: {e}") from None
    if sig is None:
        sig = infer_signature(t for f in formulas for t in f.sides)
    for f in formulas:
        for t in f.sides:
            sig.check_term(t)
    return sig, sorted(set(formulas), key=lambda f: f.key)


def load_presentation(path: str) -> Tuple[Signature, List[Formula]]:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def dump_presentation(sig: Signature, formulas: Iterable[Formula]) -> str:
    lines = [] if sig.is_tally else [str(sig)]
    lines += [f.format(sig.is_tally) for f in sorted(set(formulas), key=lambda f: f.key)]
    return "\n".join(lines) + "\n"
