"""Proof orderings: a multiset recursive path ordering over proof terms.

Each proof node is read as a function symbol (its combinator) applied to
its subproofs plus one extra pseudo-argument, the node's conclusion.  That
extra argument keeps the ordering antisymmetric on nodes whose children
coincide but whose conclusions differ; conclusions rank below every
combinator and compare among themselves like ``I`` leaves do.

``I`` leaves are opaque: how two of them compare is decided by the
configured ``leaf_mode``.
"""
from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

from .proofs import F, I, P, S, T, Z, Proof, shared_term
from .terms import (NEQ, Formula, Signature, SizeOrder, Term, TermOrder,
                    default_term_order, infer_signature, multiset_gt,
                    parse_term_order)

COMBINATORS = (Z, I, S, T, P, F)
LEAF_MODES = ("incomparable", "context_embedding", "term_multiset", "value_measure")
T_HEAVY = "T+"   # a T node whose shared term dominates both other terms


class CompareResult(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class OrderingConfig:
    """A proof ordering specification.

    ``precedence`` is a tuple of chains, each listed from least to greatest.
    Symbols other than the six combinators may appear (vocabulary symbols);
    they are accepted but do not influence the ordering, because ``I``
    leaves are compared by ``leaf_mode`` instead.  ``total`` adds two tie
    breaks: a disequation beats the equation with the same sides, and nodes
    whose children are a permutation of each other compare left to right.
    """

    name: str
    precedence: Tuple[Tuple[str, ...], ...]
    leaf_mode: str = "incomparable"
    term_order: Optional[TermOrder] = None
    t_weight_rule: bool = False
    total: bool = False
    _above: Dict[str, frozenset] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.leaf_mode not in LEAF_MODES:
            raise ValueError(f"unknown leaf mode {self.leaf_mode!r}")
        above: Dict[str, set] = {}
        for chain in self.precedence:
            for i, lo in enumerate(chain):
                above.setdefault(lo, set()).update(chain[i + 1:])
        # transitive closure
        changed = True
        while changed:
            changed = False
            for s, ups in above.items():
                extra = set().union(*(above.get(u, set()) for u in ups)) - ups
                if extra:
                    ups |= extra
                    changed = True
        for s, ups in above.items():
            if s in ups:
                raise ValueError(f"precedence is cyclic at {s}")
        object.__setattr__(self, "_above", {k: frozenset(v) for k, v in above.items()})

    def prec_gt(self, f: str, g: str) -> bool:
        """Strict precedence between combinator symbols (``T+`` included)."""
        if f == g:
            return False
        if f == T_HEAVY:
            return g == I or g in self._below(I) or g == T
        if g == T_HEAVY:
            return f != I and f in self._above.get(I, ())
        return f in self._above.get(g, ())

    def _below(self, f: str) -> frozenset:
        return frozenset(g for g, ups in self._above.items() if f in ups)

    def with_term_order(self, term_order: Optional[TermOrder]) -> "OrderingConfig":
        return replace(self, term_order=term_order)

    def resolve(self, sig: Signature) -> "OrderingConfig":
        if self.term_order is not None:
            return self
        return self.with_term_order(default_term_order(sig))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "precedence": [" < ".join(c) for c in self.precedence],
            "leaf_mode": self.leaf_mode,
            "term_order": self.term_order.describe() if self.term_order else None,
            "t_weight_rule": self.t_weight_rule,
            "total": self.total,
        }


def _chain(text: str) -> Tuple[str, ...]:
    if ">" in text and "<" not in text:
        return tuple(s.strip() for s in text.split(">"))[::-1]
    return tuple(s.strip() for s in text.split("<"))


_PRESETS = {
    "example_rpo": ("F < Z < S < T < I < P", "term_multiset", False, False),
    "deductive_closure": ("I < Z < S < T < F < P", "incomparable", False, False),
    "congruence_closure": ("Z < F < S < T < I < P", "context_embedding", False, False),
    "completion": ("Z < F < S < T < I < P", "term_multiset", False, False),
    "refutation": ("F < Z < S < T < I < P", "value_measure", False, False),
    "superposition": ("Z < F < S < T < I < P", "term_multiset", True, False),
    "ground_completion_total": ("F < Z < S < T < I < P", "term_multiset", False, True),
}
PRESET_NAMES = tuple(_PRESETS)


def preset(name: str, term_order: Optional[TermOrder] = None) -> OrderingConfig:
    if name not in _PRESETS:
        raise ValueError(f"unknown ordering preset {name!r}; choose from {', '.join(_PRESETS)}")
    chain, mode, weighted, total = _PRESETS[name]
    return OrderingConfig(name, (_chain(chain),), mode, term_order, weighted, total)


def config_from_dict(doc: dict, sig: Optional[Signature] = None) -> OrderingConfig:
    prec = doc.get("precedence")
    if isinstance(prec, str):
        prec = [prec]
    if not prec:
        raise ValueError("ordering config needs a precedence")
    to = doc.get("term_order")
    term_order = parse_term_order(to, sig) if to else None
    return OrderingConfig(
        name=doc.get("name", "custom"),
        precedence=tuple(_chain(c) for c in prec),
        leaf_mode=doc.get("leaf_mode", "incomparable"),
        term_order=term_order,
        t_weight_rule=bool(doc.get("t_weight_rule", False)),
        total=bool(doc.get("total", False)),
    )


def load_config(path: str, sig: Optional[Signature] = None) -> OrderingConfig:
    with open(path, encoding="utf-8") as fh:
        return config_from_dict(json.load(fh), sig)


# --------------------------------------------------------------- leaves

def _context_pairs(a: Term, b: Term):
    """Pairs (u, t) with a = c[u], b = c[t] for a proper context c."""
    while a.head == b.head and len(a.args) == len(b.args) and a is not b:
        diff = [i for i, (x, y) in enumerate(zip(a.args, b.args)) if x is not y]
        if len(diff) != 1:
            return
        a, b = a.args[diff[0]], b.args[diff[0]]
        yield a, b


Node = Union[Proof, Formula]


class ProofOrder:
    """Comparator for one configuration with a resolved term ordering."""

    def __init__(self, cfg: OrderingConfig, sig: Optional[Signature] = None):
        if cfg.term_order is None:
            cfg = cfg.resolve(sig or Signature.tally())
        self.cfg = cfg
        self.terms: TermOrder = cfg.term_order
        self._gt: Dict[Tuple[Node, Node], bool] = {}
        self._sym: Dict[Proof, str] = {}

    # -- leaves
    def formula_gt(self, f: Formula, g: Formula) -> bool:
        mode = self.cfg.leaf_mode
        if f is g or mode == "incomparable":
            return False
        if mode == "context_embedding":
            if f.kind != g.kind:
                return False
            return any(Formula(f.kind, u, t) is g for u, t in _context_pairs(f.lhs, f.rhs))
        if mode == "term_multiset":
            if multiset_gt(f.sides, g.sides, self.terms.gt):
                return True
            if self.cfg.total and set(f.sides) == set(g.sides) and f.lhs is g.lhs:
                return f.kind == NEQ and g.kind != NEQ
            return False
        # value_measure
        return multiset_gt([t.size for t in f.sides], [t.size for t in g.sides],
                           lambda x, y: x > y)

    # -- nodes
    def symbol(self, p: Node) -> Optional[str]:
        if isinstance(p, Formula):
            return None
        s = self._sym.get(p)
        if s is None:
            s = p.rule
            if s == T and self.cfg.t_weight_rule:
                j = shared_term(p)
                if j is not None:
                    outer = p.concl.sides
                    if all(self.terms.gt(j, x) for x in outer):
                        s = T_HEAVY
            self._sym[p] = s
        return s

    @staticmethod
    def args(p: Node) -> Tuple[Node, ...]:
        if isinstance(p, Formula) or p.rule == I:
            return ()
        return p.children + (p.concl,)

    def gt(self, s: Node, t: Node) -> bool:
        if s is t:
            return False
        k = (s, t)
        r = self._gt.get(k)
        if r is None:
            r = self._compute(s, t)
            self._gt[k] = r
        return r

    def ge(self, s: Node, t: Node) -> bool:
        return s is t or self.gt(s, t)

    def _compute(self, s: Node, t: Node) -> bool:
        fs, ft = self.symbol(s), self.symbol(t)
        if fs is None:
            return ft is None and self.formula_gt(s, t)
        sa = self.args(s)
        if any(self.ge(a, t) for a in sa):
            return True
        if ft is None:
            return True  # every combinator outranks a conclusion tag
        ta = self.args(t)
        if fs == ft:
            if fs == I:
                return self.formula_gt(s.concl, t.concl)
            if multiset_gt(sa, ta, self.gt):
                return True
            if self.cfg.total and Counter(sa) == Counter(ta):
                # permuted children (P branches are positional): go left to right
                for a, b in zip(sa, ta):
                    if a is not b:
                        return self.gt(a, b)
            return False
        if self.cfg.prec_gt(fs, ft):
            return all(self.gt(s, b) for b in ta)
        return False

    def compare(self, p: Proof, q: Proof) -> CompareResult:
        if p.concl is not q.concl:
            raise ValueError(f"cannot compare proofs of {p.concl} and {q.concl}")
        if p is q:
            return CompareResult.EQUAL
        if self.gt(p, q):
            return CompareResult.GREATER
        if self.gt(q, p):
            return CompareResult.LESS
        return CompareResult.INCOMPARABLE

    def lt(self, p: Proof, q: Proof) -> bool:
        return p.concl is q.concl and self.gt(q, p)


def _sig_of(proofs: Iterable[Proof]) -> Signature:
    return infer_signature(t for p in proofs for q in p.subproofs for t in q.concl.sides)


def compare_proofs(cfg: OrderingConfig, p: Proof, q: Proof,
                   sig: Optional[Signature] = None) -> CompareResult:
    return ProofOrder(cfg, sig or _sig_of((p, q))).compare(p, q)


def term_compare(cfg: OrderingConfig, s: Term, t: Term,
                 sig: Optional[Signature] = None) -> CompareResult:
    order = cfg.term_order or default_term_order(sig or infer_signature((s, t)))
    if s is t:
        return CompareResult.EQUAL
    if order.gt(s, t):
        return CompareResult.GREATER
    if order.gt(t, s):
        return CompareResult.LESS
    return CompareResult.INCOMPARABLE
