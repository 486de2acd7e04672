"""Ground terms, signatures, equational formulas and term orderings.

Terms are hash-consed: building the same term twice returns the same
object, so equality is identity and hashing is cheap.  Formulas are
unordered pairs of terms (an equation or a disequation) stored with the
larger side first under a fixed structural key, so ``i = j`` and
``j = i`` are the same object.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

EQ = "="
NEQ = "!="

TALLY_ZERO = "0"
TALLY_SUCC = "s"


class Term:
    """A ground term ``head(args...)``; instances are interned."""

    __slots__ = ("head", "args", "size", "key", "__weakref__")
    _table: Dict[Tuple[str, Tuple["Term", ...]], "Term"] = {}

    def __new__(cls, head: str, args: Sequence["Term"] = ()):
        args = tuple(args)
        k = (head, args)
        t = cls._table.get(k)
        if t is None:
            t = object.__new__(cls)
            t.head = head
            t.args = args
            t.size = 1 + sum(a.size for a in args)
            # structural total order used for orientation and output
            t.key = (t.size, head, tuple(a.key for a in args))
            cls._table[k] = t
        return t

    def __reduce__(self):
        return (Term, (self.head, self.args))

    def __repr__(self) -> str:
        return f"Term({format_term(self)!r})"

    def __str__(self) -> str:
        return format_term(self)

    def subterms(self) -> Iterator["Term"]:
        yield self
        for a in self.args:
            yield from a.subterms()

    def replace_at(self, path: Tuple[int, ...], new: "Term") -> "Term":
        if not path:
            return new
        i = path[0]
        args = list(self.args)
        args[i] = args[i].replace_at(path[1:], new)
        return Term(self.head, args)

    def positions(self) -> Iterator[Tuple[Tuple[int, ...], "Term"]]:
        """Yield (path, subterm) pairs, leftmost-innermost first."""
        for i, a in enumerate(self.args):
            for p, s in a.positions():
                yield (i,) + p, s
        yield (), self


def numeral(n: int) -> Term:
    t = Term(TALLY_ZERO)
    for _ in range(n):
        t = Term(TALLY_SUCC, (t,))
    return t


def numeral_value(t: Term) -> Optional[int]:
    n = 0
    while t.head == TALLY_SUCC and len(t.args) == 1:
        t = t.args[0]
        n += 1
    if t.head == TALLY_ZERO and not t.args:
        return n
    return None


def format_term(t: Term, numerals: bool = True) -> str:
    if numerals:
        v = numeral_value(t)
        if v is not None:
            return str(v)
    if not t.args:
        return t.head
    return f"{t.head}({','.join(format_term(a, numerals) for a in t.args)})"


class Formula:
    """Unordered ground equation or disequation (interned)."""

    __slots__ = ("kind", "lhs", "rhs", "key", "__weakref__")
    _table: Dict[Tuple[str, Term, Term], "Formula"] = {}

    def __new__(cls, kind: str, a: Term, b: Term):
        if kind not in (EQ, NEQ):
            raise ValueError(f"unknown formula kind {kind!r}")
        if a.key < b.key:
            a, b = b, a
        k = (kind, a, b)
        f = cls._table.get(k)
        if f is None:
            f = object.__new__(cls)
            f.kind = kind
            f.lhs = a
            f.rhs = b
            f.key = (0 if kind == EQ else 1, a.key, b.key)
            cls._table[k] = f
        return f

    def __reduce__(self):
        return (Formula, (self.kind, self.lhs, self.rhs))

    @property
    def sides(self) -> Tuple[Term, Term]:
        return (self.lhs, self.rhs)

    @property
    def display_sides(self) -> Tuple[Term, Term]:
        """Larger side first; equal sizes print in ascending structural order."""
        if self.lhs.size == self.rhs.size:
            return (self.rhs, self.lhs)
        return (self.lhs, self.rhs)

    @property
    def is_eq(self) -> bool:
        return self.kind == EQ

    @property
    def trivial(self) -> bool:
        return self.lhs is self.rhs

    def other(self, t: Term) -> Term:
        if t is self.lhs:
            return self.rhs
        if t is self.rhs:
            return self.lhs
        raise ValueError(f"{t} is not a side of {self}")

    def __repr__(self) -> str:
        return f"Formula({str(self)!r})"

    def __str__(self) -> str:
        return self.format()

    def format(self, numerals: bool = True) -> str:
        op = " = " if self.kind == EQ else " != "
        a, b = self.display_sides
        return format_term(a, numerals) + op + format_term(b, numerals)


def eq(a: Term, b: Term) -> Formula:
    return Formula(EQ, a, b)


def neq(a: Term, b: Term) -> Formula:
    return Formula(NEQ, a, b)


@dataclass(frozen=True)
class Signature:
    """Function symbols with arities, in declaration order."""

    symbols: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        names = [n for n, _ in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError("duplicate symbol in signature")
        if any(a < 0 for _, a in self.symbols):
            raise ValueError("negative arity")
        if not any(a == 0 for _, a in self.symbols):
            raise ValueError("signature needs at least one constant")

    @classmethod
    def tally(cls) -> "Signature":
        return cls(((TALLY_ZERO, 0), (TALLY_SUCC, 1)))

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Parse ``"f/2 a/0 b/0"``."""
        syms = []
        for tok in text.replace(",", " ").split():
            name, _, ar = tok.partition("/")
            if not ar.isdigit():
                raise ValueError(f"bad signature entry {tok!r}")
            syms.append((name, int(ar)))
        return cls(tuple(syms))

    def arity(self, name: str) -> int:
        for n, a in self.symbols:
            if n == name:
                return a
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(n == name for n, _ in self.symbols)

    @property
    def is_tally(self) -> bool:
        return set(self.symbols) == {(TALLY_ZERO, 0), (TALLY_SUCC, 1)}

    @property
    def constants(self) -> List[str]:
        return [n for n, a in self.symbols if a == 0]

    def default_precedence(self) -> List[str]:
        """Symbols from greatest to least: higher arity first, then by name."""
        return [n for n, _ in sorted(self.symbols, key=lambda s: (-s[1], s[0]))]

    @property
    def zero(self) -> str:
        """The constant whose reflexivity is the axiom Z."""
        if TALLY_ZERO in self and self.arity(TALLY_ZERO) == 0:
            return TALLY_ZERO
        return [n for n in self.default_precedence() if self.arity(n) == 0][-1]

    def check_term(self, t: Term) -> None:
        if t.head not in self or self.arity(t.head) != len(t.args):
            raise ValueError(f"term {t} does not fit the signature")
        for a in t.args:
            self.check_term(a)

    def __str__(self) -> str:
        return "sig " + " ".join(f"{n}/{a}" for n, a in self.symbols)


def universe(sig: Signature, max_size: int) -> Tuple[Term, ...]:
    """All ground terms with at most ``max_size`` nodes, sorted by key."""
    return _universe(sig, max_size)


@lru_cache(maxsize=None)
def _universe(sig: Signature, max_size: int) -> Tuple[Term, ...]:
    if max_size < 1:
        raise ValueError("max_size must be positive")
    by_size: Dict[int, List[Term]] = {1: [Term(c) for c in sig.constants]}
    for n in range(2, max_size + 1):
        out = []
        for f, ar in sig.symbols:
            if ar == 0:
                continue
            for parts in _compositions(n - 1, ar):
                for args in _product([by_size.get(p, []) for p in parts]):
                    out.append(Term(f, args))
        by_size[n] = out
    terms = [t for n in sorted(by_size) for t in by_size[n]]
    return tuple(sorted(terms, key=lambda t: t.key))


def _compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    if k == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _product(pools: List[List[Term]]) -> Iterator[Tuple[Term, ...]]:
    if not pools:
        yield ()
        return
    for x in pools[0]:
        for rest in _product(pools[1:]):
            yield (x,) + rest


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(!=)|(=)|(\^)|([(),])|([A-Za-z_][A-Za-z_0-9']*|\d+))")


def _tokenize(text: str) -> List[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at column {pos}")
        out.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self) -> Optional[str]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise ValueError(f"expected {expect or 'token'} in {self.text!r}")
        self.i += 1
        return tok

    def term(self) -> Term:
        tok = self.take()
        if tok.isdigit():
            return numeral(int(tok))
        if not (tok[0].isalpha() or tok[0] == "_"):
            raise ValueError(f"unexpected {tok!r} in {self.text!r}")
        power = 1
        if self.peek() == "^":
            self.take()
            p = self.take()
            if not p.isdigit():
                raise ValueError(f"bad exponent in {self.text!r}")
            power = int(p)
        args: List[Term] = []
        if self.peek() == "(":
            self.take()
            args.append(self.term())
            while self.peek() == ",":
                self.take()
                args.append(self.term())
            self.take(")")
        if power != 1:
            if len(args) != 1:
                raise ValueError(f"{tok}^{power} needs exactly one argument")
            t = args[0]
            for _ in range(power):
                t = Term(tok, (t,))
            return t
        return Term(tok, args)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.peek() is not None:
        raise ValueError(f"trailing input in {text!r}")
    return t


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    a = p.term()
    op = p.take()
    if op not in (EQ, NEQ):
        raise ValueError(f"expected '=' or '!=' in {text!r}")
    b = p.term()
    if p.peek() is not None:
        raise ValueError(f"trailing input in {text!r}")
    return Formula(op, a, b)


def infer_signature(terms: Iterable[Term]) -> Signature:
    seen: Dict[str, int] = {}
    for t in terms:
        for s in t.subterms():
            if seen.setdefault(s.head, len(s.args)) != len(s.args):
                raise ValueError(f"symbol {s.head} used with two arities")
    if not seen or set(seen) <= {TALLY_ZERO, TALLY_SUCC}:
        return Signature.tally()
    return Signature(tuple(seen.items()))


# ---------------------------------------------------------- term orderings

GT, LT, EQUAL, INCOMPARABLE = ">", "<", "=", None


class TermOrder:
    """A simplification ordering on ground terms."""

    name = "abstract"

    def gt(self, s: Term, t: Term) -> bool:
        raise NotImplementedError

    def ge(self, s: Term, t: Term) -> bool:
        return s is t or self.gt(s, t)

    def compare(self, s: Term, t: Term) -> Optional[str]:
        if s is t:
            return EQUAL
        if self.gt(s, t):
            return GT
        if self.gt(t, s):
            return LT
        return INCOMPARABLE

    def symbol_gt(self, f: str, g: str) -> bool:
        return False

    def describe(self) -> str:
        return self.name


class SizeOrder(TermOrder):
    """Compare by node count; on tally terms this is numeral value."""

    name = "numeral_value"

    def gt(self, s: Term, t: Term) -> bool:
        return s.size > t.size

    def __eq__(self, other) -> bool:
        return isinstance(other, SizeOrder)

    def __hash__(self) -> int:
        return hash("numeral_value")


class LPO(TermOrder):
    """Lexicographic path ordering; total on ground terms for a total precedence."""

    name = "lpo"

    def __init__(self, precedence: Sequence[str]):
        # greatest first
        self.precedence = tuple(precedence)
        self._rank = {f: len(self.precedence) - i for i, f in enumerate(self.precedence)}
        self._cache: Dict[Tuple[Term, Term], bool] = {}

    def __eq__(self, other) -> bool:
        return isinstance(other, LPO) and other.precedence == self.precedence

    def __hash__(self) -> int:
        return hash(self.precedence)

    def symbol_gt(self, f: str, g: str) -> bool:
        rf, rg = self._rank.get(f), self._rank.get(g)
        return rf is not None and rg is not None and rf > rg

    def gt(self, s: Term, t: Term) -> bool:
        if s is t:
            return False
        k = (s, t)
        r = self._cache.get(k)
        if r is None:
            r = self._gt(s, t)
            self._cache[k] = r
        return r

    def _gt(self, s: Term, t: Term) -> bool:
        if any(a is t or self.gt(a, t) for a in s.args):
            return True
        if s.head == t.head and len(s.args) == len(t.args):
            for a, b in zip(s.args, t.args):
                if a is not b:
                    return self.gt(a, b) and all(self.gt(s, c) for c in t.args)
            return False
        if self.symbol_gt(s.head, t.head):
            return all(self.gt(s, c) for c in t.args)
        return False

    def describe(self) -> str:
        return " > ".join(self.precedence)


def parse_term_order(text: str, sig: Optional[Signature] = None) -> TermOrder:
    """``"numeral_value"`` or a chain such as ``"s > a > b > c"``."""
    text = text.strip()
    if text in ("numeral_value", "size"):
        return SizeOrder()
    if "<" in text and ">" not in text:
        syms = [x.strip() for x in text.split("<")][::-1]
    else:
        syms = [x.strip() for x in text.split(">")]
    if not all(syms):
        raise ValueError(f"bad term order {text!r}")
    if sig is not None:
        missing = [n for n, _ in sig.symbols if n not in syms]
        if missing:
            raise ValueError(f"term order does not rank {', '.join(missing)}")
    return LPO(syms)


def default_term_order(sig: Signature) -> TermOrder:
    if sig.is_tally:
        return SizeOrder()
    return LPO(sig.default_precedence())


def multiset_gt(xs: Sequence, ys: Sequence, gt) -> bool:
    """Multiset extension of ``gt`` with identity as equality."""
    xs, ys = list(xs), list(ys)
    for y in list(ys):
        for i, x in enumerate(xs):
            if x == y:
                del xs[i]
                ys.remove(y)
                break
    if not xs:
        return False
    return all(any(gt(x, y) for x in xs) for y in ys)
