"""Finite, explicitly listed proof systems.

A system file is JSON with three required keys::

    {"atoms": ["a", "b"],
     "proofs": [{"id": "eps_a", "premises": ["a"], "conclusion": "a",
                 "subproofs": ["eps_a"]}, ...],
     "ordering": [["greater-id", "lesser-id"], ...]}

An optional ``presentation`` key names a starting set of atoms.
Ordering pairs are generators; the loaded order is their transitive
closure.  Subproof lists are closed transitively as well.
"""
from __future__ import annotations

import itertools
import json
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .orderings import CompareResult

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbstractProof:
    id: str
    premises: FrozenSet[str]
    conclusion: str

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True)
class Violation:
    kind: str          # triv | sub | cut | structure
    proofs: Tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def trivial_id(atom: str) -> str:
    return f"eps_{atom}"


class AbstractSystem:
    """Exact framework backend over an explicitly listed proof system."""

    exact = True

    def __init__(self, atoms: Sequence[str], proofs: Sequence[dict],
                 ordering: Sequence[Tuple[str, str]], synthesize: bool = True,
                 presentation: Optional[Sequence[str]] = None):
        self.atoms: List[str] = list(atoms)
        self.presentation: Optional[List[str]] = None if presentation is None else list(presentation)
        self.records: List[dict] = [dict(r) for r in proofs]
        self.generators: List[Tuple[str, str]] = [tuple(p) for p in ordering]
        self.synthesized: List[str] = []
        self.problems: List[Violation] = []

        ids = [r["id"] for r in self.records]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate proof id")
        known_atoms = set(self.atoms)
        for r in self.records:
            for a in list(r["premises"]) + [r["conclusion"]]:
                if a not in known_atoms:
                    raise ValueError(f"proof {r['id']} mentions unknown atom {a!r}")
            for s in r["subproofs"]:
                if s not in ids:
                    raise ValueError(f"proof {r['id']} lists undefined subproof {s!r}")
        for a in self.presentation or ():
            if a not in known_atoms:
                raise ValueError(f"presentation mentions unknown atom {a!r}")
        for g, l in self.generators:
            for x in (g, l):
                if x not in ids:
                    raise ValueError(f"ordering mentions undefined proof {x!r}")

        self.by_id: Dict[str, AbstractProof] = {}
        for r in self.records:
            self.by_id[r["id"]] = AbstractProof(r["id"], frozenset(r["premises"]), r["conclusion"])
        self._triv: Dict[str, AbstractProof] = {}
        for p in self.by_id.values():
            if p.premises == {p.conclusion} and self._listed(p.id) == {p.id}:
                self._triv.setdefault(p.conclusion, p)
        if synthesize:
            used = set(self.atoms)
            for a in self.atoms:
                if a in used and a not in self._triv:
                    pid = trivial_id(a)
                    while pid in self.by_id:
                        pid += "'"
                    log.warning("atom %s has no trivial proof; adding %s", a, pid)
                    rec = {"id": pid, "premises": [a], "conclusion": a, "subproofs": [pid]}
                    self.records.append(rec)
                    self.by_id[pid] = self._triv[a] = AbstractProof(pid, frozenset([a]), a)
                    self.synthesized.append(pid)

        self.proofs: List[AbstractProof] = sorted(self.by_id.values(), key=lambda p: p.id)
        self._close_subproofs()
        self._close_ordering()
        self._mu: Dict[FrozenSet[str], Dict[str, Tuple[AbstractProof, ...]]] = {}

    def _listed(self, pid: str) -> Set[str]:
        for r in self.records:
            if r["id"] == pid:
                return set(r["subproofs"])
        return set()

    def _close_subproofs(self) -> None:
        listed = {r["id"]: set(r["subproofs"]) | {r["id"]} for r in self.records}
        for r in self.records:
            if r["id"] not in r["subproofs"]:
                self.problems.append(Violation(
                    "structure", (r["id"],), f"{r['id']} does not list itself as a subproof"))
        closure = {k: set(v) for k, v in listed.items()}
        changed = True
        while changed:
            changed = False
            for k, v in closure.items():
                extra = set().union(*(closure[s] for s in v)) - v
                if extra:
                    v |= extra
                    changed = True
        self._sub: Dict[str, FrozenSet[AbstractProof]] = {
            k: frozenset(self.by_id[s] for s in v) for k, v in closure.items()}
        for k, v in closure.items():
            for s in v:
                if s != k and k in closure[s]:
                    self.problems.append(Violation(
                        "structure", (k, s), f"{k} and {s} are subproofs of each other"))

    def _close_ordering(self) -> None:
        gt: Dict[str, Set[str]] = {p.id: set() for p in self.proofs}
        for g, l in self.generators:
            gt[g].add(l)
            if self.by_id[g].conclusion != self.by_id[l].conclusion:
                self.problems.append(Violation(
                    "structure", (g, l), f"ordering pair {g} > {l} relates different conclusions"))
        changed = True
        while changed:
            changed = False
            for k, v in gt.items():
                extra = set().union(*(gt[s] for s in v)) - v
                if extra:
                    v |= extra
                    changed = True
        for k, v in gt.items():
            if k in v:
                self.problems.append(Violation(
                    "structure", (k,), f"the ordering is cyclic through {k}"))
        self._gt = {k: frozenset(v) for k, v in gt.items()}

    # ---- backend interface
    def theory(self, A: Iterable[str]) -> FrozenSet[str]:
        A = frozenset(A)
        return frozenset(p.conclusion for p in self.proofs if p.premises <= A)

    def holds(self, A: Iterable[str], f: str) -> bool:
        return f in self.theory(A)

    def minimal_proofs(self, X: Iterable[str]) -> Dict[str, Tuple[AbstractProof, ...]]:
        X = frozenset(X)
        table = self._mu.get(X)
        if table is None:
            pool: Dict[str, List[AbstractProof]] = {}
            for p in self.proofs:
                if p.premises <= X:
                    pool.setdefault(p.conclusion, []).append(p)
            table = {}
            for c, ps in pool.items():
                table[c] = tuple(p for p in ps if not any(self.gt(p, q) for q in ps))
            self._mu[X] = table
        return table

    def all_proofs(self, A: Optional[Iterable[str]] = None) -> List[AbstractProof]:
        if A is None:
            return list(self.proofs)
        A = frozenset(A)
        return [p for p in self.proofs if p.premises <= A]

    def premises(self, p: AbstractProof) -> FrozenSet[str]:
        return p.premises

    def conclusion(self, p: AbstractProof) -> str:
        return p.conclusion

    def subproofs(self, p: AbstractProof) -> FrozenSet[AbstractProof]:
        return self._sub[p.id]

    def trivial(self, a: str) -> AbstractProof:
        return self._triv[a]

    def has_trivial(self, a: str) -> bool:
        return a in self._triv

    def is_valid(self, p: AbstractProof) -> bool:
        return self.by_id.get(p.id) is p

    def proof(self, pid: str) -> AbstractProof:
        return self.by_id[pid]

    def gt(self, p: AbstractProof, q: AbstractProof) -> bool:
        return q.id in self._gt[p.id]

    def compare(self, p: AbstractProof, q: AbstractProof) -> CompareResult:
        if p.conclusion != q.conclusion:
            raise ValueError(f"cannot compare proofs of {p.conclusion} and {q.conclusion}")
        if p is q:
            return CompareResult.EQUAL
        if self.gt(p, q):
            return CompareResult.GREATER
        if self.gt(q, p):
            return CompareResult.LESS
        return CompareResult.INCOMPARABLE

    def replacements(self, p, q, r) -> List[AbstractProof]:
        return []

    @staticmethod
    def formula_key(f: str):
        return f

    @staticmethod
    def proof_key(p: AbstractProof):
        return p.id

    def format_formula(self, f: str) -> str:
        return f

    def format_proof(self, p: AbstractProof) -> str:
        return p.id

    def parse_formula(self, text: str) -> str:
        text = text.strip()
        if text not in self.atoms:
            raise ValueError(f"unknown atom {text!r}")
        return text

    def describe(self) -> dict:
        return {"backend": "abstract", "atoms": len(self.atoms), "proofs": len(self.proofs)}

    # ---- serialization
    def to_doc(self) -> dict:
        doc = {
            "atoms": list(self.atoms),
            "proofs": [{"id": r["id"], "premises": list(r["premises"]),
                        "conclusion": r["conclusion"], "subproofs": list(r["subproofs"])}
                       for r in self.records],
            "ordering": [list(p) for p in self.generators],
        }
        if self.presentation is not None:
            doc["presentation"] = list(self.presentation)
        return doc


def load_abstract_system(doc, synthesize: bool = True) -> AbstractSystem:
    """Build a system from a JSON string or an already parsed document."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise ValueError(f"system file is not valid JSON: {e}") from None
    if not isinstance(doc, dict) or not {"atoms", "proofs", "ordering"} <= set(doc):
        raise ValueError("system file needs the keys atoms, proofs and ordering")
    try:
        proofs = [{"id": str(r["id"]), "premises": [str(a) for a in r["premises"]],
                   "conclusion": str(r["conclusion"]),
                   "subproofs": [str(s) for s in r["subproofs"]]} for r in doc["proofs"]]
        ordering = [(str(g), str(l)) for g, l in doc["ordering"]]
        start = doc.get("presentation")
        start = None if start is None else [str(a) for a in start]
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"malformed system file: {e}") from None
    return AbstractSystem([str(a) for a in doc["atoms"]], proofs, ordering, synthesize, start)


def read_abstract_system(path: str, synthesize: bool = True) -> AbstractSystem:
    with open(path, encoding="utf-8") as fh:
        return load_abstract_system(fh.read(), synthesize)


def dump_abstract_system(sys: AbstractSystem) -> str:
    return json.dumps(sys.to_doc(), indent=2, ensure_ascii=False) + "\n"


def validate_abstract_system(sys: AbstractSystem) -> List[Violation]:
    """Exhaustive check of the structural invariants and the three postulates."""
    out = list(sys.problems)
    for p in sys.proofs:
        subs = sys.subproofs(p)
        for a in sorted(p.premises):
            if not sys.has_trivial(a) or sys.trivial(a) not in subs:
                out.append(Violation("triv", (p.id,),
                                     f"{p.id} uses premise {a} without the trivial proof of {a} as a subproof"))
        for q in sorted(subs, key=lambda x: x.id):
            if not q.premises <= p.premises:
                out.append(Violation("sub", (p.id, q.id),
                                     f"{q.id} is a subproof of {p.id} but has premises outside it"))
    out += cut_violations(sys, sys.proofs)
    return out


def cut_violations(sys, sample: Sequence) -> List[Violation]:
    """Check the replacement postulate for every p ▷ q > r within ``sample``."""
    sample = list(sample)
    by_concl: Dict[object, List] = {}
    for x in sample:
        by_concl.setdefault(sys.conclusion(x), []).append(x)
    out = []
    fmt = sys.format_proof
    for p in sample:
        for q in sorted(sys.subproofs(p), key=sys.proof_key):
            if q is p:
                continue
            for r in by_concl.get(sys.conclusion(q), ()):
                if not sys.gt(q, r):
                    continue
                allowed = sys.premises(p) | sys.premises(r)
                ok = False
                for v in itertools.chain(sys.replacements(p, q, r), by_concl.get(sys.conclusion(p), ())):
                    if (sys.premises(v) <= allowed and r in sys.subproofs(v)
                            and sys.gt(p, v)):
                        ok = True
                        break
                if not ok:
                    out.append(Violation(
                        "cut", (fmt(p), fmt(q), fmt(r)),
                        f"{fmt(q)} inside {fmt(p)} exceeds {fmt(r)}, but no smaller proof "
                        f"than {fmt(p)} contains {fmt(r)}"))
    return out


# ---------------------------------------------------------- random systems

def random_system(seed: int, n_atoms: int = 4, n_rules: int = 5) -> AbstractSystem:
    """A random Horn-rule proof system ordered by total proof weight.

    Rules are stratified (a rule's head comes after its body atoms), so
    the set of all derivation trees is finite and closed under plugging
    a proof of a lemma in place of that lemma's leaf; the theory operator
    is therefore a closure operator.  A proof is greater than another of
    the same conclusion when it is strictly heavier.  Weight is additive,
    so replacing a subproof by a lighter one lightens the whole proof and
    the postulates hold.
    """
    rng = random.Random(seed)
    atoms = [chr(ord("a") + i) for i in range(n_atoms)]
    leaf_w = {a: rng.randint(1, 3) for a in atoms}
    rules = []
    for i in range(n_rules):
        h = rng.randrange(n_atoms)
        body = tuple(sorted(rng.sample(atoms[:h], min(h, rng.randint(0, 2)))))
        rules.append((f"r{i}", body, atoms[h], rng.randint(1, 3)))

    # trees as id -> (conclusion, premises, weight, subproof ids)
    trees: Dict[str, tuple] = {}
    for a in atoms:
        tid = trivial_id(a)
        trees[tid] = (a, frozenset([a]), leaf_w[a], frozenset([tid]))
    for a in atoms:  # heads only depend on earlier atoms
        by_concl: Dict[str, List[str]] = {}
        for tid, t in trees.items():
            by_concl.setdefault(t[0], []).append(tid)
        for name, body, head, w in rules:
            if head != a:
                continue
            for kids in itertools.product(*(sorted(by_concl.get(b, [])) for b in body)):
                tid = f"{name}({','.join(kids)})"
                prem = frozenset().union(*(trees[k][1] for k in kids))
                subs = frozenset([tid]).union(*(trees[k][3] for k in kids))
                trees[tid] = (head, prem, w + sum(trees[k][2] for k in kids), subs)
    ids = sorted(trees, key=lambda t: (trees[t][2], t))
    proofs = [{"id": t, "premises": sorted(trees[t][1]), "conclusion": trees[t][0],
               "subproofs": sorted(trees[t][3])} for t in ids]
    ordering = [(p, q) for p in ids for q in ids
                if trees[p][0] == trees[q][0] and trees[p][2] > trees[q][2]]
    return AbstractSystem(atoms, proofs, ordering)
