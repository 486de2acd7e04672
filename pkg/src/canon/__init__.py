"""Canonical bases, redundancy and completion for ordered proof systems."""
from .abstract import (AbstractProof, AbstractSystem, Violation, dump_abstract_system,
                       load_abstract_system, random_system, read_abstract_system,
                       validate_abstract_system)
from .completion import (BoundInsufficient, DerivationTrace, DerivationVerdict, Step,
                         bulk_step, check_derivation, contract, critical_proofs,
                         critical_step, dump_trace, ground_completion, load_trace,
                         mass_step, run_completion, trace_sets)
from .equational import (BoundExceeded, Bounds, EquationalSystem, NotATheorem,
                         congruence_classes, decide_membership, enumerate_proofs,
                         find_proof, load_presentation, minimal_proof, parse_presentation,
                         trivial_proof)
from .framework import (Verdict, check_postulates, classify, compare_justifications,
                        minimal, normal_form_proofs, redundant, sharp, simpler)
from .orderings import (CompareResult, OrderingConfig, compare_proofs, preset,
                        term_compare)
from .proofs import Proof, check_proof, proof_error
from .terms import Formula, Signature, Term, parse_formula, parse_term, parse_term_order

__all__ = [n for n in dir() if not n.startswith("_")]
