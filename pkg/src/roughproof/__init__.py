"""Proof checking, proof search and cut elimination for the display calculi
of rough algebras, with a finite-model oracle for their algebraic semantics."""

from .calculus import CALCULI, check_proof
from .cutelim import eliminate_cuts
from .parser import parse_proof, parse_sequent, parse_term, render_proof
from .search import SearchBudget, prove
from .sweep import BACKEND

__version__ = "0.1.0"

__all__ = ["CALCULI", "check_proof", "eliminate_cuts", "parse_proof", "parse_sequent",
           "parse_term", "render_proof", "SearchBudget", "prove", "BACKEND"]
