"""Bounded-domain decision procedures."""

from .bounded import (
    BUDGET, SAT, UNSAT, SolveResult, ValidityResult, check_sat_bounded,
    check_valid_bounded, solve,
)
from .dimacs import clausify, dimacs_text, export_dimacs, parse_dimacs, read_dimacs
from .ground import CardConstraint, GroundProblem, ground
from .sat import SatOutcome, Solver, Stats, solve_cnf

__all__ = [
    "BUDGET", "SAT", "UNSAT", "CardConstraint", "GroundProblem", "SatOutcome",
    "SolveResult", "Solver", "Stats", "ValidityResult", "check_sat_bounded",
    "check_valid_bounded", "clausify", "dimacs_text", "export_dimacs", "ground",
    "parse_dimacs", "read_dimacs", "solve", "solve_cnf",
]
