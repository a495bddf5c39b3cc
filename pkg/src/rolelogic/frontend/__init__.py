"""Concrete syntax: tokenizer, parsers and printers."""

from .lexer import Token, tokenize
from .parse import (
    parse_concept, parse_dl_query, parse_fo, parse_formula, parse_i2, parse_program,
    parse_rl2, parse_role, parse_statement, parse_structure, parse_type,
)
from .pretty import pretty, pretty_program, pretty_structure, pretty_type

__all__ = [
    "Token", "tokenize", "parse_concept", "parse_dl_query", "parse_fo", "parse_formula",
    "parse_i2", "parse_program", "parse_rl2", "parse_role", "parse_statement",
    "parse_structure", "parse_type", "pretty", "pretty_program", "pretty_structure",
    "pretty_type",
]
