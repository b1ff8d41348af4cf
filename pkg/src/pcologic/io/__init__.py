"""Concrete syntax: formula parser and printer, model and description files."""

from .files import (
    parse_description,
    parse_model,
    parse_signature,
    read_description,
    read_model,
    read_signature,
    write_description,
    write_model,
    write_signature,
)
from .parser import parse_formula, parse_spec
from .printer import to_text

__all__ = [
    "parse_formula",
    "parse_spec",
    "to_text",
    "parse_model",
    "parse_signature",
    "parse_description",
    "read_model",
    "read_signature",
    "read_description",
    "write_model",
    "write_signature",
    "write_description",
]
