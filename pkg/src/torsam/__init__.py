"""Exact Tor lengths against powers of the maximal ideal, and related invariants, over graded rings mod p."""

from .grammar import ParseError, format_document, parse_input
from .homology import Inconclusive, tor_length, tor_table
from .module import Module
from .poly import DEFAULT_P, PolyRing
from .resolution import minimal_resolution
from .ring import GradedRing

__all__ = ["DEFAULT_P", "GradedRing", "Inconclusive", "Module", "ParseError", "PolyRing",
           "format_document", "minimal_resolution", "parse_input", "tor_length", "tor_table"]
