"""Tiny builders shared by the unit tests."""

from torsam.grammar import parse_input, parse_poly


def ring(spec, name="R"):
    """ring('k[x,y] / (x^2)') -> GradedRing."""
    return parse_input(f"ring {name} = {spec}").ring(name)


def poly(R, text):
    return parse_poly(text, R.P)


def setup(text):
    """Parse a document; returns (ring, {module name: module}) for the first ring."""
    doc = parse_input(text)
    return doc.ring(), doc.modules
