"""Exact-arithmetic toolkit for isometries of even hyperbolic lattices.

Classifies integer polynomials and lattice isometries by their
cyclotomic/Salem structure, computes certified spectral-radius and
entropy enclosures, and implements a trace-based construction of
positive-entropy isometries from quasi-unipotent ones.
"""
__version__ = "0.1.0"
