"""Markov traces on generalized and cyclotomic Hecke algebras of type B,
and the normalized solid-torus knot invariant they define."""

__version__ = "0.1.0"
