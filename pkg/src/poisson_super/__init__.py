"""Exact computations with Poisson superalgebras and their universal enveloping algebras."""

__version__ = "0.1.0"
