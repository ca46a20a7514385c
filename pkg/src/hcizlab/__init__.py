"""Monotone Hurwitz numbers, Weingarten calculus and the HCIZ integral."""

__version__ = "0.1.0"
