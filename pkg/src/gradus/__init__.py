"""Graded Lie algebras of Chevalley type, structurable algebras and Kantor pairs over Q and GF(p)."""

__version__ = "0.1.0"
