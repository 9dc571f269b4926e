"""Exhaustive checking of pretorsion theories on explicit finite categories."""

__version__ = "0.1.0"
