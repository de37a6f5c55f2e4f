"""Mazur-Tate refined BSD congruence verifier."""
__version__ = "0.1.0"
