"""Serre quotients of constructively Abelian categories."""

__version__ = "0.1.0"
