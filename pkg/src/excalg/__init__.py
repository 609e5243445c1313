"""Exact constructions of exceptional Lie algebras and their verification."""
__version__ = "0.1.0"
