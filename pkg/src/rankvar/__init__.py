"""Exact-arithmetic toolkit for support varieties over truncated
polynomial algebras."""

__version__ = "0.1.0"
