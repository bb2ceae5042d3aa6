"""Tilting and 2-term silting over Dynkin path algebras."""

__version__ = "0.1.0"
