"""Proof checking and program extraction for Heyting arithmetic."""

__version__ = "0.1.0"
