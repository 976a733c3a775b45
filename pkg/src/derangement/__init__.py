"""Derangement characters of GL(n, q): exact coefficient tables, basis
transforms, extreme rays of the derangement cone and brute-force checks."""

__version__ = "0.1.0"
