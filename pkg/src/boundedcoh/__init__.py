"""Bounded cohomology of finite groupoids with exact rational seminorms."""

__version__ = "0.1.0"
