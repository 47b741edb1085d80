"""Chromatic Euler characteristics of finite groups, orbispaces, Coxeter groups and arithmetic groups."""

__version__ = "1.0.0"
