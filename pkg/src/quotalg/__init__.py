"""Exact computations with affine quotients of finite flat equivalence relations and diagonalizable group actions."""

__version__ = "0.1.0"
