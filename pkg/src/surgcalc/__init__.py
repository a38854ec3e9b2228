"""Exact invariant and fundamental-group calculus for symplectic 4-manifold surgeries."""

__version__ = "0.1.0"
