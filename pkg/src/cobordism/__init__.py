"""Exact calculator for cobordism of symplectic and prequantized manifolds."""
__version__ = "0.1.0"
