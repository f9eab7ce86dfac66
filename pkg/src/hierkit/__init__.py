"""Exact homological calculus for boundary kernels, basic classes and Floer rank tables."""

__version__ = "0.1.0"
