"""Discrete-variable quantum convolution toolkit.

Weyl operators and characteristic functions over prime qudits, stabilizer
states, magic-gap diagnostics, generalized entropies, the two-input quantum
convolution, and seeded verification suites for its structural theorems.
"""

__all__ = [
    "zmod",
    "linalg",
    "weyl",
    "states",
    "magic",
    "entropy",
    "conv",
    "experiments",
    "cli",
    "errors",
]

__version__ = "0.1.0"
