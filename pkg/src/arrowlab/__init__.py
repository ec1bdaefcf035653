"""Finite partition-calculus laboratory for well-connected sets.

Ordinals below epsilon_0, walk functions, pair colorings, the tree orders
induced by well-connectedness, and deciders for the finite arrows
``n -> (m)^2_k``, ``->_hc`` and ``->_wc``.
"""
__version__ = "0.1.0"
