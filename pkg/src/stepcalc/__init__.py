"""stepcalc: a limit-free numerical calculus toolkit.

Functions are defined as solutions of initial-value problems and evaluated
by explicit fixed-step integration; derivatives of rational expressions are
computed exactly in a non-Archimedean field of rational functions by
discarding infinitesimals.
"""

__version__ = "0.1.0"
