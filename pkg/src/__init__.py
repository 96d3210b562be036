"""
LRJ Calculus Workbench

Chart-local Cartan calculus on first-order differential operators, with
checkers for locally conformal symplectic, Lie-Rinehart-Jacobi and
contact structures.
"""

__version__ = "0.3.0"
