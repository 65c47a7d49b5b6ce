"""qpslab: pointwise verification lab for multiplicative quasi-Poisson geometry.

Exact rational linear algebra, matrix Lie groups with Borel data,
forward-mode differentiation of rational matrix maps, Dirac-structure fiber
calculus, and seeded verification campaigns over the Grothendieck-Springer
space G x_B B.
"""

__version__ = "0.1.0"
