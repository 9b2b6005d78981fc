"""Combinatorial checks for endoscopic transfer and the Aubert-Zelevinsky
involution on metaplectic groups.

Levi subgroups, endoscopic data, eigenvalue fibers over a finite field,
a typed operator calculus for induction/restriction/transfer, and a
Jordan-block model of discrete L-parameters.
"""

__version__ = "0.1.0"
