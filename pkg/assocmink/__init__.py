"""
assocmink - exact right-hand sides and Minkowski coefficients of
Coxeter-element realisations of the associahedron.
"""

__version__ = "0.1.0"
