"""Representation and sheaf categories of Legendrian (2,m) torus links.

Everything is computed in exact arithmetic over a prime field F_p.  The two
cohomology categories (DGA representations on one side, microlocal-rank-n
constructible sheaves on the other) are built independently and compared by
enumeration and cross-oracle checks; see the README for the layout.
"""

__version__ = "0.1.0"
