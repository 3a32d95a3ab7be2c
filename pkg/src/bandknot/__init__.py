"""Band surgery on cubic-lattice knots.

BFACF sampling of lattice knots, reconnection (band surgery), exact
polynomial/abelian invariants, knot identification against a curated
table, banding obstruction criteria, and transition statistics.
"""

__version__ = "0.1.0"
