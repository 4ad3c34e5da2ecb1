"""
kpcrystal - the crystal B(infinity) on Kostant partitions

Lusztig data and braid-move transport, bracketing operators for
semi-adapted words, and the tableau models of types A and D, with
verification suites that compare them.
"""

__version__ = "0.1.0"
