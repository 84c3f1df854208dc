"""Packing and covering toolkit.

Solvers and exact oracles for four related problems — triangle packing,
minimum full-sibling covers, maximum profit coverage, and 2-coverage —
plus executable instance transformations between them.
"""

__version__ = "0.1.0"
