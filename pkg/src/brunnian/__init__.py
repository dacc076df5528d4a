"""Brunnian link toolkit: PD diagrams, Reidemeister search, invariants, families."""

__version__ = "0.1.0"
