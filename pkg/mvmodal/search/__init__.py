"""Exact non-modal consequence and bounded countermodel search."""
