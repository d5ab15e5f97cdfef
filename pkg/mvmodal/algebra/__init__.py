"""Finite residuated lattices: construction, presets, classification, filters."""
