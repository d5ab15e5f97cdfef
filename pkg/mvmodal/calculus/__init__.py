"""Axiom systems, derivation checking and axiom generators."""
