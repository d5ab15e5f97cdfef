"""Kripke frames and models valued in a finite residuated lattice."""
