"""Curves with identified 3-torsion via reflection-group invariant theory."""
