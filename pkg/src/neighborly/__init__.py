"""Exact oriented-matroid tools for building neighborly polytopes."""
