"""Workbench for finite skew lattices."""
