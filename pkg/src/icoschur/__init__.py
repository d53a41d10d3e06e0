"""Icosahedral quasicrystal transitions via Schur rotations in six dimensions."""

__version__ = "0.1.0"
