"""Perversity testing for complexes of coherent sheaves on stratified affine varieties."""

__version__ = "0.1.0"
