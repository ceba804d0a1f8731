"""Deformation conditions for finite Chevalley groups: exact arithmetic over
finite local rings, enumerated matrix groups, adjoint modules, low-degree
cohomology, a table-driven classifier and reconstructions of worked examples."""

__version__ = "0.1.0"
