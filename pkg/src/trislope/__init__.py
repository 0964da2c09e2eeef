"""Exact 3-slopes segment representations of Eulerian planar triangulations."""

__version__ = "0.1.0"
