"""Exact verification toolkit for multiplier Hopf coquasigroups built from loops."""

__version__ = "0.1.0"
