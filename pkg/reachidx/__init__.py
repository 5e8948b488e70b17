"""Reachability indexing toolkit: closure oracle, tree cover, backbones and hop labelings."""

__version__ = "0.1.0"
