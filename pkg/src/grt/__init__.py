"""Graph- and hypergraph-constrained tensors and their holographic networks."""

__version__ = "0.1.0"
