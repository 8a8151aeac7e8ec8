"""Exact algorithms parameterized by hub size, with brute-force oracles for every solver."""
from .graph import Graph, HubDecomposition, ListAssignment, greedy_hub, validate_hub

__all__ = ["Graph", "HubDecomposition", "ListAssignment", "greedy_hub", "validate_hub"]
__version__ = "0.1.0"
