from .datasets import ReferenceGraph, load_reference_graph, load_reference_graphs
