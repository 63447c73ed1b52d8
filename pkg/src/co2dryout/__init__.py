"""Linear interfacial stability of annular flow boiling and dryout inception."""

__version__ = "0.1.0"
