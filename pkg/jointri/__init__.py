"""jointri - joint unitary triangularization of matrix pairs."""

__version__ = "1.0.0"
