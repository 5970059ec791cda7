"""codecrypt-lab: code-based cryptography experiments from your terminal."""

__version__ = "1.0.0"
