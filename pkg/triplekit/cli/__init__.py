"""Command-line interface for triplekit."""

__version__ = "0.1.0"
