"""Cross-source news claim linking and annotated reading."""

__version__ = "0.1.0"
