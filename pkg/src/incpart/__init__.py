"""Exact increment encodings of partially exchangeable random partitions."""
__version__ = "0.1.0"
