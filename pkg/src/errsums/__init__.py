"""Error sums with split denominators."""

__version__ = "0.1.0"
