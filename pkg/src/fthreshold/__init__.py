"""F-pure thresholds and F-thresholds of binary forms over finite fields."""

__version__ = "0.1.0"
