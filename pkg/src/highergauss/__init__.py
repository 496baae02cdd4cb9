"""Higher Gauss sums and central charges of modular data, in exact cyclotomic arithmetic."""

__version__ = "0.1.0"
