"""Matrix-variate gamma/beta integrals and Kober operators, with numerical verification."""

__version__ = "0.1.0"
