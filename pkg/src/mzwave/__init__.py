"""mzwave: Magnus-Zassenhaus spectral splitting for semiclassical Schrodinger dynamics."""

__version__ = "0.1.0"
