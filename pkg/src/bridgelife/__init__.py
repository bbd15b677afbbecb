"""Bridge service-life modelling and maintenance planning."""

__version__ = "0.1.0"
