"""Risk assessment engine and desk-scale attack lab for adversarial-ML
threats against ML use cases deployed in O-RAN."""

__version__ = "0.1.0"
