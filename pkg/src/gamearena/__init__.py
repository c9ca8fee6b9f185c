"""Text-prompted two-player game arena with intermediate-reasoning oracles."""

__version__ = "0.1.0"
