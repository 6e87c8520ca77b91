"""Near-linear (1 + eps)-approximation of the continuous Fréchet distance
for curves where at least one side is c-packed."""

__version__ = "0.1.0"
