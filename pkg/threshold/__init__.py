"""Core threshold-model values."""
