"""Belief-change automata and their action-model translation."""
