"""Bundled automaton documents."""
