"""Finite fields and flag counting."""
