"""Unit tests for adictrop components."""
