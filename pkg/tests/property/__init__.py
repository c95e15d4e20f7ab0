"""Property-based tests for adictrop."""
