"""adictrop test suite."""
