"""Integration tests for the adictrop runner and CLI."""
