"""Command-line interface for folnerkit."""
