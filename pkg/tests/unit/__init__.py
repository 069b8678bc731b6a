"""Unit tests."""
