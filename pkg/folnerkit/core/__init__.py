"""Core modules for folnerkit."""

__all__ = ["config", "constants", "exceptions", "logging", "numeric"]
