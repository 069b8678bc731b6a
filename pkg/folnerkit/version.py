"""Version information for folnerkit."""

VERSION = "0.3.0"
