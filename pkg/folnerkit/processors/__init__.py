"""Numeric kernels: flows, tilting and convolutions."""
