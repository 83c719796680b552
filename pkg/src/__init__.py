"""Exact construction, validation and classification of GRS, weak GRS and AGRS root systems."""
