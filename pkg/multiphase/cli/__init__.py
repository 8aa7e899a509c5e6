"""Command-line interface for Multiphase."""
