"""Finitely presented groups and certified just-finite presentations."""
