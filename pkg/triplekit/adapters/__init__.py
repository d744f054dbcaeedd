"""Adapters for JSON files."""
