"""Inbound adapters (primary adapters)."""
