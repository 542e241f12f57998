"""Outbound adapters (secondary adapters)."""
