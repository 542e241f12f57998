"""Adapters layer - inbound and outbound adapters."""
