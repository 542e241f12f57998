"""Tile catalog adapters."""

from app.adapters.outbound.tile_catalog.key_value_tile_catalog import KeyValueTileCatalog

__all__ = ["KeyValueTileCatalog"]
