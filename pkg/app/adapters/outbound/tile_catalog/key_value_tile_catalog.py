"""Builtin tiles with coordinate overrides read from a key=value file."""

import os
import re
from collections.abc import Mapping
from pathlib import Path
from typing import Optional

from dotenv import dotenv_values

from app.application.ports.tile_catalog import TileCatalog
from app.domain.value_objects.tile_spec import BUILTIN_TILE_NAMES, Point, TileSpec, builtin_tile

_VERTEX_KEY = re.compile(r"^(?P<tile>[a-z0-9_]+)\.vertex\.(?P<index>\d+)$")


def parse_point(text: str) -> Point:
    """
    Parse 'x,y' into a point.

    Raises:
        ValueError: If the text is not two comma-separated numbers
    """
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"Expected 'x,y', got '{text}'")
    return (float(parts[0]), float(parts[1]))


class KeyValueTileCatalog(TileCatalog):
    """Catalog of builtin tiles whose vertices may be moved by a key=value file."""

    def __init__(self, path: Optional[str] = None) -> None:
        """
        Initialize key=value tile catalog.

        Args:
            path: Override file with lines like `hexagon3.vertex.2=5,2`.
                Defaults to data/tiles.conf relative to project root; a
                missing file means no overrides.
        """
        if path is None:
            project_root = Path(__file__).parent.parent.parent.parent.parent
            path = str(project_root / "data" / "tiles.conf")
        self._path = path
        self._overrides: dict[str, dict[int, Point]] = {}
        self._load_overrides()

    def _load_overrides(self) -> None:
        """Load and parse the override file."""
        if not os.path.exists(self._path):
            return
        for key, value in dotenv_values(self._path).items():
            match = _VERTEX_KEY.match(key.strip().lower())
            if not match or value is None:
                raise ValueError(f"Invalid tile override '{key}' in {self._path}")
            tile = self._overrides.setdefault(match["tile"], {})
            tile[int(match["index"])] = parse_point(value)

    def overrides(self, name: str) -> dict[int, Point]:
        """Coordinate overrides the file defines for a tile."""
        return dict(self._overrides.get(name, {}))

    def get(self, name: str, overrides: Optional[Mapping[int, Point]] = None) -> TileSpec:
        """
        Get a builtin tile with file overrides, then explicit overrides, applied.

        Raises:
            UnknownTileError: If no builtin tile has that name
        """
        merged = self.overrides(name)
        merged.update(overrides or {})
        return builtin_tile(name, merged or None)

    def names(self) -> list[str]:
        """Sorted builtin tile names."""
        return sorted(BUILTIN_TILE_NAMES)
