"""Tile catalog port."""

from abc import ABC, abstractmethod
from collections.abc import Mapping
from typing import Optional

from app.domain.value_objects.tile_spec import Point, TileSpec


class TileCatalog(ABC):
    """Port interface for looking up tiles by name."""

    @abstractmethod
    def get(self, name: str, overrides: Optional[Mapping[int, Point]] = None) -> TileSpec:
        """
        Get a tile by name, with optional vertex coordinate overrides.

        Args:
            name: Tile name
            overrides: Vertex index -> replacement coordinates

        Returns:
            TileSpec

        Raises:
            UnknownTileError: If no tile has that name
        """
        pass

    @abstractmethod
    def names(self) -> list[str]:
        """
        List the available tile names.

        Returns:
            Sorted tile names
        """
        pass
