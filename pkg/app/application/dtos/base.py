"""Base DTO class."""

import json
from typing import Any

from pydantic import BaseModel, ConfigDict


class DTO(BaseModel):
    """Base class for application DTOs (immutable reports)."""

    model_config = ConfigDict(frozen=True)

    def to_json(self) -> str:
        """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
        return canonical_json(self.model_dump(mode="json"))


def canonical_json(payload: Any) -> str:
    """Serialize a JSON-compatible payload byte-for-byte reproducibly."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
