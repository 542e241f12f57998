"""Command-line parser and run configuration builder."""

import argparse
import re
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any, Optional

from dotenv import dotenv_values

from app.adapters.outbound.tile_catalog.key_value_tile_catalog import parse_point
from app.application.dtos.pipeline import MODE_CHOICES, ExpectedVerdicts, RunConfig
from app.domain.entities.finite_group import GENERATOR_SETS
from app.infrastructure.config.settings import Settings

COMMANDS: dict[str, tuple[str, ...]] = {
    "triple": ("verify",),
    "graph": ("build", "orient"),
    "chars": ("table", "decompose"),
    "intertwine": ("solve",),
    "surface": ("build", "export"),
    "spectrum": ("compute",),
    "compare": (),
    "transplant": ("verify",),
    "pipeline": (),
    "fefferman": (),
}

_ALIASES = {
    "gens": "generator_set",
    "generators": "generator_set",
    "params": "parameters",
    "rel_tol": "tol",
}
_LIST_SEPARATORS = re.compile(r"[,\s]+")
_VERTEX_KEY = re.compile(r"^vertex\.(?P<index>\d+)$")
_EXPECTED_KEY = re.compile(r"^expected\.(?P<field>[a-z0-9_]+)$")


def split_list(values: Iterable[str]) -> list[str]:
    """Flatten comma- or whitespace-separated items."""
    items: list[str] = []
    for value in values:
        items.extend(part for part in _LIST_SEPARATORS.split(value.strip()) if part)
    return items


def read_segment_file(path: str) -> list[str]:
    """
    Neumann segment names of a mixed boundary condition file.

    One or more names per line, separated by commas or blanks; text after '#'
    is ignored.

    Raises:
        ValueError: If the file is missing or names no segment
    """
    file = Path(path)
    if not file.is_file():
        raise ValueError(f"Mixed boundary condition file '{path}' does not exist")
    lines = [line.split("#", 1)[0] for line in file.read_text(encoding="utf-8").splitlines()]
    names = split_list(lines)
    if not names:
        raise ValueError(f"Mixed boundary condition file '{path}' names no segment")
    return names


def parse_bc(value: str) -> tuple[str, list[str]]:
    """
    Parse neumann, dirichlet or mixed:<file>.

    Returns:
        (bc, Neumann segments of a mixed condition)
    """
    if value in ("neumann", "dirichlet"):
        return value, []
    if value.startswith("mixed:"):
        return "mixed", read_segment_file(value.split(":", 1)[1])
    raise ValueError(
        f"Boundary condition must be neumann, dirichlet or mixed:<file>, got '{value}'"
    )


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file overriding flags")
    common.add_argument("--group", help="group name (gerst)")
    common.add_argument("--tile", help="tile name")
    common.add_argument("--subgroup", help="subgroup of single-surface commands")
    common.add_argument("--h1", help="first subgroup")
    common.add_argument("--h2", help="second subgroup")
    common.add_argument("--gens", choices=sorted(GENERATOR_SETS), help="generator set")
    common.add_argument("--refine", nargs="+", help="refinement levels, e.g. 8,16,32")
    common.add_argument("--bc", help="neumann, dirichlet or mixed:<file>")
    common.add_argument("--mode", choices=MODE_CHOICES, help="fem or graph")
    common.add_argument("--count", type=int, help="number of eigenpairs")
    common.add_argument("--tol", type=float, help="comparison tolerance")
    common.add_argument("--solver-tol", type=float, help="eigen-residual tolerance")
    common.add_argument("--seed", type=int, help="solver seed")
    common.add_argument("--params", help="transplantation parameters a,b,c,d")
    common.add_argument("--out", help="output directory")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per pipeline stage."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="isospec",
        description="Isospectral flat surfaces from a Gassmann-Sunada triple",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for command, actions in COMMANDS.items():
        if actions:
            sub = commands.add_parser(command)
            nested = sub.add_subparsers(dest="action", required=True)
            for action in actions:
                nested.add_parser(action, parents=[common])
        else:
            commands.add_parser(command, parents=[common])
    return parser


def _flag_values(args: argparse.Namespace) -> dict[str, Any]:
    values: dict[str, Any] = {}
    for flag in ("group", "tile", "subgroup", "h1", "h2", "mode", "count", "tol", "seed", "out"):
        value = getattr(args, flag, None)
        if value is not None:
            values[flag] = value
    if getattr(args, "solver_tol", None) is not None:
        values["solver_tol"] = args.solver_tol
    if getattr(args, "gens", None) is not None:
        values["generator_set"] = args.gens
    if getattr(args, "refine", None):
        values["refine"] = [int(k) for k in split_list(args.refine)]
    if getattr(args, "params", None):
        values["parameters"] = tuple(int(p) for p in split_list([args.params]))
    if getattr(args, "bc", None):
        values["bc"], values["mixed_neumann"] = parse_bc(args.bc)
    return values


def config_file_values(entries: Mapping[str, Optional[str]]) -> dict[str, Any]:
    """
    Run configuration fields of a key=value file.

    Keys are RunConfig field names (or gens, params), `vertex.<i>=x,y` for tile
    coordinate overrides and `expected.<stage>=<verdict>`.

    Raises:
        ValueError: For an empty value
    """
    values: dict[str, Any] = {}
    overrides: dict[int, tuple[float, float]] = {}
    expected: dict[str, str] = {}
    for raw_key, raw_value in entries.items():
        key = raw_key.strip().lower()
        if raw_value is None or not raw_value.strip():
            raise ValueError(f"Config key '{raw_key}' has no value")
        value = raw_value.strip()
        key = _ALIASES.get(key, key)
        if match := _VERTEX_KEY.match(key):
            overrides[int(match["index"])] = parse_point(value)
        elif match := _EXPECTED_KEY.match(key):
            expected[match["field"]] = value
        elif key == "refine":
            values["refine"] = [int(k) for k in split_list([value])]
        elif key == "parameters":
            values["parameters"] = tuple(int(p) for p in split_list([value]))
        elif key == "mixed_neumann":
            values["mixed_neumann"] = split_list([value])
        elif key == "bc":
            values["bc"], mixed = parse_bc(value)
            if mixed:
                values["mixed_neumann"] = mixed
        else:
            values[key] = value
    if overrides:
        values["tile_overrides"] = overrides
    if expected:
        values["expected"] = ExpectedVerdicts(**expected)
    return values


def build_run_config(
    args: argparse.Namespace, settings: Settings, **defaults: Any
) -> RunConfig:
    """
    Validated run configuration.

    Precedence: settings < command defaults < flags < --config file.

    Args:
        args: Parsed arguments
        settings: Application settings
        **defaults: Command-specific defaults (e.g. the tile of fefferman)

    Returns:
        RunConfig

    Raises:
        ValueError: On an invalid value (pydantic validation errors included)
    """
    values: dict[str, Any] = {
        "seed": settings.seed,
        "tol": settings.compare_tol,
        "solver_tol": settings.solver_tol,
        "out": settings.output_dir,
    }
    values.update(defaults)
    values.update(_flag_values(args))
    if getattr(args, "config", None):
        if not Path(args.config).is_file():
            raise ValueError(f"Config file '{args.config}' does not exist")
        values.update(config_file_values(dotenv_values(args.config)))
    return RunConfig(**values)
