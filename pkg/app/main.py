"""Command-line entrypoint: python -m app.main <command> [action] [flags]."""

import sys

from app.adapters.inbound.cli.commands import run


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
