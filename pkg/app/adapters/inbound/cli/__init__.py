"""Command-line inbound adapter (argparse front end)."""
