"""Command-line interface: syn, min, dual, check, corpus and eval."""
from synmon.cli.main import cli, main
