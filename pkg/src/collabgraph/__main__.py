"""Entry point for ``python -m collabgraph``."""

from .interface.cli import entry

if __name__ == "__main__":
    entry()
