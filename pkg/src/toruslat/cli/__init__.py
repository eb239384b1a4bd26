"""Command-line surface: ``toruslat <command> --group ... --lattice ...``."""

from .main import JobSpec, execute, main, run

__all__ = ["JobSpec", "execute", "main", "run"]
