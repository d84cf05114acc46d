"""Steady-state transport and noise in quantum wire junctions."""

from ._core import (
    BoundStateError,
    Dirac,
    DomainError,
    Error,
    InvariantError,
    NumericalError,
    Schrodinger,
    ValidationError,
    __version__,
    critical_smatrix,
    exp_integral_e1,
    polylog,
    run,
    smatrix,
    two_lead_smatrix,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NON_CONVERGENCE = 3
EXIT_INVARIANT = 4


def run_file(mode, path, **kwargs):
    """Like run(), reading the config from a file."""
    with open(path, encoding="utf-8") as f:
        return run(mode, f.read(), **kwargs)


__all__ = [
    "BoundStateError",
    "Dirac",
    "DomainError",
    "EXIT_INVARIANT",
    "EXIT_NON_CONVERGENCE",
    "EXIT_OK",
    "EXIT_VALIDATION",
    "Error",
    "InvariantError",
    "NumericalError",
    "Schrodinger",
    "ValidationError",
    "__version__",
    "critical_smatrix",
    "exp_integral_e1",
    "polylog",
    "run",
    "run_file",
    "smatrix",
    "two_lead_smatrix",
]
