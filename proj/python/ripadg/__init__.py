"""Moving-mesh DG solver for the Ripa model."""
try:
    from ._ripadg import RunResult, problems, run
except ImportError:  # extension built outside the package (ctest layout)
    from _ripadg import RunResult, problems, run

__all__ = ["RunResult", "problems", "run"]
