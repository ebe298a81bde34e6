"""Incremental chart parser bindings."""

try:
    from ._incparse import (
        Grammar,
        GrammarError,
        InvalidModification,
        OracleMismatch,
        Session,
        batch_dump,
    )
except ImportError:  # in-tree layout: extension built next to the package
    from _incparse import (
        Grammar,
        GrammarError,
        InvalidModification,
        OracleMismatch,
        Session,
        batch_dump,
    )

__all__ = [
    "Grammar",
    "GrammarError",
    "InvalidModification",
    "OracleMismatch",
    "Session",
    "batch_dump",
]
