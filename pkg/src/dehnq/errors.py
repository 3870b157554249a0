"""Error types shared across the package.

DomainError marks invalid inputs or violated preconditions; ResourceCapError
marks searches or constructions that would exceed a configured budget.
The CLI maps them to exit codes 1 and 3 respectively.
"""

from __future__ import annotations

import os


class DomainError(ValueError):
    """Malformed input or violated operation precondition."""


class ResourceCapError(RuntimeError):
    """A configured cap (nodes, closure size, matrix size) was exhausted."""


DEFAULT_NODE_CAP = 10**6


def global_node_cap(default: int = DEFAULT_NODE_CAP) -> int:
    """Node budget, overridable via the QK_MAX_NODES environment variable."""
    raw = os.environ.get("QK_MAX_NODES")
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise DomainError(f"QK_MAX_NODES must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise DomainError(f"QK_MAX_NODES must be positive, got {value}")
    return value
