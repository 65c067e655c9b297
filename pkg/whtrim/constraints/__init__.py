"""
Weakly-hard constraints for whtrim.

Constraint and trace types plus the brute-force semantic oracle.
"""

from whtrim.constraints.core import (
    HIT,
    MISS,
    MAX_ENUMERATION_LENGTH,
    ConstraintError,
    ConstraintKind,
    InvalidConstraintError,
    LimitExceeded,
    WeaklyHardConstraint,
    Word,
    dual,
    enumerate_language,
    language_size,
    satisfies,
)

__all__ = [
    "HIT",
    "MISS",
    "MAX_ENUMERATION_LENGTH",
    "ConstraintError",
    "ConstraintKind",
    "InvalidConstraintError",
    "LimitExceeded",
    "WeaklyHardConstraint",
    "Word",
    "dual",
    "enumerate_language",
    "language_size",
    "satisfies",
]
