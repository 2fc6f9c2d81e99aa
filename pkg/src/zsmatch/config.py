"""Enumeration cap shared by every module that lists tuples."""

import os

DEFAULT_CAP = 5_000_000
CAP_ENV = "ZSMATCH_CAP"


def resolve_cap(cap=None):
    """Return ``cap`` if given, else the ``ZSMATCH_CAP`` env var, else 5e6."""
    if cap is not None:
        cap = int(cap)
    else:
        raw = os.environ.get(CAP_ENV)
        cap = int(raw) if raw else DEFAULT_CAP
    if cap <= 0:
        raise ValueError("enumeration cap must be positive")
    return cap
