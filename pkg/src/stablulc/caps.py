"""Enumeration cap handling.

Exact routines that enumerate group elements or subspaces refuse to run
past the cap instead of approximating.  The default of 2**20 can be
overridden per call or globally via the STABLULC_ENUM_CAP env var.
"""

from __future__ import annotations

import os

DEFAULT_ENUM_CAP = 1 << 20


def enum_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    value = os.environ.get("STABLULC_ENUM_CAP", "")
    return int(value) if value else DEFAULT_ENUM_CAP
