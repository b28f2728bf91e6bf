"""Shared, size-bounded cache of ring contexts keyed by n."""

from __future__ import annotations

import os
from functools import lru_cache

from .wcalg import WRing

CACHE_SIZE = int(os.environ.get("RPCONF_CACHE_SIZE", "128"))


@lru_cache(maxsize=CACHE_SIZE)
def ring_for(n: int) -> WRing:
    return WRing(n, space="C")
