"""Shipped seed conformations, one verified lattice polygon per knot type.

Seeds were generated by the repository's data tools from braid, four-plat
and pretzel realizations, shrunk with BFACF, and verified by the
identification pipeline; `tools/gen_seeds.py` reproduces the file.
"""

from __future__ import annotations

import importlib.resources
from pathlib import Path

from .polygon import LatticePolygon, read_polygons

_CACHE: dict[str, LatticePolygon] | None = None


def _seed_file() -> Path:
    return Path(str(importlib.resources.files("bandknot").joinpath(
        "data", "seeds", "seeds.txt")))


def _load_all() -> dict[str, LatticePolygon]:
    global _CACHE
    if _CACHE is None:
        with open(_seed_file()) as f:
            _CACHE = dict(read_polygons(f))
    return _CACHE


def list_seeds() -> list[str]:
    return sorted(_load_all())


def load_seed(name: str) -> LatticePolygon:
    seeds = _load_all()
    if name not in seeds:
        raise KeyError(f"no shipped seed for {name!r}; have {len(seeds)} types")
    return seeds[name]
