"""On-disk cache of elimination results, keyed by (format version, n)."""

from __future__ import annotations

import json
import os
import shutil
import tempfile
from pathlib import Path
from typing import Callable, Optional

import platformdirs

from derangement.cone.elimination import ConeBasis, eliminate
from derangement.serialize import (
    FORMAT_VERSION,
    block_vector_from_json,
    block_vector_to_json,
    coeff_from_json,
    coeff_to_json,
    partition_from_json,
    partition_to_json,
)

ENV_VAR = "DERANGEMENT_CACHE_DIR"
# set to "0" to bypass the disk cache entirely
ENABLE_VAR = "DERANGEMENT_DISK_CACHE"

_override: Optional[Path] = None


def set_cache_dir(path: Optional[os.PathLike | str]) -> None:
    global _override
    _override = None if path is None else Path(path)


def cache_root() -> Path:
    if _override is not None:
        return _override
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(platformdirs.user_data_dir("derangement", appauthor=False))


def cache_dir() -> Path:
    return cache_root() / f"v{FORMAT_VERSION}"


def _enabled() -> bool:
    return os.environ.get(ENABLE_VAR, "1") != "0"


def basis_path(n: int) -> Path:
    return cache_dir() / f"basis-n{n}.json"


def basis_to_json(b: ConeBasis) -> dict:
    return {
        "format": FORMAT_VERSION,
        "n": b.n,
        "taus": [block_vector_to_json(t) for t in b.taus],
        "transition": [[coeff_to_json(c) for c in row] for row in b.transition],
        "witnesses": [[None if w is None else partition_to_json(w) for w in row] for row in b.witnesses],
    }


def basis_from_json(data: dict) -> ConeBasis:
    return ConeBasis(
        n=data["n"],
        taus=tuple(block_vector_from_json(t) for t in data["taus"]),
        transition=tuple(tuple(coeff_from_json(c) for c in row) for row in data["transition"]),
        witnesses=tuple(tuple(None if w is None else partition_from_json(w) for w in row)
                        for row in data["witnesses"]),
    )


def load_basis(n: int) -> Optional[ConeBasis]:
    path = basis_path(n)
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if data.get("format") != FORMAT_VERSION or data.get("n") != n:
        return None
    return basis_from_json(data)


def store_basis(b: ConeBasis) -> Path:
    """Atomic write: concurrent writers race to the same canonical content."""
    path = basis_path(b.n)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(basis_to_json(b), fh, sort_keys=True)
    os.replace(tmp, path)
    return path


def cached_basis(n: int, deadline: Optional[Callable[[], None]] = None) -> ConeBasis:
    """eliminate(n), read from or written to the disk cache when enabled."""
    if _enabled():
        hit = load_basis(n)
        if hit is not None:
            return hit
    b = eliminate(n, deadline)
    if _enabled():
        try:
            store_basis(b)
        except OSError:
            pass
    return b


def list_entries() -> list[Path]:
    d = cache_dir()
    return sorted(d.glob("*.json")) if d.is_dir() else []


def clear() -> int:
    """Remove every cache entry of every format version; returns files removed."""
    root = cache_root()
    if not root.is_dir():
        return 0
    count = sum(1 for _ in root.rglob("*.json"))
    for child in root.iterdir():
        if child.is_dir() and child.name.startswith("v"):
            shutil.rmtree(child)
    return count
