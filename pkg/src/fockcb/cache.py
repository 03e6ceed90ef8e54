"""On-disk cache of computed blocks.

One JSON file per block, named by a digest of the job core (n, l, charge,
deficit, dotted strategy), the package version and the digest of the pinned
convention file, so re-pinning invalidates every entry. Writes go through a
temporary file and an atomic rename.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Optional

from . import __version__, conventions
from .report import BlockResult

log = logging.getLogger(__name__)

ENV_VAR = "FOCKCB_CACHE"


def cache_dir(flag: Optional[str]) -> Optional[Path]:
    value = flag or os.environ.get(ENV_VAR)
    return Path(value) if value else None


def block_key(n: int, charge, deficit, strategy: str) -> str:
    core = {
        "n": n,
        "charge": list(charge),
        "deficit": list(deficit),
        "strategy": strategy,
        "version": __version__,
        "conventions": conventions.pinned_digest(),
    }
    return hashlib.sha256(json.dumps(core, sort_keys=True).encode()).hexdigest()[:24]


def load(directory: Path, key: str) -> Optional[BlockResult]:
    path = directory / f"{key}.json"
    if not path.exists():
        return None
    try:
        return BlockResult.from_dict(json.loads(path.read_text(encoding="utf-8")))
    except (ValueError, KeyError) as exc:
        log.warning("ignoring unreadable cache entry %s: %s", path, exc)
        return None


def store(directory: Path, key: str, block: BlockResult) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{key}.json"
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{key}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(block.to_dict(), fh, ensure_ascii=False, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path
