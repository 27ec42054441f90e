"""On-disk memo of computed tables, keyed by content hashes.

The cache is an optimisation only: every entry is a pure function of its
key, so deleting the directory never changes any result.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Optional

CACHE_ENV = "FSBASIS_CACHE_DIR"
CACHE_VERSION = "1"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "fsbasis"


class ResultCache:
    def __init__(self, directory: Optional[os.PathLike] = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    @staticmethod
    def key(kind: str, *parts: Any, **params: Any) -> str:
        payload = json.dumps(
            {"v": CACHE_VERSION, "kind": kind, "parts": parts, "params": params},
            sort_keys=True,
            default=str,
        )
        return f"{kind}-{hashlib.sha256(payload.encode()).hexdigest()[:32]}"

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> Optional[Any]:
        try:
            with open(self._path(key), encoding="utf-8") as fh:
                return json.load(fh)
        except (FileNotFoundError, json.JSONDecodeError):
            return None

    def put(self, key: str, value: Any) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(value, fh, sort_keys=True)
            os.replace(tmp, self._path(key))  # atomic per key
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def entries(self) -> list:
        if not self.directory.is_dir():
            return []
        return sorted(p.stem for p in self.directory.glob("*.json"))

    def clear(self) -> int:
        n = 0
        for name in self.entries():
            self._path(name).unlink(missing_ok=True)
            n += 1
        return n

    def cached(self, key: str, compute, encode=lambda x: x, decode=lambda x: x):
        hit = self.get(key)
        if hit is not None:
            return decode(hit)
        value = compute()
        self.put(key, encode(value))
        return value
