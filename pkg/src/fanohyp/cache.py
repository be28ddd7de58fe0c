"""Content-addressed on-disk cache for rendered command output."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

ENV_VAR = "FANOHYP_CACHE_DIR"


def cache_key(payload: dict, version: str) -> str:
    canonical = json.dumps({"input": payload, "version": version}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class ResultCache:
    """One JSON file per key; entries whose version stamp differs are ignored and overwritten."""

    def __init__(self, directory: str | os.PathLike, version: str):
        self.directory = Path(directory)
        self.version = version

    @classmethod
    def from_settings(cls, directory: str | None, disabled: bool, version: str) -> ResultCache | None:
        if disabled:
            return None
        directory = directory or os.environ.get(ENV_VAR)
        return cls(directory, version) if directory else None

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, payload: dict) -> str | None:
        key = cache_key(payload, self.version)
        try:
            entry = json.loads(self._path(key).read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return None
        if entry.get("version") != self.version or entry.get("key") != key:
            return None
        return entry.get("output")

    def put(self, payload: dict, output: str) -> None:
        key = cache_key(payload, self.version)
        self.directory.mkdir(parents=True, exist_ok=True)
        entry = json.dumps({"key": key, "version": self.version, "input": payload, "output": output}, sort_keys=True)
        # write-then-rename so a concurrent reader never sees a partial file
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(entry)
            os.replace(tmp, self._path(key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
