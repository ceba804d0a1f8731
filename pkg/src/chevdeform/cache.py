"""Content-addressed JSON cache.

One file per result under a single directory.  The file name is the SHA-256
of the canonical key; a record written by a different tool version is a miss.
Writes go to a temporary file in the same directory and are renamed into place,
so concurrent invocations never observe a partial record.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from pathlib import Path

from . import __version__

ENV_VAR = "CHEVDEFORM_CACHE"


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "chevdeform"


class Cache:
    def __init__(self, directory=None, version=__version__):
        self.dir = Path(directory) if directory is not None else default_dir()
        self.version = version

    def path(self, key) -> Path:
        return self.dir / (hashlib.sha256(canonical(key).encode()).hexdigest() + ".json")

    def get(self, key):
        """Stored value for ``key`` or None (missing, stale or unreadable)."""
        try:
            rec = json.loads(self.path(key).read_text())
        except (OSError, ValueError):
            return None
        if rec.get("toolVersion") != self.version or rec.get("key") != key:
            return None
        return rec["value"]

    def put(self, key, value):
        self.dir.mkdir(parents=True, exist_ok=True)
        rec = {"key": key, "value": value, "toolVersion": self.version, "timestamp": time.time()}
        fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(canonical(rec))
            os.replace(tmp, self.path(key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def get_or_compute(self, key, compute):
        """Cached value, computing and storing it on a miss.  The value is
        round-tripped through JSON either way, so hits and misses agree."""
        hit = self.get(key)
        if hit is not None:
            return hit
        value = json.loads(canonical(compute()))
        self.put(key, value)
        return value

    def entries(self):
        if not self.dir.is_dir():
            return []
        return sorted(p for p in self.dir.glob("*.json") if not p.name.startswith(".tmp-"))

    def info(self):
        files = self.entries()
        stale = 0
        for f in files:
            try:
                if json.loads(f.read_text()).get("toolVersion") != self.version:
                    stale += 1
            except (OSError, ValueError):
                stale += 1
        return {"directory": str(self.dir), "entries": len(files), "stale": stale,
                "bytes": sum(f.stat().st_size for f in files), "toolVersion": self.version}

    def clear(self):
        files = self.entries()
        for f in files:
            f.unlink(missing_ok=True)
        return len(files)
