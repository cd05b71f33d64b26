"""Write-once store for counted structure constants, optionally persisted as JSON lines."""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

KINDS = ("c", "h", "g", "a")
CACHE_FILENAME = "constants.jsonl"


class CacheConflictError(RuntimeError):
    pass


class CacheCorruptError(ValueError):
    def __init__(self, path, lineno, reason):
        super().__init__(f"{path}:{lineno}: corrupt cache record ({reason})")
        self.path = str(path)
        self.lineno = lineno


def _key(kind, q, matrices):
    return (kind, q, tuple(tuple(tuple(r) for r in m) for m in matrices))


class ConstantCache:
    """Map ``(kind, q, matrices) -> int``.

    A key may be written many times with the same value; a different value
    raises :class:`CacheConflictError`. ``enumerations`` counts how many
    brute-force enumerations ran to fill the cache.
    """

    def __init__(self, path=None):
        self._data = {}
        self._lock = threading.Lock()
        self._fh = None
        self.path = None
        self.enumerations = 0
        self.loaded = 0
        if path is not None:
            self.attach(path)

    def __len__(self):
        return len(self._data)

    def __contains__(self, key):
        return key in self._data

    def get(self, kind, q, matrices):
        return self._data.get(_key(kind, q, matrices))

    def put(self, kind, q, matrices, value: int):
        self.put_many(kind, q, [(matrices, value)])

    def put_many(self, kind, q, items):
        if kind not in KINDS:
            raise ValueError(f"unknown constant kind {kind!r}")
        lines = []
        with self._lock:
            for matrices, value in items:
                key = _key(kind, q, matrices)
                old = self._data.get(key)
                if old is not None:
                    if old != value:
                        raise CacheConflictError(f"{key}: cached {old}, new {value}")
                    continue
                self._data[key] = int(value)
                if self._fh is not None:
                    lines.append(_record(key, value))
            if lines:
                self._fh.write("".join(lines))
                self._fh.flush()

    def note_enumeration(self):
        with self._lock:
            self.enumerations += 1

    def attach(self, path):
        """Load an existing file (or directory holding one) and append new records to it."""
        path = Path(path)
        if path.is_dir() or path.suffix != ".jsonl":
            path.mkdir(parents=True, exist_ok=True)
            path = path / CACHE_FILENAME
        if path.exists():
            with path.open() as fh:
                for lineno, line in enumerate(fh, 1):
                    if not line.strip():
                        continue
                    kind, q, matrices, value = _parse(path, lineno, line)
                    key = _key(kind, q, matrices)
                    old = self._data.get(key)
                    if old is not None and old != value:
                        raise CacheCorruptError(path, lineno, f"conflicts with earlier value {old}")
                    self._data[key] = value
                    self.loaded += 1
        self.close()
        self._fh = path.open("a")
        self.path = path
        # records already in memory but not yet on disk
        on_disk = set()
        with path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                if line.strip():
                    kind, q, matrices, _ = _parse(path, lineno, line)
                    on_disk.add(_key(kind, q, matrices))
        missing = [k for k in self._data if k not in on_disk]
        if missing:
            self._fh.write("".join(_record(k, self._data[k]) for k in sorted(missing)))
            self._fh.flush()

    def close(self):
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def clear(self):
        with self._lock:
            self._data.clear()
            self.enumerations = 0


def _record(key, value):
    kind, q, matrices = key
    n = len(matrices[0]) if matrices else 0
    rec = {"kind": kind, "q": q, "n": n, "matrices": [[list(r) for r in m] for m in matrices], "value": int(value)}
    return json.dumps(rec, separators=(",", ":")) + "\n"


def _parse(path, lineno, line):
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CacheCorruptError(path, lineno, f"invalid JSON: {exc.msg}") from None
    if not isinstance(rec, dict):
        raise CacheCorruptError(path, lineno, "record is not an object")
    for field in ("kind", "q", "n", "matrices", "value"):
        if field not in rec:
            raise CacheCorruptError(path, lineno, f"missing field {field!r}")
    kind, q, n, matrices, value = (rec[f] for f in ("kind", "q", "n", "matrices", "value"))
    if kind not in KINDS:
        raise CacheCorruptError(path, lineno, f"unknown kind {kind!r}")
    if not isinstance(q, int) or not isinstance(value, int) or isinstance(value, bool):
        raise CacheCorruptError(path, lineno, "q and value must be integers")
    try:
        mats = tuple(tuple(tuple(int(x) for x in row) for row in m) for m in matrices)
    except (TypeError, ValueError):
        raise CacheCorruptError(path, lineno, "matrices must be nested integer lists") from None
    if any(len(m) != n or any(len(r) != n for r in m) for m in mats):
        raise CacheCorruptError(path, lineno, f"matrices are not {n}x{n}")
    return kind, q, mats, value


_default = None
_default_lock = threading.Lock()


def default_cache() -> ConstantCache:
    """Process-wide cache; attaches to ``$QGL_CACHE_DIR`` when that is set."""
    global _default
    with _default_lock:
        if _default is None:
            env = os.environ.get("QGL_CACHE_DIR")
            _default = ConstantCache(env if env else None)
        return _default


def set_default_cache(cache: ConstantCache) -> ConstantCache:
    global _default
    with _default_lock:
        old, _default = _default, cache
    if old is not None and old is not cache:
        old.close()
    return cache
