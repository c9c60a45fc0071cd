"""Tiny on-disk result cache: one JSON file per key, written atomically."""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

log = logging.getLogger(__name__)


class ResultCache:
    def __init__(self, root: str | os.PathLike | None):
        self.root = Path(root) if root else None
        if self.root is not None:
            try:
                self.root.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                log.warning("cache disabled: cannot create %s (%s)", self.root, exc)
                self.root = None

    @property
    def enabled(self) -> bool:
        return self.root is not None

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str) -> dict | None:
        if self.root is None:
            return None
        try:
            with open(self._path(key), encoding="utf-8") as fh:
                value = json.load(fh)
        except FileNotFoundError:
            return None
        except (OSError, ValueError) as exc:
            log.warning("ignoring unreadable cache entry %s: %s", key, exc)
            return None
        if not isinstance(value, dict) or value.get("key") != key:
            log.warning("ignoring malformed cache entry %s", key)
            return None
        return value

    def put(self, key: str, value: dict) -> None:
        if self.root is None:
            return
        target = self._path(key)
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=".tmp-", suffix=".json")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    json.dump({**value, "key": key}, fh, sort_keys=True)
                os.replace(tmp, target)
            except BaseException:
                Path(tmp).unlink(missing_ok=True)
                raise
        except OSError as exc:
            # the cache is an optimisation; a failed write must not fail the run
            log.warning("could not write cache entry %s: %s", key, exc)
