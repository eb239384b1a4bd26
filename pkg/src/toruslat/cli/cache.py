"""Content-addressed cache of command outputs.

Entries live under ``<dir>/<key[:2]>/<key>.json`` where ``key`` is the
SHA-256 of the canonical job document.  An entry stores the output text
and its checksum.  Reads verify both plus a cheap structural check from the
caller; anything that fails is treated as a miss and overwritten.  Writes go
to a temporary file in the same directory and are renamed into place, so
concurrent processes never observe a partial entry.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .. import __version__

ENV_VAR = "TORUSLAT_CACHE_DIR"

log = logging.getLogger(__name__)


def job_key(job_doc_text: str) -> str:
    h = hashlib.sha256()
    h.update(f"toruslat {__version__}\n".encode())
    h.update(job_doc_text.encode("utf-8"))
    return h.hexdigest()


def default_dir():
    value = os.environ.get(ENV_VAR)
    return Path(value) if value else None


class Cache:
    def __init__(self, directory):
        self.dir = Path(directory)

    def _path(self, key):
        return self.dir / key[:2] / f"{key}.json"

    def get(self, key, validate=None):
        """Cached output text, or ``None`` on a miss or a damaged entry."""
        path = self._path(key)
        try:
            entry = json.loads(path.read_text(encoding="utf-8"))
            text = entry["output"]
            ok = (entry.get("key") == key
                  and entry.get("sha256") == hashlib.sha256(text.encode("utf-8")).hexdigest())
        except FileNotFoundError:
            return None
        except (OSError, ValueError, KeyError, TypeError):
            ok = False
        if ok and validate is not None:
            try:
                ok = bool(validate(text))
            except Exception:  # a damaged entry must never crash the command
                ok = False
        if not ok:
            log.warning("ignoring damaged cache entry %s", path)
            return None
        return text

    def put(self, key, text):
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = {"key": key, "output": text,
                 "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest()}
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(entry, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
