"""Content-addressed on-disk store for evaluator results.

Records live in ``$MZVTOOLS_CACHE_DIR`` (default ``$XDG_CACHE_HOME/mzvtools``)
as small JSON files named by the SHA-256 of the evaluation target.  A record
is only returned when its stored error estimate is within the requested
tolerance, and a write never replaces a more accurate record.  Writes go
through a temporary file and ``os.replace`` so concurrent workers never see
partial records.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile
from pathlib import Path
from typing import Sequence

from .series import EvalResult

ENV_VAR = "MZVTOOLS_CACHE_DIR"


def default_directory() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "mzvtools"


def tol_bucket(tol: float) -> int:
    """Decade of ``tol``; stored for inspection, not part of the key."""
    return math.floor(math.log10(tol))


class DiskCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_directory()

    @staticmethod
    def key(kind: str, k: Sequence[int], alpha: float = 0.0, x: float | None = None) -> str:
        payload = json.dumps([kind, list(k), float(alpha).hex(), None if x is None else float(x).hex()])
        return hashlib.sha256(payload.encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.directory / key[:2] / f"{key}.json"

    def _read(self, key: str) -> dict | None:
        try:
            with open(self._path(key), encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, ValueError):
            return None

    def get(self, kind: str, k: Sequence[int], tol: float, alpha: float = 0.0, x: float | None = None) -> EvalResult | None:
        rec = self._read(self.key(kind, k, alpha, x))
        if rec is None or rec["err_estimate"] > tol:
            return None
        return EvalResult(rec["value"], rec["err_estimate"], rec["terms_used"], rec["method"])

    def put(self, kind: str, k: Sequence[int], result: EvalResult, alpha: float = 0.0, x: float | None = None) -> None:
        key = self.key(kind, k, alpha, x)
        old = self._read(key)
        if old is not None and old["err_estimate"] <= result.err_estimate:
            return
        rec = {
            "kind": kind,
            "k": list(k),
            "alpha": alpha,
            "x": x,
            "tol_bucket": tol_bucket(max(result.err_estimate, 1e-300)),
            "value": result.value,
            "err_estimate": result.err_estimate,
            "terms_used": result.terms_used,
            "method": result.method,
        }
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(rec, fh)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def records(self) -> list[Path]:
        if not self.directory.is_dir():
            return []
        return sorted(self.directory.glob("*/*.json"))

    def info(self) -> dict:
        files = self.records()
        return {
            "directory": str(self.directory),
            "records": len(files),
            "bytes": sum(f.stat().st_size for f in files),
        }

    def clear(self) -> int:
        files = self.records()
        for f in files:
            f.unlink(missing_ok=True)
        for sub in self.directory.glob("*"):
            if sub.is_dir():
                try:
                    sub.rmdir()
                except OSError:
                    pass
        return len(files)
