"""Persistent KL-polynomial cache: JSON file with a format/spec header, written atomically."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .coxeter import CoxeterSpec, CoxeterSystem
from .hecke import kl_table
from .laurent import LaurentPoly

FORMAT_VERSION = 1


class CacheMismatch(RuntimeError):
    """The cache file belongs to another format version or another group."""


def spec_hash(spec: CoxeterSpec) -> str:
    canon = json.dumps(spec.to_json(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def _key(W: CoxeterSystem, x, w) -> str:
    return f"({W.format(x)}, {W.format(w)})"


def _unkey(W: CoxeterSystem, key: str):
    inner = key.strip()
    if not (inner.startswith("(") and inner.endswith(")")):
        raise ValueError(f"bad cache key {key!r}")
    a, b = inner[1:-1].split(",")
    return W.parse(a.strip()), W.parse(b.strip())


@dataclass
class KLCache:
    path: Path
    spec: CoxeterSpec
    entries: dict[str, str] = field(default_factory=dict)

    @classmethod
    def open(cls, path: str | os.PathLike, spec: CoxeterSpec) -> "KLCache":
        path = Path(path)
        cache = cls(path, spec)
        if not path.exists():
            return cache
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            header = data["header"]
            entries = data["entries"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CacheMismatch(f"{path}: unreadable cache file ({exc})") from exc
        if header.get("format_version") != FORMAT_VERSION:
            raise CacheMismatch(f"{path}: format version {header.get('format_version')!r}, "
                                f"expected {FORMAT_VERSION}")
        if header.get("spec_hash") != spec_hash(spec):
            raise CacheMismatch(f"{path}: cache was written for a different Coxeter system")
        cache.entries = dict(entries)
        return cache

    def load_into(self, W: CoxeterSystem) -> int:
        """Seed the system's KL table; returns the number of entries loaded."""
        parsed = {}
        for key, text in self.entries.items():
            parsed[_unkey(W, key)] = LaurentPoly.parse(text)
        kl_table(W).load(parsed)
        return len(parsed)

    def absorb(self, W: CoxeterSystem) -> bool:
        """Merge the system's KL table; True if anything new was added."""
        before = len(self.entries)
        for (x, w), c in kl_table(W).entries().items():
            self.entries.setdefault(_key(W, x, w), str(c))
        return len(self.entries) != before

    def save(self) -> None:
        data = {"header": {"format_version": FORMAT_VERSION, "spec_hash": spec_hash(self.spec),
                           "spec": self.spec.to_json()},
                "entries": dict(sorted(self.entries.items()))}
        text = json.dumps(data, indent=1, ensure_ascii=False, sort_keys=False) + "\n"
        directory = self.path.parent if str(self.path.parent) else Path(".")
        fd, tmp = tempfile.mkstemp(prefix=".klcache-", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
