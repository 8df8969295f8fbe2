"""OEIS b-file parsing, emission, comparison and (optional) download.

Bundled fixture b-files live in ``hyperbell/data``; the network is only
touched by :func:`fetch`, which caches on disk.
"""

from __future__ import annotations

import os
import re
import tempfile
import urllib.error
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence

__all__ = [
    "BFile",
    "BFileError",
    "FetchError",
    "NetworkError",
    "HTTPStatusError",
    "ComparisonReport",
    "parse_bfile",
    "emit_bfile",
    "compare",
    "validate_seq_id",
    "bfile_url",
    "cache_dir",
    "fetch",
    "load_fixture",
    "FIXTURE_IDS",
]

CACHE_ENV = "HYPERBELL_CACHE_DIR"
FIXTURE_IDS = ("A000110", "A023998", "A001809", "A000296", "A006505", "A057837", "A057814")

_SEQ_ID = re.compile(r"A\d{6}")


class BFileError(ValueError):
    """Malformed b-file content."""


class FetchError(Exception):
    pass


class NetworkError(FetchError):
    pass


class HTTPStatusError(FetchError):
    def __init__(self, seq_id: str, status: int):
        self.status = status
        super().__init__(f"{seq_id}: HTTP status {status}")


@dataclass(frozen=True)
class BFile:
    seq_id: str | None
    entries: tuple[tuple[int, int], ...]

    @property
    def offset(self) -> int | None:
        return self.entries[0][0] if self.entries else None

    @property
    def values(self) -> list[int]:
        return [v for _, v in self.entries]

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)


def parse_bfile(text: str, seq_id: str | None = None) -> BFile:
    """Parse "index value" lines; '#' comments and blank lines are skipped.

    Indices must be strictly increasing and contiguous.
    """
    entries: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileError(f"line {lineno}: expected 'index value', got {raw!r}")
        try:
            idx, val = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileError(f"line {lineno}: non-integer token in {raw!r}") from None
        if entries:
            prev = entries[-1][0]
            if idx <= prev:
                raise BFileError(f"line {lineno}: index {idx} does not increase (previous {prev})")
            if idx != prev + 1:
                raise BFileError(f"line {lineno}: index {idx} skips after {prev}")
        entries.append((idx, val))
    return BFile(seq_id, tuple(entries))


def emit_bfile(seq: Sequence[int], offset: int = 0) -> str:
    return "".join(f"{offset + i} {v}\n" for i, v in enumerate(seq))


@dataclass(frozen=True)
class ComparisonReport:
    matched: int
    overlap: tuple[int, int]
    first_mismatch: tuple[int, int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None


def compare(seq: Sequence[int], offset: int, bfile: BFile) -> ComparisonReport:
    """Compare ``seq`` (whose first element sits at index ``offset``) with a b-file.

    Only the overlapping index range is examined; ``matched`` is the length of
    the common prefix over that range.
    """
    theirs = bfile.as_dict()
    if not seq or not theirs:
        raise ValueError("empty sequence or b-file")
    start = max(offset, min(theirs))
    stop = min(offset + len(seq), max(theirs) + 1)
    if start >= stop:
        raise ValueError(
            f"no overlap: ours covers {offset}..{offset + len(seq) - 1}, "
            f"b-file covers {min(theirs)}..{max(theirs)}"
        )
    matched = 0
    for idx in range(start, stop):
        ours = seq[idx - offset]
        if ours != theirs[idx]:
            return ComparisonReport(matched, (start, stop - 1), (idx, ours, theirs[idx]))
        matched += 1
    return ComparisonReport(matched, (start, stop - 1))


def validate_seq_id(seq_id: str) -> str:
    if not _SEQ_ID.fullmatch(seq_id):
        raise ValueError(f"not an OEIS A-number: {seq_id!r}")
    return seq_id


def bfile_url(seq_id: str) -> str:
    validate_seq_id(seq_id)
    return f"https://oeis.org/{seq_id}/b{seq_id[1:]}.txt"


def cache_dir(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "hyperbell"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def fetch(seq_id: str, cache: str | os.PathLike | None = None, timeout: float = 30.0) -> BFile:
    """Download (or read from cache) the b-file for ``seq_id``.

    The cache is written only after a successful download and parse.
    """
    url = bfile_url(seq_id)
    path = cache_dir(cache) / f"b{seq_id[1:]}.txt"
    if path.exists():
        return parse_bfile(path.read_text(encoding="utf-8"), seq_id)
    try:
        with urllib.request.urlopen(url, timeout=timeout) as resp:
            status = getattr(resp, "status", 200)
            if status != 200:
                raise HTTPStatusError(seq_id, status)
            text = resp.read().decode("utf-8")
    except urllib.error.HTTPError as exc:
        raise HTTPStatusError(seq_id, exc.code) from exc
    except (urllib.error.URLError, OSError) as exc:
        raise NetworkError(f"{seq_id}: {exc}") from exc
    bfile = parse_bfile(text, seq_id)
    _atomic_write(path, text)
    return bfile


def load_fixture(seq_id: str) -> BFile:
    """Bundled b-file for one of ``FIXTURE_IDS``."""
    validate_seq_id(seq_id)
    res = resources.files("hyperbell") / "data" / f"b{seq_id[1:]}.txt"
    if not res.is_file():
        raise FileNotFoundError(f"no bundled fixture for {seq_id}")
    return parse_bfile(res.read_text(encoding="utf-8"), seq_id)
