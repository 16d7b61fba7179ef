"""Content-addressed on-disk cache of L-polynomials, one JSON file per job."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from ._util import format_rational
from .expsums import LPolynomial, PolyInput, l_polynomial_from_json, l_polynomial_to_json

CACHE_VERSION = 1
ENV_CACHE_DIR = "EXPSUM_NEWTON_CACHE_DIR"


def default_cache_dir() -> Path | None:
    value = os.environ.get(ENV_CACHE_DIR)
    return Path(value) if value else None


def coeffs_hash(f: PolyInput) -> str:
    canon = json.dumps(
        {"d": f.d, "coeffs": [format_rational(c) for c in f.coeffs], "a0": format_rational(f.a0)},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(canon.encode()).hexdigest()[:20]


def cache_path(cache_dir: Path, f: PolyInput, p: int) -> Path:
    return Path(cache_dir) / f"L_d{f.d}_p{p}_{coeffs_hash(f)}.json"


def load(cache_dir: Path | None, f: PolyInput, p: int) -> LPolynomial | None:
    if cache_dir is None:
        return None
    path = cache_path(cache_dir, f, p)
    try:
        obj = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if obj.get("version") != CACHE_VERSION:
        return None
    rec = obj["record"]
    if rec["d"] != f.d or rec["p"] != p or rec["coeffs"] != [format_rational(c) for c in f.coeffs]:
        return None
    if rec.get("a0", "0") != format_rational(f.a0):
        return None
    return l_polynomial_from_json(rec)


def store(cache_dir: Path | None, f: PolyInput, L: LPolynomial) -> Path | None:
    if cache_dir is None:
        return None
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_path(cache_dir, f, L.p)
    payload = json.dumps({"version": CACHE_VERSION, "record": l_polynomial_to_json(f, L)}, indent=1)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path
