"""On-disk formats: raw sample matrices with JSON sidecars, and gap CSVs.

A sample file holds little-endian float64 angles, one configuration of n
angles per row, no header. Its sidecar has the same stem and a ``.json``
suffix.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

FORMAT_VERSION = 1
SIDECAR_KEYS = (
    "beta", "n", "seed", "chain_index", "sigma_final",
    "burnin_sweeps", "thin_sweeps", "num_samples", "format_version",
)
_DTYPE = np.dtype("<f8")


class FormatError(ValueError):
    """A file does not match the expected layout or metadata."""


def sample_path(out_dir, chain_index: int) -> Path:
    return Path(out_dir) / f"chain_{chain_index:03d}.f64"


def write_samples(path, samples: np.ndarray, meta: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    samples = np.ascontiguousarray(samples, dtype=_DTYPE)
    missing = [k for k in SIDECAR_KEYS if k not in meta and k != "format_version"]
    if missing:
        raise FormatError(f"sidecar is missing {missing}")
    with open(path, "wb") as fh:
        fh.write(samples.tobytes())
    sidecar = {k: meta[k] for k in SIDECAR_KEYS if k != "format_version"}
    sidecar["format_version"] = FORMAT_VERSION
    path.with_suffix(".json").write_text(json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    return path


def read_sidecar(path) -> dict:
    side = Path(path).with_suffix(".json")
    if not side.exists():
        raise FormatError(f"no sidecar next to {path}")
    meta = json.loads(side.read_text())
    missing = [k for k in SIDECAR_KEYS if k not in meta]
    if missing:
        raise FormatError(f"sidecar {side} is missing {missing}")
    return meta


def read_samples(path):
    """Return ``(samples, meta)`` for one sample file."""
    path = Path(path)
    meta = read_sidecar(path)
    raw = np.frombuffer(path.read_bytes(), dtype=_DTYPE)
    n = int(meta["n"])
    if raw.size % n:
        raise FormatError(f"{path}: {raw.size} values is not a multiple of n={n}")
    samples = raw.reshape(-1, n).astype(float)
    if samples.shape[0] != meta["num_samples"]:
        raise FormatError(f"{path}: {samples.shape[0]} rows, sidecar says {meta['num_samples']}")
    return samples, meta


def collect_sample_files(inputs) -> list[Path]:
    """Expand directories into their ``*.f64`` files, ordered by chain index."""
    files = []
    for item in inputs:
        p = Path(item)
        if p.is_dir():
            files.extend(sorted(p.glob("*.f64")))
        else:
            files.append(p)
    if not files:
        raise FormatError("no sample files found")
    return sorted(files, key=lambda f: (read_sidecar(f)["chain_index"], str(f)))


def load_runs(inputs, beta=None, n=None):
    """Load and concatenate sample files, checking sidecars against (beta, n)."""
    blocks = []
    for f in collect_sample_files(inputs):
        samples, meta = read_samples(f)
        if beta is not None and meta["beta"] != beta:
            raise FormatError(f"{f}: sidecar beta={meta['beta']}, expected {beta}")
        if n is not None and meta["n"] != n:
            raise FormatError(f"{f}: sidecar n={meta['n']}, expected {n}")
        blocks.append((samples, meta))
    ns = {m["n"] for _, m in blocks}
    if len(ns) > 1:
        raise FormatError(f"sample files disagree on n: {sorted(ns)}")
    return np.concatenate([s for s, _ in blocks]), [m for _, m in blocks]


def gap_csv_header(k: int) -> list[str]:
    return (
        ["sample_index"]
        + [f"m{j}" for j in range(1, k + 1)]
        + [f"tau{j}" for j in range(1, k + 1)]
        + ["chi", "chi_tilde"]
    )


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_gap_csv(fh, k: int, rows) -> int:
    """Write rows of ``(index, m[k], tau[k], chi, chi_tilde)`` and return the row count."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(gap_csv_header(k))
    count = 0
    for index, m, tau, chi, chi_t in rows:
        writer.writerow([_fmt(index), *map(_fmt, m), *map(_fmt, tau), _fmt(chi), _fmt(chi_t)])
        count += 1
    return count


def read_csv_column(path, column: str) -> np.ndarray:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or column not in reader.fieldnames:
            raise FormatError(f"{path} has no column {column!r}")
        return np.array([float(row[column]) for row in reader])
