"""CSV/JSON serialization of profiles, coefficients and reports."""
from __future__ import annotations

import csv
import json
import math
import os
import tempfile
from contextlib import contextmanager

import numpy as np


def fmt(x) -> str:
    return "%.17g" % float(x)


def _rows_to_csv(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(v if isinstance(v, str) else fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def profile_csv(thetas, values) -> str:
    values = np.asarray(values, dtype=complex)
    return _rows_to_csv(("theta", "re", "im"), zip(thetas, values.real, values.imag))


def coeffs_csv(c) -> str:
    c = np.asarray(c, dtype=complex)
    return _rows_to_csv(("n", "re", "im"), ((str(n), v.real, v.imag) for n, v in enumerate(c)))


def counts_csv(epsilons, counts) -> str:
    return _rows_to_csv(("epsilon", "count"), ((e, str(int(c))) for e, c in zip(epsilons, counts)))


def residual_csv(table) -> str:
    return _rows_to_csv(("n", "sup_residual"), ((str(n), r) for n, r in table))


def amplitude_csv(amp) -> str:
    return _rows_to_csv(("theta", "re_plus", "im_plus", "re_minus", "im_minus"),
                        zip(amp.thetas, amp.plus.real, amp.plus.imag, amp.minus.real, amp.minus.imag))


def read_profile_csv(path):
    """(thetas, values) from a `theta,re,im` (or `theta,value`) CSV file."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = [h.strip() for h in next(reader)]
        rows = [r for r in reader if r]
    if not header or header[0] != "theta":
        raise ValueError(f"{path}: expected a header starting with 'theta', got {header}")
    data = np.array(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] < 2:
        raise ValueError(f"{path}: expected at least two columns")
    values = data[:, 1] + (1j * data[:, 2] if data.shape[1] > 2 else 0)
    return data[:, 0], values


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    return obj


def to_json(obj) -> str:
    """Deterministic JSON; floats use the shortest repr that round-trips exactly."""
    return json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n"


@contextmanager
def atomic_output(path):
    """Yield a writable text handle; the file appears only if the block succeeds."""
    if path in (None, "-"):
        import sys
        yield sys.stdout
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".symharm-", suffix=".part")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
