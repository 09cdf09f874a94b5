"""Flat-file formats: coefficient files and key = value configs.

Coefficient files: a header line ``d N_1 ... N_d`` followed by one line per
stored frequency, ``k_1 ... k_d re im``.  Unlisted in-box frequencies are
zero.  Config files: UTF-8 text, one ``key = value`` per line, ``#`` starts
a comment.
"""

from __future__ import annotations

import numpy as np

from .trig import TrigPoly


def write_coeffs(f, fh, drop_zero=True):
    """Write a TrigPoly in the coefficient-file format."""
    fh.write(f"{f.dim} " + " ".join(str(n) for n in f.box) + "\n")
    it = np.nditer(f.coeffs, flags=["multi_index"])
    for c in it:
        c = complex(c)
        if drop_zero and c == 0:
            continue
        k = [i - n for i, n in zip(it.multi_index, f.box)]
        fh.write(" ".join(str(x) for x in k) + f" {c.real!r} {c.imag!r}\n")


def read_coeffs(fh):
    """Read a TrigPoly from the coefficient-file format."""
    header = fh.readline().split()
    if not header:
        raise ValueError("empty coefficient file")
    d = int(header[0])
    if len(header) != d + 1:
        raise ValueError(f"header must be 'd N_1 ... N_d', got {header}")
    box = tuple(int(x) for x in header[1:])
    c = np.zeros(tuple(2 * n + 1 for n in box), dtype=complex)
    for lineno, line in enumerate(fh, start=2):
        parts = line.split()
        if not parts:
            continue
        if len(parts) != d + 2:
            raise ValueError(f"line {lineno}: expected 'k_1 ... k_d re im'")
        k = [int(x) for x in parts[:d]]
        if any(abs(kj) > n for kj, n in zip(k, box)):
            raise ValueError(f"line {lineno}: frequency {k} outside box {box}")
        c[tuple(kj + n for kj, n in zip(k, box))] = complex(float(parts[d]), float(parts[d + 1]))
    return TrigPoly(box, c)


def read_config(fh):
    """Parse a flat key = value config into an ordered dict of strings."""
    out = {}
    for lineno, line in enumerate(fh, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out
