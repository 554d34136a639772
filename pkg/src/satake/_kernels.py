"""Sparse convolution kernels with a compiled fast path.

Multivariate polynomials over the weight lattice are stored as
``dict[int, int]`` after packing every exponent tuple into a single
integer (16 bits per field, biased so coordinates may be negative).
Addition of packed keys then implements addition of exponent vectors up
to a constant bias, so convolution is a single dict-merge loop.

A Cython extension (:mod:`satake._speedups`) provides the same loop on
``int64`` keys and values.  It is used automatically whenever the packed
keys fit in 63 bits and the coefficients provably fit in 63 bits; the
pure Python loop (arbitrary precision) covers everything else.  Setting
``SATAKE_KERNEL=python`` in the environment disables the extension.
"""

from __future__ import annotations

import os

FIELD_BITS = 16
FIELD_BIAS = 1 << 13

try:  # pragma: no cover - exercised via the cython build
    if os.environ.get("SATAKE_KERNEL") == "python":
        raise ImportError("extension disabled by SATAKE_KERNEL")
    from satake._speedups import convolve_shifted_i64 as _convolve_i64
except ImportError:
    _convolve_i64 = None


def backend_name() -> str:
    return "python" if _convolve_i64 is None else "cython"


def pack(vec, n_fields: int) -> int:
    """Pack an integer vector into one key, low field first."""
    if len(vec) != n_fields:
        raise ValueError("field count mismatch")
    key = 0
    for i, v in enumerate(vec):
        f = v + FIELD_BIAS
        if not 0 <= f < (1 << FIELD_BITS):
            raise OverflowError("coordinate %d out of packing range" % v)
        key |= f << (FIELD_BITS * i)
    return key

def unpack(key: int, n_fields: int) -> tuple:
    mask = (1 << FIELD_BITS) - 1
    return tuple(((key >> (FIELD_BITS * i)) & mask) - FIELD_BIAS for i in range(n_fields))

def bias_key(n_fields: int) -> int:
    """The constant subtracted when adding two packed keys."""
    key = 0
    for i in range(n_fields):
        key |= FIELD_BIAS << (FIELD_BITS * i)
    return key


def _convolve_py(a: dict, b: dict, bias: int) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    items = list(b.items())
    for k1, v1 in a.items():
        base = k1 - bias
        for k2, v2 in items:
            k = base + k2
            c = get(k, 0) + v1 * v2
            if c:
                out[k] = c
            elif k in out:
                del out[k]
    return out


def mass(a: dict) -> int:
    return sum(abs(v) for v in a.values())


def convolve(a: dict, b: dict, n_fields: int, force: str | None = None) -> dict:
    """Convolve two packed polynomials (exponents add, coefficients multiply)."""
    if not a or not b:
        return {}
    bias = bias_key(n_fields)
    if force == "python" or _convolve_i64 is None:
        return _convolve_py(a, b, bias)
    if force not in (None, "cython"):
        raise ValueError("unknown kernel backend %r" % force)
    # int64 feasibility: key sums must stay under 2^63 and every
    # intermediate coefficient is bounded by mass(a)*mass(b).
    if (
        n_fields * FIELD_BITS <= 64
        and max(a) + max(b) < (1 << 63)
        and mass(a) * mass(b) < (1 << 62)
    ):
        return _convolve_i64(a, b, bias, n_fields)
    return _convolve_py(a, b, bias)
