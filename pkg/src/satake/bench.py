"""Benchmark the compiled convolution kernel against the pure Python one.

Run with ``python -m satake.bench``.  The workload is the dominant inner
loop of the Euler-characteristic runs: repeated sparse convolution of
the signed Kunneth factor for g = 3 up to the seventh power.
"""

from __future__ import annotations

import time

from . import _kernels
from .spchar import _signed_factor


def _workload(force: str):
    factor = _signed_factor(3).coeffs
    acc = dict(factor)
    for _ in range(6):
        acc = _kernels.convolve(acc, factor, 4, force=force)
    return acc


def run(repeats: int = 3) -> dict:
    results = {}
    backends = ["python"]
    if _kernels.backend_name() == "cython":
        backends.append("cython")
    reference = None
    for backend in backends:
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            out = _workload(backend)
            best = min(best, time.perf_counter() - t0)
        if reference is None:
            reference = out
        elif out != reference:
            raise AssertionError("backends disagree")
        results[backend] = best
    return results


def main():
    results = run()
    print("workload: signed Kunneth factor (g=3) to the 7th power, %d monomials"
          % len(_workload("python")))
    for backend, secs in results.items():
        print("%-8s %8.3f s" % (backend, secs))
    if "cython" in results:
        print("speedup: %.1fx" % (results["python"] / results["cython"]))
    else:
        print("compiled kernel not available; showing fallback only")


if __name__ == "__main__":
    main()
