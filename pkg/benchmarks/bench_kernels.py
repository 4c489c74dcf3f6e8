"""Numba kernels against the pure-numpy fallback.

Both backends live side by side in ``acfgeom.kernels`` (``NUMBA`` and
``NUMPY``), so one process can time them on identical inputs and check that
they agree.  The first numba call of each kernel is a warm-up and is not timed.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""
import argparse
import json
import statistics
import time

import numpy as np

from acfgeom import kernels
from acfgeom.algebra.finite_field import GF
from acfgeom.oracle import field_of_order


def _time(fn, repeat):
    fn()  # warm-up: jit compilation and caches
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs), out


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases():
    rng = np.random.default_rng(7)
    big = GF(3, 12)
    a = rng.integers(0, big.q, 2_000_000)
    b = rng.integers(0, big.q, 2_000_000)
    mid = GF(7, 3)
    members = np.sort(rng.choice(mid.q, 60, replace=False))
    f11 = field_of_order(11)
    f9 = field_of_order(9)
    gen = big.coords(big.generator)
    return [
        ("exp table F_3^12", lambda K: K.exp_table(3, 12, list(big.modulus), gen)),
        ("zech table F_3^12", lambda K: K.zech(big.exp, 3)),
        ("mul 2e6 in F_3^12", lambda K: K.mul(a, b, big.log, big.exp)),
        ("add 2e6 in F_3^12", lambda K: K.add(a, b, big.log, big.exp, big.zech)),
        ("slope set, 60 pts of F_343", lambda K: K.slope_set(members, mid.log, mid.exp,
                                                              mid.zech, mid.neg_table)),
        ("sweep all subsets F_9", lambda K: K.sweep(9, f9.log, f9.exp, f9.zech, f9.neg_table)),
        ("sweep all subsets F_11", lambda K: K.sweep(11, f11.log, f11.exp, f11.zech,
                                                    f11.neg_table)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="also write the table to this file")
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 1
    rows = []
    print(f"{'kernel':30s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}  agree")
    for name, fn in cases():
        t_np, out_np = _time(lambda: fn(kernels.NUMPY), args.repeat)
        t_nb, out_nb = _time(lambda: fn(kernels.NUMBA), args.repeat)
        ok = _same(out_np, out_nb)
        rows.append({"kernel": name, "numpy_s": t_np, "numba_s": t_nb,
                     "speedup": t_np / t_nb if t_nb else float("inf"), "agree": ok})
        print(f"{name:30s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}  {'yes' if ok else 'NO'}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
