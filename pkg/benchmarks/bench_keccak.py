"""Compare the compiled keccak-f[1600] kernel with the pure-Python fallback.

    python3 benchmarks/bench_keccak.py [--repeat N] [--json]
"""

import argparse
import json
import os
import timeit

from daoforge.abi import keccak

SIZES = (0, 32, 136, 1024, 16384)


def bench(backend, size, repeat):
    data = os.urandom(size)
    fn = lambda: keccak.sponge(data, keccak.RATE_256, keccak.KECCAK_PAD, 32, backend=backend)  # noqa: E731
    # calls per run scaled so each backend spends similar wall time
    number = max(1, (2000 if backend == "cython" else 50) // max(1, size // 136 + 1))
    best = min(timeit.repeat(fn, number=number, repeat=repeat)) / number
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    backends = ["python"] + (["cython"] if keccak.BACKEND == "cython" else [])
    rows = []
    for size in SIZES:
        row = {"bytes": size}
        for b in backends:
            row[b] = bench(b, size, args.repeat)
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)

    if args.json:
        print(json.dumps({"active": keccak.BACKEND, "rows": rows}, indent=2))
        return
    print(f"active backend: {keccak.BACKEND}")
    print(f"{'bytes':>7}  {'python us':>11}  {'cython us':>11}  {'speedup':>8}")
    for r in rows:
        cy = f"{1e6 * r['cython']:11.2f}" if "cython" in r else f"{'n/a':>11}"
        sp = f"{r['speedup']:8.1f}" if "speedup" in r else f"{'':>8}"
        print(f"{r['bytes']:>7}  {1e6 * r['python']:11.2f}  {cy}  {sp}")


if __name__ == "__main__":
    main()
