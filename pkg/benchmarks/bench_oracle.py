"""Compare the compiled search kernel with the pure-Python fallback.

    python3 benchmarks/bench_oracle.py [--repeat N]

Both kernels run the same search, so node counts must agree; only the
time differs.
"""

from __future__ import annotations

import argparse
import statistics
import time

from hcp3.gadgets import petersen
from hcp3.generators import complete, paley
from hcp3.graph_core import build_graph
from hcp3.oracle import _pykernel, count_hc, find_hc
from hcp3.reductions import cubify, sgate_pipeline, to_undirected

try:
    from hcp3.oracle import _kernel
except ImportError:  # extension not built
    _kernel = None


def cycle(n):
    return build_graph("undirected", n, [(i, (i + 1) % n) for i in range(n)])


def cases():
    k6 = build_graph("directed", 6, [(u, v) for u in range(6) for v in range(6) if u != v])
    return [
        ("find petersen (none)", find_hc, petersen()),
        ("find sgate(K5)", find_hc, sgate_pipeline(complete(5))[0]),
        ("count K9", count_hc, complete(9)),
        ("count paley(13)", count_hc, paley(13)),
        ("count cubify(C16)", count_hc, cubify(cycle(16))[0]),
        ("count sgate(K5)", count_hc, sgate_pipeline(complete(5))[0]),
        ("count karp(directed K6)", count_hc, to_undirected(k6)[0]),
    ]


def timed(fn, g, kernel, repeat):
    times, nodes = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = fn(g, kernel=kernel)
        times.append(time.perf_counter() - t0)
        nodes = res.nodes
    return statistics.median(times), nodes


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernel is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
        return
    print(f"{'case':24s} {'vertices':>8s} {'nodes':>9s} {'cython':>10s} {'python':>10s} {'speedup':>8s}")
    for name, fn, g in cases():
        tc, nc = timed(fn, g, _kernel, args.repeat)
        tp, np_ = timed(fn, g, _pykernel, args.repeat)
        assert nc == np_, f"{name}: kernels disagree on node count ({nc} vs {np_})"
        print(f"{name:24s} {g.n:8d} {nc:9d} {tc * 1e3:8.2f}ms {tp * 1e3:8.2f}ms {tp / max(tc, 1e-9):7.1f}x")


if __name__ == "__main__":
    main()
