"""Compare the compiled kernels against the pure-Python fallback.

Both backends compute identical results (tests/test_kernels.py asserts
bit-for-bit parity); this script measures the speed gap on the two
workloads the extension exists for: BFS-based girth scans and the
exact-rational simplex row operations.

Run:  python benchmarks/bench_kernels.py [--quick]
      python benchmarks/bench_kernels.py --end-to-end   (adds a full
      entropy LP solve per backend via subprocess, slower)
"""

import argparse
import copy
import random
import subprocess
import sys
import time

from girthforge import _fallback
from girthforge.family import build_pi_graph
from girthforge.rational import R

try:
    from girthforge import _core
except ImportError:
    _core = None


def timed(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def row(name, compiled_s, python_s):
    speedup = python_s / compiled_s if compiled_s else float("inf")
    print(f"{name:<34} {compiled_s * 1e3:>10.2f} ms {python_s * 1e3:>10.2f}"
          f" ms {speedup:>8.2f}x")


def bench_girth(sizes, repeat):
    for n in sizes:
        pg = build_pi_graph(6, n, seed=7)
        indptr, nbrs = pg.graph.csr()
        c, got_c = timed(_core.girth_csr, indptr, nbrs, repeat=repeat)
        p, got_p = timed(_fallback.girth_csr, indptr, nbrs, repeat=repeat)
        assert got_c == got_p
        row(f"girth scan, {2 * n} vertices", c, p)


def bench_balls(repeat):
    # Small balls favor the fallback (dict BFS touches only the ball;
    # the extension converts the whole CSR per call), large balls the
    # extension.  Report both regimes.
    pg = build_pi_graph(6, 4096, seed=7)
    indptr, nbrs = pg.graph.csr()
    rng = random.Random(0)
    srcs = [rng.randrange(pg.graph.n) for _ in range(50)]

    for radius in (5, 12):
        def sweep(mod):
            return [len(mod.bfs_ball(indptr, nbrs, s, radius))
                    for s in srcs]

        c, got_c = timed(sweep, _core, repeat=repeat)
        p, got_p = timed(sweep, _fallback, repeat=repeat)
        assert got_c == got_p
        row(f"50 radius-{radius} balls, 8192 vertices", c, p)


def rational_matrix(rng, m):
    return [[R(rng.randrange(-50, 51), rng.randrange(1, 9))
             for _ in range(m)] for _ in range(m)]


def bench_simplex_rows(repeat):
    rng = random.Random(1)
    m = 120
    binv = rational_matrix(rng, m)
    xb0 = [abs(R(rng.randrange(1, 60), rng.randrange(1, 9)))
           for _ in range(m)]
    xb1 = [R(rng.randrange(-9, 10), 1) for _ in range(m)]
    d = [R(rng.randrange(-4, 5), rng.randrange(1, 4)) for _ in range(m)]
    d[m // 2] = R(3, 2)
    idxs = sorted(rng.sample(range(m), m // 4))
    vals = [R(rng.randrange(1, 9)) for _ in idxs]

    c, got_c = timed(_core.ftran, binv, idxs, vals, m, repeat=repeat)
    p, got_p = timed(_fallback.ftran, binv, idxs, vals, m, repeat=repeat)
    assert got_c == got_p
    row(f"ftran, {m}x{m} rational basis", c, p)

    c, got_c = timed(_core.ratio_lex, binv, xb0, xb1, d, m, repeat=repeat)
    p, got_p = timed(_fallback.ratio_lex, binv, xb0, xb1, d, m,
                     repeat=repeat)
    assert got_c == got_p
    row("lexicographic ratio test", c, p)

    r = got_c if got_c >= 0 else m // 2

    def run_pivot(mod):
        b = copy.deepcopy(binv)
        mod.pivot(b, list(xb0), list(xb1), list(d), r, m)
        return b

    c, got_c = timed(run_pivot, _core, repeat=repeat)
    p, got_p = timed(run_pivot, _fallback, repeat=repeat)
    assert got_c == got_p
    row("pivot (full basis update)", c, p)


def bench_end_to_end():
    code = ("import time; t0=time.perf_counter(); "
            "from girthforge import KERNEL_BACKEND; "
            "from girthforge.bounds import entropy_bound; "
            "from girthforge.graphs import Graph; "
            "g=Graph(8,[(i,(i+1)%8) for i in range(8)]); "
            "v=entropy_bound(g); "
            "print(KERNEL_BACKEND, time.perf_counter()-t0, v)")
    results = {}
    for label, env_val in [("compiled", "0"), ("python", "1")]:
        out = subprocess.run(
            [sys.executable, "-c", code],
            env={"GIRTHFORGE_PURE": env_val, "PATH": "/usr/bin:/bin"},
            capture_output=True, text=True, check=True).stdout.split()
        assert out[0] == label, f"subprocess ran on backend {out[0]}"
        results[label] = (float(out[1]), out[2])
    assert results["compiled"][1] == results["python"][1]
    row("entropy LP, 8-cycle (full solve)",
        results["compiled"][0], results["python"][0])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true",
                    help="smaller graph sizes, single repetition")
    ap.add_argument("--end-to-end", action="store_true",
                    help="also time a complete entropy LP per backend")
    args = ap.parse_args()

    if _core is None:
        print("compiled extension not available; nothing to compare")
        return 1

    repeat = 1 if args.quick else 3
    sizes = (512,) if args.quick else (1024, 4096)
    print(f"{'workload':<34} {'compiled':>13} {'python':>13} "
          f"{'speedup':>8}")
    bench_girth(sizes, repeat)
    bench_balls(repeat)
    bench_simplex_rows(repeat)
    if args.end_to_end:
        bench_end_to_end()
    return 0


if __name__ == "__main__":
    sys.exit(main())
