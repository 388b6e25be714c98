"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Times row reduction of random matrices, products of random polynomials and
two end-to-end computations (each run in a subprocess per backend so
that the backend switch takes effect at import).
"""

import argparse
import os
import random
import subprocess
import sys
import time
import timeit

from fthreshold import kernels
from fthreshold.gf import make_field

END_TO_END = {
    "fpt of a degree 2486 form over F_125": """
import time
from fthreshold.parse import parse_field, parse_factored
from fthreshold.fpt import fpt_homogeneous
F = parse_field("p=5;deg=3;mod=a^3+a+1")
G = parse_factored("x^420*y^419*(x+y)^417*(x+a*y)^390*(x+a^2*y)^402*(x+a^3*y)^438", F)
t = time.perf_counter()
fpt_homogeneous(G)
print(time.perf_counter() - t)
""",
    "5 syzygy gaps of degree 119 forms over F_25": """
import random, time
from fthreshold.gf import make_field
from fthreshold.poly import BinaryForm
from fthreshold.syzygy import syzygy_gap
F = make_field(5, 2)
rng = random.Random(1)
t = time.perf_counter()
for _ in range(5):
    A, B, C = [BinaryForm(F, [F.random_code(rng) for _ in range(120)]) for _ in range(3)]
    syzygy_gap(A, B, C, verify=False)
print(time.perf_counter() - t)
""",
}


def random_rows(F, nrows, ncols, rng):
    return [[F.random_code(rng) for _ in range(ncols)] for _ in range(nrows)]


def bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print("  %-34s %10.3f ms" % (label, best * 1e3))
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(7)
    backends = kernels.available_backends()
    print("backends:", ", ".join(sorted(backends)))
    for p, k in ((2, 8), (5, 3), (7, 1)):
        F = make_field(p, k)
        for size in (40, 120):
            rows = random_rows(F, size, size + 1, rng)
            f = [F.random_code(rng) for _ in range(4 * size)]
            g = [F.random_code(rng) for _ in range(4 * size)]
            print("F_%d  rref %dx%d, polymul deg %d" % (F.order, size, size + 1, 4 * size - 1))
            times = {}
            for name in sorted(backends):
                t1 = bench("%s rref" % name, lambda: kernels.rref(F, rows, size + 1, backend=name), args.repeat)
                t2 = bench("%s polymul" % name, lambda: kernels.polymul(f, g, F=F, backend=name), args.repeat)
                times[name] = (t1, t2)
            if "cython" in times:
                py, cy = times["python"], times["cython"]
                print("  speedup: rref x%.1f, polymul x%.1f" % (py[0] / cy[0], py[1] / cy[1]))
    for label, script in END_TO_END.items():
        print("end to end, %s:" % label)
        for name in sorted(backends):
            env = dict(os.environ)
            if name == "python":
                env["FTHRESHOLD_PURE_PYTHON"] = "1"
            else:
                env.pop("FTHRESHOLD_PURE_PYTHON", None)
            t = time.perf_counter()
            out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
            print("  %-8s %8.3f s in the solver, %8.3f s with start-up" % (name, float(out.stdout), time.perf_counter() - t))


if __name__ == "__main__":
    main()
