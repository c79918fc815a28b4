"""Compare the compiled and pure-Python polynomial kernels.

Run: python3 benchmarks/bench_kernels.py [--repeat N]
Times the raw kernels on random integer polynomials and one end-to-end
workload (the local-model pipeline at order 6) under each backend.
"""
import argparse
import importlib
import os
import random
import subprocess
import sys
import timeit


def kernel_times(mod, repeat):
    rng = random.Random(7)
    polys = [tuple(rng.randint(-10 ** 6, 10 ** 6) for _ in range(rng.randint(4, 12)))
             for _ in range(40)]
    pairs = list(zip(polys, polys[1:]))
    prods = [mod.pmul(a, b) for a, b in pairs]
    out = {}
    out["pmul"] = min(timeit.repeat(lambda: [mod.pmul(a, b) for a, b in pairs], number=20, repeat=repeat))
    out["pgcd"] = min(timeit.repeat(lambda: [mod.pgcd(p, a) for p, (a, _) in zip(prods, pairs)],
                                    number=5, repeat=repeat))
    out["pdivexact"] = min(timeit.repeat(lambda: [mod.pdivexact(p, b) for p, (_, b) in zip(prods, pairs)],
                                         number=20, repeat=repeat))
    return out


def pipeline_time(pure):
    env = dict(os.environ)
    if pure:
        env["EXTRANSIT_PURE_PYTHON"] = "1"
    code = ("import time, extransit; from extransit.analysis import run_conjecture_pipeline;"
            "t=time.perf_counter(); r=run_conjecture_pipeline('local', 6, with_ledger=False);"
            "assert r.passed; print(extransit.BACKEND, time.perf_counter()-t)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, secs = out.stdout.split()
    return backend, float(secs)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    py = importlib.import_module("extransit._kernels_py")
    try:
        cy = importlib.import_module("extransit._kernels")
    except ImportError:
        cy = None
        print("compiled extension not built; only the pure backend is timed")
    print("%-10s %12s %12s %8s" % ("kernel", "pure [s]", "compiled [s]", "speedup"))
    tp = kernel_times(py, args.repeat)
    tc = kernel_times(cy, args.repeat) if cy else {}
    for k, v in tp.items():
        c = tc.get(k)
        print("%-10s %12.5f %12s %8s" % (k, v, "%.5f" % c if c else "-", "%.2fx" % (v / c) if c else "-"))
    for pure in (True, False):
        backend, secs = pipeline_time(pure)
        print("pipeline(local, N=6) backend=%s: %.3f s" % (backend, secs))


if __name__ == "__main__":
    main()
