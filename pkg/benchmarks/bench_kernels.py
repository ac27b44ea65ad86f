"""Time the compiled double-double core against the pure-Python fallback.

Each backend runs in its own interpreter (INCGAMMA_PURE=1 selects the
fallback), so the comparison covers exactly what a user gets at import.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

KERNELS = r"""
import json, random, sys, timeit
from incgamma import oracle, xprec

random.seed(1)
pts = [complex(random.uniform(-15, 15), random.uniform(0, 15)) for _ in range(40)]
xs = [xprec.from_double(z) for z in pts]
repeat = int(sys.argv[1])

def arith():
    acc = xs[0]
    for x in xs:
        acc = (acc * x + x) / (x + 1.0)
    return acc

def exps():
    return [xprec.x_exp(x) for x in xs]

def reference():
    return [oracle.oracle_eval(1, z) for z in pts]

out = {"backend": xprec.BACKEND}
for name, fn, number in (("arith", arith, 200), ("exp", exps, 20), ("oracle", reference, 2)):
    best = min(timeit.repeat(fn, number=number, repeat=repeat)) / number
    out[name] = best
print(json.dumps(out))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("INCGAMMA_PURE", None)
    if pure:
        env["INCGAMMA_PURE"] = "1"
    res = subprocess.run([sys.executable, "-c", KERNELS, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if fast["backend"] == slow["backend"]:
        print("compiled core not available; only %s timings" % slow["backend"])
    print("%-8s %14s %14s %8s" % ("kernel", fast["backend"] + " [s]", slow["backend"] + " [s]", "speedup"))
    for k in ("arith", "exp", "oracle"):
        print("%-8s %14.3e %14.3e %8.1f" % (k, fast[k], slow[k], slow[k] / fast[k]))
    return 0


if __name__ == "__main__":
    sys.exit(main())
