"""Benchmark the numba kernels against the pure-numpy fallback.

Each backend runs in its own subprocess (the backend is chosen at import
time from JCQSIM_DISABLE_NUMBA), timing the two hot loops at the paper's
working point:

  * windowed tensor propagation, 100k steps at dk_max = 1 and 20k at dk_max = 4
  * exact path sum at N = 8

Usage: python benchmarks/bench_backends.py
"""

import json
import os
import subprocess
import sys

WORKLOADS = [
    ("propagate dk_max=1 x 100000 steps", "evolve", dict(dk_max=1, n_steps=100_000)),
    ("propagate dk_max=4 x 20000 steps", "evolve", dict(dk_max=4, n_steps=20_000)),
    ("path sum N=8", "brute", dict(n_steps=8)),
]

_WORKER = r"""
import json, sys, time
import numpy as np
from jcqsim import (OhmicBath, QubitParameters, brute_force_path_sum,
                    build_transfer_tensor, eta_coefficients, initial_state,
                    propagate, short_time_propagator)
from jcqsim import backend_name

bath = OhmicBath(alpha=5e-6, omega_c=5.0, temperature=30.0)
qubit = QubitParameters(e_j=51.8, e_c=122.0, n_g=0.5)
spec = json.loads(sys.argv[1])

def run_once(task):
    if task["kind"] == "evolve":
        table = eta_coefficients(bath, 12.707, task["n_steps"], task["dk_max"])
        transfer = build_transfer_tensor(short_time_propagator(qubit, 12.707), table)
        start = time.perf_counter()
        propagate(initial_state("zero"), transfer, table, task["n_steps"], sample_every=64)
        return time.perf_counter() - start
    table = eta_coefficients(bath, 12.707, task["n_steps"], task["n_steps"])
    start = time.perf_counter()
    brute_force_path_sum(initial_state("zero"), qubit, table, task["n_steps"])
    return time.perf_counter() - start

results = []
for task in spec:
    run_once(task)              # warm-up: jit compile / cache load
    results.append(min(run_once(task) for _ in range(3)))
print(json.dumps({"backend": backend_name(), "times": results}))
"""


def run_backend(disable_numba: bool):
    env = dict(os.environ)
    env["JCQSIM_DISABLE_NUMBA"] = "1" if disable_numba else "0"
    spec = json.dumps([dict(kind=kind, **params) for _, kind, params in WORKLOADS])
    out = subprocess.run([sys.executable, "-c", _WORKER, spec], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    numba_res = run_backend(disable_numba=False)
    numpy_res = run_backend(disable_numba=True)
    print(f"{'workload':<38} {'numba [s]':>10} {'numpy [s]':>10} {'speedup':>8}")
    for (name, _, _), t_nb, t_np in zip(WORKLOADS, numba_res["times"], numpy_res["times"]):
        print(f"{name:<38} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>7.1f}x")
    if numba_res["backend"] != "numba":
        print("note: numba was not available; both columns ran the numpy path")


if __name__ == "__main__":
    main()
