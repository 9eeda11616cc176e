"""Compare the compiled and pure-Python Kraus kernels.

Usage: ``python benchmarks/bench_kernels.py [--number N] [--repeat R]``

Times three workloads on an eight-qubit register: one single-qubit damping
step, one block recovery, and a full coded run (encode, damp, recover,
decode, metrics). Reports the best per-call time in milliseconds.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from esdlab.channels import kraus_pair
from esdlab.code41 import CODE
from esdlab.pipeline import run_coded
from esdlab.qlinalg import apply_kraus, available_backends
from esdlab.states import StateFamily


def workloads(backend: str, seed: int = 0):
    rng = np.random.default_rng(seed)
    w = rng.normal(size=(256, 4)) + 1j * rng.normal(size=(256, 4))
    rho = w @ w.conj().T
    rho /= np.trace(rho)
    damp = list(kraus_pair(0.3).operators)
    spec = StateFamily("phi", np.pi / 12)
    return {
        "damp_one_qubit": lambda: apply_kraus(rho, damp, 3, backend=backend),
        "recover_block": lambda: CODE.recover_block(rho, 2, backend=backend),
        "run_coded": lambda: run_coded(spec, 0.3, backend=backend),
    }


def bench(number: int = 20, repeat: int = 5) -> dict[str, dict[str, float]]:
    """Best per-call time in ms, keyed by backend then workload."""
    out = {}
    for backend in available_backends():
        out[backend] = {
            name: 1e3 * min(timeit.repeat(fn, number=number, repeat=repeat)) / number
            for name, fn in workloads(backend).items()
        }
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--number", type=int, default=20)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    times = bench(args.number, args.repeat)
    backends = sorted(times)
    names = list(times[backends[0]])
    print(f"{'workload':<16}" + "".join(f"{b + ' ms':>14}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
    for name in names:
        row = f"{name:<16}" + "".join(f"{times[b][name]:>14.3f}" for b in backends)
        if "cython" in times and "python" in times:
            row += f"{times['python'][name] / times['cython'][name]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
