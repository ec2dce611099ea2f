"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from qcaudit import _pykernels
from qcaudit.epr import MeasurementSettings

try:
    from qcaudit import _ckernels
except ImportError:
    _ckernels = None


def _hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    mats = [_hermitian(rng, 4) for _ in range(200)]
    params = rng.random((100_000, 8))
    pc = MeasurementSettings().coincidence_stack()

    cases = {
        "jacobi_eigh x200 (4x4)": lambda k: [k.jacobi_eigh(m) for m in mats],
        "family_deltas x1e5": lambda k: k.family_deltas(0, params, pc),
    }
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled extension not built; timing the fallback only")

    print(f"{'kernel':<26}" + "".join(f"{name:>12}" for name, _ in backends) + ("     speedup" if _ckernels else ""))
    for label, fn in cases.items():
        times = [min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) for _, k in backends]
        row = f"{label:<26}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
