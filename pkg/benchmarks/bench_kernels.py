"""Benchmark the compiled statevector kernels against the numpy fallback.

Times Pauli-sum expectation and application on molecular Hamiltonians and
random states, then a full pool-gradient scan. Run from the repository
root:

    python benchmarks/bench_kernels.py [--fixture fixtures/lih_3.24.fcidump]
"""

import argparse
import os
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from adaptlab._kernels import _py  # noqa: E402
from adaptlab.chem import assemble_hamiltonian, load_fcidump, sub_hamiltonian  # noqa: E402
from adaptlab.pool import hi_uccsd_filter, uccsd_pool  # noqa: E402


def _compiled():
    try:
        from adaptlab._kernels import _core
        return _core
    except ImportError:
        return None


def timeit(fn, min_time=0.5):
    fn()  # warm up
    n = 0
    t0 = time.perf_counter()
    while True:
        fn()
        n += 1
        dt = time.perf_counter() - t0
        if dt > min_time:
            return dt / n


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--fixture", default=os.path.join(
        os.path.dirname(__file__), "..", "fixtures", "lih_3.24.fcidump"))
    args = parser.parse_args()

    core = _compiled()
    if core is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`")
        return 1

    m = load_fcidump(args.fixture)
    h = assemble_hamiltonian(m)
    n = h.n_qubits
    xm, zm, cs = h.qubit_form.packed()
    rng = np.random.default_rng(0)
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    amps /= np.linalg.norm(amps)
    out = np.empty_like(amps)

    print(f"fixture: {args.fixture}")
    print(f"qubits: {n}, hamiltonian pauli terms: {len(h.qubit_form.terms)}\n")
    print(f"{'kernel':<28}{'numpy':>12}{'cython':>12}{'speedup':>10}")

    t_py = timeit(lambda: _py.expectation_pauli_sum(amps, xm, zm, cs))
    t_cy = timeit(lambda: core.expectation_pauli_sum(amps, xm, zm, cs))
    print(f"{'expectation (full H)':<28}{t_py*1e3:>10.2f}ms{t_cy*1e3:>10.2f}ms{t_py/t_cy:>10.1f}x")

    t_py = timeit(lambda: _py.apply_pauli_sum(amps, xm, zm, cs, out))
    t_cy = timeit(lambda: core.apply_pauli_sum(amps, xm, zm, cs, out))
    print(f"{'apply (full H)':<28}{t_py*1e3:>10.2f}ms{t_cy*1e3:>10.2f}ms{t_py/t_cy:>10.1f}x")

    pool = hi_uccsd_filter(uccsd_pool(m), h)
    subs = [sub_hamiltonian(h, op) for op in pool]
    packed = [s.qubit_form.packed() for s in subs]

    def scan(mod):
        acc = 0.0
        for p in packed:
            acc += mod.expectation_pauli_sum(amps, *p).real
        return acc

    t_py = timeit(lambda: scan(_py))
    t_cy = timeit(lambda: scan(core))
    print(f"{'pool scan ({} sub-H)'.format(len(pool)):<28}"
          f"{t_py*1e3:>10.2f}ms{t_cy*1e3:>10.2f}ms{t_py/t_cy:>10.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
