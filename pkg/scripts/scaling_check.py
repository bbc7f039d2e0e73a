#!/usr/bin/env python3
"""Fidelity and wall-time scaling of the sparse backend.

For each requested size: build the network, run it from |VH...H>, and
report gate count, peak-support bound, fidelity error against the W
target, and build/run times.
"""
import argparse
import time

from wstates import basis_state, build_w_circuit, fidelity, run, w_reference


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="10,50,100,500,1000,2000")
    parser.add_argument("--check-norm", action="store_true",
                        help="validate the norm after every gate")
    args = parser.parse_args()

    print(f"{'n':>6} {'gates':>9} {'build_s':>8} {'run_s':>8} {'1-fidelity':>12}")
    for token in args.sizes.split(","):
        n = int(token)
        t0 = time.perf_counter()
        circuit = build_w_circuit(n)
        t1 = time.perf_counter()
        state = basis_state(n, "V" + "H" * (n - 1), backend="sparse")
        out = run(circuit, state, backend="sparse", check_norm=args.check_norm)
        t2 = time.perf_counter()
        err = 1.0 - fidelity(out, w_reference(n))
        print(f"{n:>6} {len(circuit.gates):>9} {t1 - t0:>8.2f} {t2 - t1:>8.2f} {err:>12.2e}")


if __name__ == "__main__":
    main()
