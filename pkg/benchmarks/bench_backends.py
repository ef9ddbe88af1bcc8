#!/usr/bin/env python3
"""Time the hot kernels on the compiled and pure-Python backends.

Workloads:
  scan-identity   full assignment scan of the 4-variable level-3 corner
                  identity on the signature quotient of {a,b}* at (2, 2)
                  (a member, so no early exit)
  condensed       ranker signatures of every word up to length 9 over
                  {a,b} against the (2, 3) family
  associativity   full triple scan of the 145-element signature
                  quotient at (2, 3)

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time

from twhier import _kernels_py
from twhier.rankers import _packed, _word_codes, quotient_monoid
from twhier.terms import compile_identity, rm_identity

try:
    from twhier import _kernels
except ImportError:
    _kernels = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_scan_identity(backend):
    monoid, _, _ = quotient_monoid("ab", 2, 2)
    ident = rm_identity(3)  # holds one level above the quotient's own
    prog, n_instr, lhs, rhs = compile_identity(ident)
    nvars = len(ident.variables)
    space = monoid.size ** nvars
    flat, om = monoid.flat_table(), monoid.flat_omega()

    def run():
        hit = backend.scan_identity(flat, om, monoid.size, monoid.identity,
                                    prog, n_instr, lhs, rhs, nvars, 0, space)
        assert hit == -1

    return run, f"{space} assignments on a size-{monoid.size} monoid"


def bench_condensed(backend):
    key = ("a", "b")
    members, dirs, letters, offsets = _packed(key, 2, 3, "full")
    words = [""]
    frontier = [""]
    for _ in range(9):
        frontier = [w + a for w in frontier for a in "ab"]
        words.extend(frontier)
    codes = [_word_codes(w, key) for w in words if w]

    def run():
        for c in codes:
            backend.condensed_flags(c, len(key) + 1, dirs, letters, offsets,
                                    len(members))

    return run, f"{len(codes)} words x {len(members)} rankers"


def bench_associativity(backend):
    big, _, _ = quotient_monoid("ab", 2, 3)
    flat = big.flat_table()

    def run():
        assert backend.first_nonassociative(flat, big.size) == -1

    return run, f"{big.size}^3 triples"


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=1)
    args = parser.parse_args()

    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("cython", _kernels))
    else:
        print("compiled extension not built; timing the fallback only")

    for name, make in [("scan-identity", bench_scan_identity),
                       ("condensed", bench_condensed),
                       ("associativity", bench_associativity)]:
        times = {}
        detail = ""
        for backend_name, backend in backends:
            run, detail = make(backend)
            times[backend_name] = _time(run, args.repeat)
        line = f"{name:14s} {detail:45s}"
        for backend_name in times:
            line += f"  {backend_name}: {times[backend_name] * 1000:9.2f} ms"
        if len(times) == 2:
            line += f"  speedup: {times['python'] / times['cython']:6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
