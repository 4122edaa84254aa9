"""Compare the compiled kernels against the pure-Python fallback.

Times the two hot paths (evaluation encoding and exhaustive minimum-weight
enumeration) on mid-size instances and prints a table.

    python benchmarks/bench_backends.py [--full]

--full adds the 19683-position three-cover encode.
"""

import argparse
import statistics
import time

import numpy as np

from fiberlrc._backend import available_backends
from fiberlrc.families import build_artin_schreier, build_gk


def _time(fn, reps):
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return min(samples), statistics.mean(samples)


def bench_encode(bundle, kern, reps):
    field = bundle.field
    enc = bundle.encoder()
    rng = np.random.default_rng(0)
    msg = rng.integers(0, field.q, size=bundle.descriptor.k).astype(np.int64)
    coeffs = np.ascontiguousarray(
        msg.reshape(bundle.descriptor.l + 1, enc._T).T.astype(np.uint16))
    mono = np.ascontiguousarray(enc._mono)
    xs = bundle.eval_set.base_values
    bidx = bundle.eval_set.base_index

    def run():
        pvals = kern.horner_eval(coeffs, xs, field.mul_flat, field.add_flat,
                                 field.q)
        kern.combine_monomials(mono, np.ascontiguousarray(pvals), bidx,
                               field.mul_flat, field.add_flat, field.q)

    return _time(run, reps)


def bench_matvec(bundle, kern, reps):
    field = bundle.field
    G = bundle.generator_matrix()
    rng = np.random.default_rng(1)
    msg = rng.integers(0, field.q, size=bundle.descriptor.k).astype(np.uint16)

    def run():
        kern.matvec(G, msg, field.mul_flat, field.add_flat, field.q)

    return _time(run, reps)


def bench_min_weight(bundle, kern, reps):
    field = bundle.field
    q = field.q
    G = bundle.generator_matrix()
    inc_delta = np.array([field.sub((v + 1) % q, v) for v in range(q)],
                         dtype=np.uint16)

    def run():
        kern.min_weight(G, inc_delta, field.mul_flat, field.add_flat, q)

    return _time(run, reps)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true",
                        help="include the n=19683 three-cover encode")
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(sorted(backends))}")

    cases = [
        ("encode n=729 k=296", build_artin_schreier(3, 2, 2, l=73),
         bench_encode, args.reps),
        ("matvec n=729 k=296", build_artin_schreier(3, 2, 2, l=73),
         bench_matvec, args.reps),
        ("min_weight 4095 words n=216", build_gk(2, 3, l=0),
         bench_min_weight, max(1, args.reps // 2)),
        ("min_weight 65535 words n=64", build_artin_schreier(2, 2, 2, l=3),
         bench_min_weight, 1),
    ]
    if args.full:
        from fiberlrc.families import build_preset

        cases.append(("encode n=19683 k=5600", build_preset("example-7.1"),
                      bench_encode, 3))

    width = max(len(name) for name, *_ in cases)
    rows = []
    for name, bundle, bench, reps in cases:
        row = {"case": name}
        for bname, kern in backends.items():
            best, _mean = bench(bundle, kern, reps)
            row[bname] = best
        rows.append(row)

    header = f"{'case':<{width}}  " + "  ".join(f"{b:>12}" for b in sorted(backends))
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    for row in rows:
        line = f"{row['case']:<{width}}  "
        line += "  ".join(f"{row[b] * 1e3:>10.2f}ms" for b in sorted(backends))
        if len(backends) == 2:
            line += f"  {row['python'] / row['compiled']:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
