"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

from padichyp import _backend


def partial_sums(backend, p, s):
    # F(1/6, 1/6; 5/6; 1) to degree < p^s modulo p^8, guard 4
    return _backend.hyper_partial_sums(1, 6, 1, 6, 5, 6, 0, 1, p, 8, 4, [p ** s],
                                       backend=backend)


def gamma_direct(backend, p, m):
    return _backend.gamma_p_direct(m, p, 6, backend=backend)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"selected backend: {_backend.BACKEND}")
    if _backend.BACKEND != "compiled":
        print("compiled extension not built; only the Python timings are shown")
    cases = [
        ("partial sums p=7 (2401 terms)", partial_sums, (7, 4)),
        ("partial sums p=13 (28561 terms)", partial_sums, (13, 4)),
        ("Gamma_p direct p=7 m=100000", gamma_direct, (7, 100000)),
    ]
    print(f"{'case':36s} {'python ms':>10s} {'compiled ms':>12s} {'speedup':>8s}")
    for name, fn, extra in cases:
        py = min(timeit.repeat(lambda: fn("python", *extra), number=1, repeat=args.repeat))
        if _backend.BACKEND == "compiled":
            assert fn(None, *extra) == fn("python", *extra)
            cc = min(timeit.repeat(lambda: fn(None, *extra), number=1, repeat=args.repeat))
            print(f"{name:36s} {py * 1e3:10.2f} {cc * 1e3:12.2f} {py / cc:8.1f}x")
        else:
            print(f"{name:36s} {py * 1e3:10.2f} {'-':>12s} {'-':>8s}")


if __name__ == "__main__":
    main()
