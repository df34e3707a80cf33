"""Time the numba and numpy brute-force kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3] [--moduli 4096,59049,1000003]

Both backends are called directly, so the environment flag is not needed;
the first numba call per signature is timed separately as compilation.
"""

from __future__ import annotations

import argparse
import random
import time

from qdef import _kernels as K


def _time(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _cases(N: int, rng: random.Random, k: int = 4):
    return [(rng.randrange(1, N), rng.randrange(1, N)) for _ in range(k)]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--moduli", default="4096,59049,1000003,16777216")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    moduli = [int(m) for m in args.moduli.split(",")]
    rng = random.Random(args.seed)

    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    t0 = time.perf_counter()
    K.conic_solvable_numba(3, 5, 49)
    K.count_quadratic_roots_numba(1, 1, 49)
    print(f"numba compile: {time.perf_counter() - t0:.2f}s")

    print(f"{'kernel':<24}{'N':>10}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for N in moduli:
        cases = _cases(N, rng)
        for name, np_fn, nb_fn in (
            ("conic_solvable", K.conic_solvable_numpy, K.conic_solvable_numba),
            ("count_quadratic_roots", K.count_quadratic_roots_numpy, K.count_quadratic_roots_numba),
        ):
            t_np = t_nb = 0.0
            for a, b in cases:
                r_np, r_nb = np_fn(a, b, N), nb_fn(a, b, N)
                if r_np != r_nb:
                    raise SystemExit(f"backends disagree on {name}({a}, {b}, {N}): {r_np} vs {r_nb}")
                t_np += _time(np_fn, a, b, N, repeat=args.repeat)
                t_nb += _time(nb_fn, a, b, N, repeat=args.repeat)
            print(f"{name:<24}{N:>10}{t_np:>12.4f}{t_nb:>12.4f}{t_np / max(t_nb, 1e-9):>9.1f}x")


if __name__ == "__main__":
    main()
