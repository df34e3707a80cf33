"""Machine-integer brute-force kernels behind the local oracles.

Each kernel exists twice: a numba ``@njit`` loop and a chunked pure-numpy
version. ``QDEF_DISABLE_NUMBA=1`` (or numba being unimportable) selects the
numpy path. Both work modulo ``N < 3.0e9`` so that ``N**2`` fits in int64.
"""

from __future__ import annotations

import os

import numpy as np

MAX_MODULUS = 3_000_000_000
_CHUNK = 1 << 21

try:  # pragma: no cover - import guard
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    return HAVE_NUMBA and os.environ.get("QDEF_DISABLE_NUMBA", "0") not in ("1", "true", "yes")


def _check_modulus(N: int) -> None:
    if not 1 <= N < MAX_MODULUS:
        raise ValueError(f"modulus {N} outside the int64-safe range")


# -- numpy ------------------------------------------------------------------------


def square_table_numpy(N: int) -> np.ndarray:
    table = np.zeros(N, dtype=np.bool_)
    for start in range(0, N // 2 + 1, _CHUNK):
        x = np.arange(start, min(N // 2 + 1, start + _CHUNK), dtype=np.int64)
        table[(x * x) % N] = True
    return table


def conic_solvable_numpy(s: int, t: int, N: int) -> bool:
    """Primitive solution of z^2 = s x^2 + t y^2 mod N (N a prime power).

    A primitive solution has some coordinate a unit; scaling makes that
    coordinate 1, leaving three one-parameter searches.
    """
    _check_modulus(N)
    s %= N
    t %= N
    sq = square_table_numpy(N)
    p = _smallest_prime_factor(N)
    half = N // 2 + 1  # w and -w have the same square
    for start in range(0, half, _CHUNK):
        w = np.arange(start, min(half, start + _CHUNK), dtype=np.int64)
        w2 = (w * w) % N
        # z = 1: s x^2 + t y^2 = 1 ; enumerate x, need y^2 = (1 - s x^2)/t
        if t % p:
            tinv = pow(int(t), -1, N)
            if sq[(((1 - s * w2) % N) * tinv) % N].any():
                return True
        elif s % p:
            sinv = pow(int(s), -1, N)
            if sq[(((1 - t * w2) % N) * sinv) % N].any():
                return True
        # x = 1: z^2 = s + t y^2
        if sq[(s + t * w2) % N].any():
            return True
        # y = 1: z^2 = s x^2 + t
        if sq[(s * w2 + t) % N].any():
            return True
    return False


def count_quadratic_roots_numpy(b: int, c: int, N: int) -> int:
    """Number of y in Z/N with y^2 + b y + c = 0."""
    _check_modulus(N)
    b %= N
    c %= N
    total = 0
    for start in range(0, N, _CHUNK):
        y = np.arange(start, min(N, start + _CHUNK), dtype=np.int64)
        total += int(np.count_nonzero(((y * y) % N + (b * y) % N + c) % N == 0))
    return total


def _smallest_prime_factor(N: int) -> int:
    d = 2
    while d * d <= N:
        if N % d == 0:
            return d
        d += 1
    return N


# -- numba ----------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _square_table_nb(N):
        table = np.zeros(N, dtype=np.bool_)
        for x in range(N // 2 + 1):
            table[(x * x) % N] = True
        return table

    @njit(cache=True)
    def _conic_solvable_nb(s, t, tinv, sinv, N):
        sq = _square_table_nb(N)
        for w in range(N // 2 + 1):
            w2 = (w * w) % N
            if tinv >= 0:
                if sq[(((1 - s * w2) % N) * tinv) % N]:
                    return True
            elif sinv >= 0:
                if sq[(((1 - t * w2) % N) * sinv) % N]:
                    return True
            if sq[(s + t * w2) % N]:
                return True
            if sq[(s * w2 + t) % N]:
                return True
        return False

    @njit(cache=True)
    def _count_quadratic_roots_nb(b, c, N):
        total = 0
        for y in range(N):
            if ((y * y) % N + (b * y) % N + c) % N == 0:
                total += 1
        return total


def square_table_numba(N: int) -> np.ndarray:
    _check_modulus(N)
    return _square_table_nb(np.int64(N))


def conic_solvable_numba(s: int, t: int, N: int) -> bool:
    _check_modulus(N)
    s %= N
    t %= N
    p = _smallest_prime_factor(N)
    tinv = pow(t, -1, N) if t % p else -1
    sinv = pow(s, -1, N) if (tinv < 0 and s % p) else -1
    # Python's % is already nonnegative; numba's int64 % follows Python semantics too.
    return bool(_conic_solvable_nb(np.int64(s), np.int64(t), np.int64(tinv), np.int64(sinv), np.int64(N)))


def count_quadratic_roots_numba(b: int, c: int, N: int) -> int:
    _check_modulus(N)
    return int(_count_quadratic_roots_nb(np.int64(b % N), np.int64(c % N), np.int64(N)))


# -- dispatch -------------------------------------------------------------------


def conic_solvable(s: int, t: int, N: int) -> bool:
    if numba_enabled():
        return conic_solvable_numba(s, t, N)
    return conic_solvable_numpy(s, t, N)


def count_quadratic_roots(b: int, c: int, N: int) -> int:
    if numba_enabled():
        return count_quadratic_roots_numba(b, c, N)
    return count_quadratic_roots_numpy(b, c, N)
