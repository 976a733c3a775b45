"""Pure-Python implementations of the hot kernels.

These are the reference versions; ``_kernels.pyx`` mirrors every function
here with the same signature and is preferred when it has been compiled.
"""

from __future__ import annotations

from typing import Sequence

_SMALL = 12


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of two coefficient lists (ascending powers), untrimmed.

    Short inputs use the schoolbook loop; longer ones pack both operands
    into a single big integer (Kronecker substitution) so the heavy lifting
    happens in CPython's bignum multiply.
    """
    la, lb = len(a), len(b)
    if not la or not lb:
        return []
    if la <= _SMALL or lb <= _SMALL:
        out = [0] * (la + lb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    ma = max(abs(x) for x in a)
    mb = max(abs(y) for y in b)
    if not ma or not mb:
        return [0] * (la + lb - 1)
    # every output coefficient is bounded by this; one extra bit for sign
    bound = ma * mb * min(la, lb)
    shift = bound.bit_length() + 2
    return _unpack(_pack(a, shift) * _pack(b, shift), shift, la + lb - 1)


def _pack(coeffs: Sequence[int], shift: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc << shift) + c
    return acc


def _unpack(value: int, shift: int, length: int) -> list[int]:
    mask = (1 << shift) - 1
    half = 1 << (shift - 1)
    out = []
    for _ in range(length):
        digit = value & mask
        if digit >= half:
            digit -= 1 << shift
        out.append(digit)
        value = (value - digit) >> shift
    return out


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank of an integer matrix reduced mod the prime ``p``."""
    m = [[x % p for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        prow = [(x * inv) % p for x in m[rank]]
        m[rank] = prow
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], prow)]
        rank += 1
        if rank == len(m):
            break
    return rank


def rank_of_difference(g: Sequence[int], h: Sequence[int], n: int, p: int) -> int:
    """Rank mod ``p`` of ``g - h`` for flat row-major n x n matrices."""
    rows = [[(g[i * n + j] - h[i * n + j]) for j in range(n)] for i in range(n)]
    return rank_mod_p(rows, p)


def count_fixed(g: Sequence[int], n: int, k: int, p: int, rank_exact: bool) -> int:
    """Count n x k matrices x over F_p with g x = x (optionally of rank k).

    Brute force over all p**(n*k) matrices.
    """
    total = 0
    nk = n * k
    digits = [0] * nk
    for _ in range(p ** nk):
        # x[i][c] = digits[i*k + c]
        ok = True
        for i in range(n):
            base = i * n
            for c in range(k):
                s = 0
                for t in range(n):
                    s += g[base + t] * digits[t * k + c]
                if (s - digits[i * k + c]) % p:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            if not rank_exact or k == 0:
                total += 1
            else:
                cols = [[digits[i * k + c] for i in range(n)] for c in range(k)]
                if rank_mod_p(cols, p) == k:
                    total += 1
        # odometer increment
        pos = 0
        while pos < nk:
            digits[pos] += 1
            if digits[pos] < p:
                break
            digits[pos] = 0
            pos += 1
    return total
