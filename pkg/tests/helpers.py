"""Independent oracles used by the tests.

Everything here deliberately avoids the library's own algorithms: vector
counts come from a flat coordinate-box sweep in numpy integer arithmetic,
power series come from naive polynomial products, and Bernoulli numbers
come from the Akiyama-Tanigawa scheme.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

import numpy as np


def box_count_norm(gram: list[list[int]], target: int) -> int:
    """Count integer vectors of squared norm ``target`` by brute box sweep.

    The coordinate box comes from the dual-diagonal bound: if G is positive
    definite and x'Gx <= t, then x_i^2 <= t * (G^{-1})_{ii}.  The sweep splits
    the coordinates into two halves and broadcasts the cross terms, so the
    only arithmetic is exact int64 matrix multiplication.
    """
    n = len(gram)
    g = np.array(gram, dtype=np.int64)
    inv_diag = np.diag(np.linalg.inv(np.array(gram, dtype=float)))
    bounds = [isqrt(int(target * d) + 1) + 1 for d in inv_diag]
    half = n // 2
    left = _box_vectors(bounds[:half])
    right = _box_vectors(bounds[half:])
    a = g[:half, :half]
    b = g[:half, half:]
    c = g[half:, half:]
    norm_right = np.einsum("ij,jk,ik->i", right, c, right)
    total = 0
    chunk = max(1, (1 << 22) // max(1, len(right)))
    for start in range(0, len(left), chunk):
        piece = left[start : start + chunk]
        norm_left = np.einsum("ij,jk,ik->i", piece, a, piece)
        cross = piece @ b @ right.T
        norms = norm_left[:, None] + 2 * cross + norm_right[None, :]
        total += int(np.count_nonzero(norms == target))
    return total


def _box_vectors(bounds: list[int]) -> np.ndarray:
    """All integer vectors with |x_i| <= bounds[i], as an int64 array."""
    if not bounds:
        return np.zeros((1, 0), dtype=np.int64)
    axes = [np.arange(-b, b + 1, dtype=np.int64) for b in bounds]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def poly_mul(a: list[int], b: list[int], n: int) -> list[int]:
    """Product of two integer polynomials truncated to n coefficients."""
    out = [0] * n
    for i, ai in enumerate(a[:n]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: n - i]):
            out[i + j] += ai * bj
    return out


def euler_product_naive(power: int, n: int) -> list[Fraction]:
    """Coefficients of prod_{m>=1} (1 - q^m)^power by direct expansion.

    Negative powers go through the geometric series of each factor, so the
    whole thing stays a finite polynomial product up to order n.
    """
    series = [1] + [0] * (n - 1)
    for m in range(1, n):
        if power >= 0:
            factor = [0] * n
            factor[0] = 1
            if m < n:
                factor[m] = -1
            block = [1] + [0] * (n - 1)
            for _ in range(power):
                block = poly_mul(block, factor, n)
        else:
            inv = [0] * n
            for j in range(0, n, m):
                inv[j] = 1
            block = [1] + [0] * (n - 1)
            for _ in range(-power):
                block = poly_mul(block, inv, n)
        series = poly_mul(series, block, n)
    return [Fraction(c) for c in series]


def bernoulli_numbers(count: int) -> list[Fraction]:
    """First Bernoulli numbers (B_1 = -1/2) via the Akiyama-Tanigawa scheme."""
    out: list[Fraction] = []
    row: list[Fraction] = []
    for m in range(count):
        row.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    signed = list(out)
    if count > 1:
        signed[1] = -signed[1]
    return signed


def bernoulli_poly_3(x: Fraction) -> Fraction:
    """Third Bernoulli polynomial evaluated at x, built from B_0..B_3."""
    b = bernoulli_numbers(4)
    from math import comb

    return sum(
        Fraction(comb(3, k)) * b[k] * x ** (3 - k) for k in range(4)
    )


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1
