"""Exact integer cyclic convolution via number-theoretic transforms.

Counting demands integer equality, so the convolution is done modulo NTT
primes large enough to recover true values: a single prime when it exceeds
the worst-case entry, otherwise two primes recombined by CRT.  Below a size
threshold a schoolbook convolution is cheaper than the transform setup.
"""

from __future__ import annotations

import numpy as np

# Primes p = c * 2^k + 1 with generator g; 2-adicity caps the transform size.
_P1, _G1, _K1 = 998244353, 3, 23
_P2, _G2, _K2 = 2013265921, 31, 27

SCHOOLBOOK_THRESHOLD = 64


def _power_table(base: int, count: int, p: int) -> np.ndarray:
    """[base^0, ..., base^(count-1)] mod p by chunk doubling."""
    pw = np.empty(count, dtype=np.int64)
    pw[0] = 1
    filled = 1
    while filled < count:
        take = min(filled, count - filled)
        mult = pow(base, filled, p)
        pw[filled:filled + take] = pw[:take] * mult % p
        filled += take
    return pw


def _bit_reverse_indices(n: int) -> np.ndarray:
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(n.bit_length() - 1):
        rev = (rev << 1) | ((idx >> b) & 1)
    return rev


def _ntt(values: np.ndarray, p: int, g: int, inverse: bool = False) -> np.ndarray:
    n = values.size
    assert n & (n - 1) == 0
    a = values[_bit_reverse_indices(n)] % p
    if n == 1:
        return a
    base = pow(g, (p - 1) // n, p)
    if inverse:
        base = pow(base, p - 2, p)
    roots = _power_table(base, n // 2, p)
    length = 2
    while length <= n:
        half = length // 2
        ws = roots[:: n // length][:half]
        v = a.reshape(-1, length)
        lo = v[:, :half]
        hi = v[:, half:] * ws % p
        s = (lo + hi) % p
        d = (lo - hi) % p
        v[:, :half] = s
        v[:, half:] = d
        length *= 2
    if inverse:
        a = a * pow(n, p - 2, p) % p
    return a


def _linear_convolution_mod(a: np.ndarray, b: np.ndarray, p: int, g: int, k_max: int) -> np.ndarray:
    out_len = a.size + b.size - 1
    size = 1 << max(out_len - 1, 1).bit_length()
    if size > (1 << k_max):
        raise ValueError(f"transform size {size} exceeds 2-adicity of prime {p}")
    fa = np.zeros(size, dtype=np.int64)
    fb = np.zeros(size, dtype=np.int64)
    fa[: a.size] = a % p
    fb[: b.size] = b % p
    fa = _ntt(fa, p, g)
    fb = _ntt(fb, p, g)
    fc = fa * fb % p
    return _ntt(fc, p, g, inverse=True)[:out_len]


def _fold(linear: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=linear.dtype)
    for start in range(0, linear.size, n):
        chunk = linear[start:start + n]
        out[: chunk.size] += chunk
    return out


def cyclic_convolution(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact cyclic convolution of two equal-length nonnegative int vectors.

    c[t] = sum_u a[u] * b[(t - u) mod n], computed in exact integer
    arithmetic.  Entries must stay below the CRT range ~2.0e18.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("inputs must be equal-length 1-d arrays")
    n = a.size
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if n < SCHOOLBOOK_THRESHOLD:
        return _fold(np.convolve(a, b), n)
    # Largest possible entry of the linear convolution, for prime selection.
    bound = int(min(a.sum() * (b.max(initial=0)), b.sum() * (a.max(initial=0))))
    if bound < _P1:
        return _fold(_linear_convolution_mod(a, b, _P1, _G1, _K1), n)
    if bound < _P2:
        return _fold(_linear_convolution_mod(a, b, _P2, _G2, _K2), n)
    if bound >= _P1 * _P2:
        raise ValueError("convolution entries exceed the exact CRT range")
    c1 = _linear_convolution_mod(a, b, _P1, _G1, _K1)
    c2 = _linear_convolution_mod(a, b, _P2, _G2, _K2)
    inv_p1 = pow(_P1, _P2 - 2, _P2)
    t = (c2 - c1) * inv_p1 % _P2
    return _fold(c1 + _P1 * t, n)
