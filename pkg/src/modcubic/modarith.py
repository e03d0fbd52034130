"""Modular arithmetic over prime moduli p with 3 < p < 2**62.

Python integers are unbounded, so products never overflow; the upper cap on
the modulus is kept so that results agree with fixed-width (128-bit
intermediate) implementations.
"""

from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

MODULUS_CAP = 1 << 62

# Deterministic for n < 3.3e24, which covers every 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class DomainError(ValueError):
    """Mathematically invalid input (composite modulus, zero leading coefficient, ...)."""


class UsageError(ValueError):
    """Out-of-range parameters or malformed requests."""


def is_prime(n: int) -> bool:
    """Exact primality for all 64-bit inputs (deterministic Miller-Rabin)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    if n <= 2:
        return 2
    n |= 1
    while not is_prime(n):
        n += 2
    return n


def check_modulus(p: int) -> int:
    """Validate a modulus, raising DomainError that names the failed check."""
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
        raise DomainError(f"modulus must be an integer, got {p!r}")
    p = int(p)
    if p <= 3:
        raise DomainError(f"modulus check failed: p={p} must be > 3")
    if p >= MODULUS_CAP:
        raise DomainError(f"modulus check failed: p={p} must be < 2^62")
    if not is_prime(p):
        raise DomainError(f"primality check failed: p={p} is not prime")
    return p


def pow_mod(base: int, exp: int, p: int) -> int:
    """base**exp mod p by left-to-right square-and-multiply."""
    if exp < 0:
        raise UsageError("exponent must be nonnegative")
    base %= p
    result = 1 % p
    for bit in bin(exp)[2:]:
        result = result * result % p
        if bit == "1":
            result = result * base % p
    return result


def inv_mod(x: int, p: int) -> int:
    """Multiplicative inverse of x mod p via the extended Euclidean algorithm."""
    a = x % p
    if a == 0:
        raise DomainError(f"{x} is not invertible mod {p}")
    old_r, r = a, p
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise DomainError(f"{x} is not invertible mod {p}")
    return old_s % p


def legendre(n: int, p: int) -> int:
    """Legendre symbol (n/p) in {-1, 0, 1}, by Euler's criterion."""
    t = pow(n % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def sqrt_mod(n: int, p: int) -> Optional[Tuple[int, int]]:
    """Square roots of n mod p as a pair (r, p - r) with r <= p - r.

    Returns (0, 0) for n = 0 and None for non-residues. Tonelli-Shanks, with the
    n**((p+1)/4) shortcut when p = 3 mod 4.
    """
    n %= p
    if n == 0:
        return (0, 0)
    if legendre(n, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(n, (p + 1) // 4, p)
        return _ordered_roots(r, p)

    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m = s
    c = pow(z, q, p)
    t = pow(n, q, p)
    r = pow(n, (q + 1) // 2, p)
    while t != 1:
        # least i with t^(2^i) = 1
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m = i
        c = b * b % p
        t = t * c % p
        r = r * b % p
    return _ordered_roots(r, p)


def _ordered_roots(r: int, p: int) -> Tuple[int, int]:
    other = p - r
    return (r, other) if r <= other else (other, r)


@lru_cache(maxsize=8)
def legendre_table(p: int) -> np.ndarray:
    """chi[n] = (n/p) for n in [0, p), built by marking squares (no exponentiation).

    Read-only int8 array; intended for p up to a few times 10**7.
    """
    if p >= 1 << 31:
        raise UsageError("legendre_table requires p < 2^31")
    chi = np.full(p, -1, dtype=np.int8)
    chi[0] = 0
    k = np.arange(1, p // 2 + 1, dtype=np.int64)
    chi[(k * k) % p] = 1
    chi.setflags(write=False)
    return chi
