"""Integer and rational factorization, and cube classes of rationals."""
from __future__ import annotations

import math
import random
from collections import Counter

import gmpy2

from .rational import QQ, is_cube_int

TRIAL_BOUND = 10 ** 6


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


_PRIMES: list[int] | None = None


def _primes() -> list[int]:
    global _PRIMES
    if _PRIMES is None:
        _PRIMES = _small_primes(TRIAL_BOUND)
    return _PRIMES


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factor_int(n: int) -> Counter:
    """Prime factorization of |n| as a Counter {p: e}; trial division then Pollard rho."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    out: Counter = Counter()
    for p in _primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] += 1
            n //= p
    if n == 1:
        return out
    rng = random.Random(0x3A5F)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m < TRIAL_BOUND ** 2 or gmpy2.is_prime(m, 50):
            out[m] += 1
            continue
        r, exact = gmpy2.iroot(m, 2)
        if exact:
            stack += [int(r), int(r)]
            continue
        d = _pollard_brent(m, rng)
        stack += [d, m // d]
    return out


def factor_rational(q) -> tuple[int, dict[int, int]]:
    """Return (sign, {p: e}) with q = sign * prod p^e; denominators give negative e."""
    q = QQ(q)
    if q == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if q > 0 else -1
    exps: dict[int, int] = dict(factor_int(int(q.numerator)))
    for p, e in factor_int(int(q.denominator)).items():
        exps[p] = exps.get(p, 0) - e
    return sign, dict(sorted(exps.items()))


def cube_class(q) -> tuple[bool, object]:
    """Decide whether a nonzero rational is a cube; the witness is the cube root, else None.

    Numerator and denominator are tested with an exact integer cube root, which is
    equivalent to every prime exponent being divisible by 3.
    """
    q = QQ(q)
    if q == 0:
        raise ValueError("cube_class of 0")
    okn, rn = is_cube_int(int(q.numerator))
    okd, rd = is_cube_int(int(q.denominator))
    if okn and okd:
        return True, QQ(rn) / rd
    return False, None


def cube_free_representative(q):
    """A small rational u with u ≡ q modulo cubes (exponents reduced into {-1, 0, 1})."""
    sign, exps = factor_rational(q)
    u = QQ(sign)
    for p, e in exps.items():
        r = e % 3
        if r == 1:
            u *= p
        elif r == 2:
            u /= p
    return u


def _cube_reduce_int(n: int):
    """u with u = n modulo cubes, using trial division only."""
    u = QQ(1)
    for p in _primes():
        if n < p:
            break
        if n % p:
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 3 == 1:
            u *= p
        elif e % 3 == 2:
            u /= p
    if n > 1:
        if is_cube_int(n)[0]:
            pass
        else:
            r, exact = gmpy2.iroot(n, 2)
            u = u / int(r) if exact else u * n
    return u


def cube_reduce(q):
    """Like cube_free_representative but never factors beyond trial division.

    Small primes get exponents in {-1, 0, 1}; a leftover cofactor is kept as it is
    (inverted when it is a perfect square), so the positive result is always in q's class.
    """
    q = QQ(q)
    if q == 0:
        raise ValueError("cube_reduce of 0")
    # -1 is a cube, so the sign never matters
    return _cube_reduce_int(int(abs(q.numerator))) / _cube_reduce_int(int(q.denominator))
