"""Integer arithmetic: valuations, primality, and bounded-effort factorization.

Integers are plain Python ``int`` and rationals are :class:`fractions.Fraction`;
both are exact and immutable, which is all the higher layers need.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import gcd, isqrt, prod

ENV_FACTOR_BOUND = "CRITRED_FACTOR_BOUND"
DEFAULT_TRIAL_BOUND = 1 << 16
DEFAULT_RHO_ITERATIONS = 200_000

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Miller-Rabin with the first 13 primes as bases is exact below this bound.
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


class InfiniteValuation(ValueError):
    """Raised when asking for the p-adic valuation of zero."""


def valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in ``n``.

    >>> valuation(50, 5)
    2
    >>> valuation(10, 3)
    0
    """
    if n == 0:
        raise InfiniteValuation("valuation of 0 is infinite")
    if p < 2:
        raise ValueError(f"not a prime: {p}")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _miller_rabin(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    # Selfridge parameter choice, then the strong Lucas probable-prime test.
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -d - 2 if d > 0 else -d + 2
        if d == 13 and isqrt(n) ** 2 == n:
            return False
    p, q = 1, (1 - d) // 4
    k, s = n + 1, 0
    while k % 2 == 0:
        k //= 2
        s += 1

    inv2 = (n + 1) // 2
    u, v, qk = 0, 2, 1
    for bit in bin(k)[2:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) * inv2 % n, (d * u + p * v) * inv2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test; deterministic below ~3.3e24, Baillie-PSW above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_miller_rabin(n, a, d, s) for a in _SMALL_PRIMES)
    return _miller_rabin(n, 2, d, s) and _strong_lucas(n)


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


@dataclass(frozen=True)
class FactorConfig:
    """Effort limits for :func:`factorize`."""

    trial_bound: int = DEFAULT_TRIAL_BOUND
    rho_iterations: int = DEFAULT_RHO_ITERATIONS
    rho_attempts: int = 8

    @classmethod
    def from_env(cls, **overrides) -> "FactorConfig":
        raw = os.environ.get(ENV_FACTOR_BOUND)
        if raw is not None and "trial_bound" not in overrides:
            overrides["trial_bound"] = int(raw)
        return cls(**overrides)


@dataclass(frozen=True)
class Factorization:
    """``sign * prod(p**e) * cofactor``; ``cofactor == 1`` means complete."""

    sign: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    @property
    def primes(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.factors)

    def value(self) -> int:
        return self.sign * prod(p**e for p, e in self.factors) * self.cofactor

    def __str__(self) -> str:
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if not self.complete:
            parts.append(f"[{self.cofactor}]")
        body = " * ".join(parts) or "1"
        return f"-{body}" if self.sign < 0 else body


def _brent(n: int, c: int, max_iter: int) -> int | None:
    """One Pollard-Brent run; a nontrivial factor of ``n`` or None."""
    y, m, g, r, q = 2, 128, 1, 1, 1
    f = lambda t: (t * t + c) % n  # noqa: E731
    x = ys = y
    used = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = f(y)
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = f(y)
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        used += r
        r *= 2
        if used > max_iter:
            return None
    if g == n:
        while True:
            ys = f(ys)
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split(n: int, config: FactorConfig) -> int | None:
    for c in range(1, config.rho_attempts + 1):
        d = _brent(n, c, config.rho_iterations)
        if d is not None:
            return d
    return None


def factorize(n: int, config: FactorConfig | None = None) -> Factorization:
    """Factor ``n`` by trial division then Pollard-Brent rho.

    Whatever cannot be split within the configured effort is returned as the
    cofactor, never as an error.

    >>> str(factorize(-4096))
    '-2^12'
    """
    if n == 0:
        raise InfiniteValuation("cannot factor 0")
    config = config or FactorConfig()
    sign = -1 if n < 0 else 1
    n = abs(n)
    found: dict[int, int] = {}

    p = 2
    while p <= config.trial_bound and p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
        p += 1 if p == 2 else 2
    if n > 1 and (n <= config.trial_bound or p * p > n):
        found[n] = found.get(n, 0) + 1
        n = 1

    stuck = 1
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _split(m, config)
        if d is None:
            stuck *= m
        else:
            stack += [d, m // d]

    factors = tuple(sorted(found.items()))
    return Factorization(sign, factors, stuck)
