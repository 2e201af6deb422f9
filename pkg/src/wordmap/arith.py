"""Small number-theory helpers used across the package."""

from __future__ import annotations

import itertools
from math import gcd, lcm


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as {prime: multiplicity}."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def is_prime(n: int) -> bool:
    return n > 1 and factorize(n) == {n: 1}


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, a in factorize(n).items():
        divs = [d * p**e for d in divs for e in range(a + 1)]
    return sorted(divs)


def p_part(n: int, p: int) -> tuple[int, int]:
    """Split n = p^k * m with p not dividing m; returns (p^k, m)."""
    pk = 1
    while n % p == 0:
        n //= p
        pk *= p
    return pk, n


def bezout_coprime(a: int, b: int) -> tuple[int, int]:
    """Solve r*a + s*b = 1 for coprime a, b > 0.

    The representative with s in (-a/2, a/2] is returned, so the exponents
    built from (r, s) stay as small as the identity allows.
    """
    if gcd(a, b) != 1:
        raise ValueError(f"{a} and {b} are not coprime")
    s = pow(b, -1, a) if a > 1 else 0
    if s > a // 2:
        s -= a
    r = (1 - s * b) // a
    assert r * a + s * b == 1
    return r, s


def partitions(n: int) -> list[tuple[int, ...]]:
    """All partitions of n as non-increasing tuples."""

    def gen(n: int, cap: int):
        if n == 0:
            yield ()
            return
        for first in range(min(n, cap), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    return list(gen(n, n))


def abelian_primary_decompositions(order: int) -> list[tuple[int, ...]]:
    """Primary decompositions (prime-power multisets) of all abelian groups
    of the given order, each sorted ascending."""
    per_prime = []
    for p, a in sorted(factorize(order).items()):
        per_prime.append([tuple(p**e for e in part) for part in partitions(a)])
    out = []
    for combo in itertools.product(*per_prime):
        out.append(tuple(sorted(q for block in combo for q in block)))
    return sorted(out)


def invariant_factors(primary: tuple[int, ...]) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... | dt from a primary decomposition."""
    by_prime: dict[int, list[int]] = {}
    for q in primary:
        fact = factorize(q)
        (p, e), = fact.items()
        by_prime.setdefault(p, []).append(e)
    width = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, exps in by_prime.items():
            exps = sorted(exps, reverse=True)
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return tuple(sorted(factors))


def exponent_of_primary(primary: tuple[int, ...]) -> int:
    return lcm(*primary) if primary else 1
