"""Random abelian instances shared by property tests and the acceptance suite."""

from __future__ import annotations

import math
import random

from sympy import primerange

PRIMES = list(primerange(2, 2**16))


def random_invariants(rng: random.Random, max_order: int = 200) -> list[int]:
    inv: list[int] = []
    while True:
        m = rng.randint(2, 30)
        if math.prod(inv) * m > max_order:
            return inv or [m if m <= max_order else 2]
        inv.append(m)
        if rng.random() < 0.4:
            return inv


def random_prime_power(rng: random.Random, avoid: int, limit: int = 2**16) -> int:
    while True:
        p = rng.choice(PRIMES)
        if avoid % p == 0:
            continue
        a = rng.randint(1, max(1, int(math.log(limit, p))))
        q = p**a
        if q <= limit:
            return q


def random_instances(seed: int, count: int):
    """Yield (invariants, q, t) with p not dividing |G|, q <= 2^16, t <= 12."""
    rng = random.Random(seed)
    for _ in range(count):
        inv = random_invariants(rng)
        q = random_prime_power(rng, math.prod(inv))
        yield inv, q, rng.randint(1, 12)
