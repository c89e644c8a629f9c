"""q-orbits (q-cyclotomic classes) of finite abelian groups.

The orbit of ``g`` under ``g -> g^q`` has size ``t_g``, the multiplicative
order of ``q`` modulo ``o(g)``.  The orbit partition is computed by actually
walking ``g -> g^q`` in the group, and every orbit size is checked against
the arithmetic value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

from sympy import factorint, totient

from .field import FiniteField, multiplicative_order
from .groups import Group, commutator_subgroup, exponent

__all__ = [
    "QOrbitData",
    "SplittingVerdict",
    "prime_power",
    "qorbits",
    "orbit_index",
    "is_splitting_field",
    "splitting_necessary_condition",
]


def prime_power(q: int | FiniteField) -> tuple[int, int]:
    """Split a prime power ``q`` into ``(p, alpha)``."""
    if isinstance(q, FiniteField):
        return q.p, q.degree
    q = int(q)
    if q < 2:
        raise ValueError(f"q = {q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"q = {q} is not a prime power")
    ((p, a),) = f.items()
    return int(p), int(a)


def _q_of(q: int | FiniteField) -> int:
    return q.q if isinstance(q, FiniteField) else int(q)


def _require_semisimple(order: int, p: int) -> None:
    if order % p == 0:
        raise ValueError(f"characteristic {p} divides the group order {order}; the algebra is not semisimple")


@dataclass
class QOrbitData:
    group: Group
    q: int
    t: dict[int, int]
    orbits: list[list[int]]
    l: int
    w: int
    t_w: int
    gen_class_sizes: dict[int, int] = field(repr=False)

    @property
    def exponent(self) -> int:
        return self.group.element_order(self.w)

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]


def qorbits(g: Group, q: int | FiniteField) -> QOrbitData:
    """Partition an abelian group into q-orbits and collect t_g, l, t_w."""
    p, _ = prime_power(q)
    q = _q_of(q)
    _require_semisimple(g.n, p)
    if not g.is_abelian:
        raise ValueError("q-orbits are defined here for abelian groups only")
    orders = g.element_orders
    t: dict[int, int] = {}
    phi_cache: dict[int, int] = {}
    gen_sizes: dict[int, int] = {}
    orbits: list[list[int]] = []
    seen = [False] * g.n
    for x in range(g.n):
        o = int(orders[x])
        if o not in phi_cache:
            phi_cache[o] = int(totient(o))
        gen_sizes[x] = phi_cache[o]
        if seen[x]:
            continue
        tg = multiplicative_order(q % o, o)
        step = q % o
        orbit = [x]
        y = g.power(x, step)
        while y != x:
            orbit.append(y)
            y = g.power(y, step)
        if len(orbit) != tg:
            raise RuntimeError(f"orbit of element {x} has size {len(orbit)} but t_g = {tg}")
        for y in orbit:
            seen[y] = True
            t[y] = tg
        orbits.append(orbit)
    l = reduce(math.lcm, set(t.values()), 1)
    _, w = exponent(g)
    return QOrbitData(group=g, q=q, t=t, orbits=orbits, l=l, w=w, t_w=t[w], gen_class_sizes=gen_sizes)


def orbit_index(exp: int, q: int) -> int:
    """t_w computed from the exponent alone: the order of q modulo exp(G)."""
    return multiplicative_order(q % exp, exp) if exp > 1 else 1


@dataclass(frozen=True)
class SplittingVerdict:
    """Whether the degree-t extension of F_q splits an abelian group.

    ``exponent_divides`` is the divisibility exp(G) | q^t - 1 that decides
    the verdict; ``orbit_index_divides`` is the independent t_w | t check.
    Splitting field and primitive-root-of-unity conditions are not
    materialised; they are equivalent to these two.
    """

    splits: bool
    exponent_divides: bool
    orbit_index_divides: bool
    exponent: int
    t_w: int
    t: int

    def __bool__(self) -> bool:
        return self.splits

    @property
    def consistent(self) -> bool:
        return self.exponent_divides == self.orbit_index_divides


def is_splitting_field(g: Group, q: int | FiniteField, t: int) -> SplittingVerdict:
    p, _ = prime_power(q)
    q = _q_of(q)
    _require_semisimple(g.n, p)
    if t < 1:
        raise ValueError(f"extension index must be positive, got {t}")
    exp, _ = exponent(g)
    cond4 = pow(q, t, exp) == 1 % exp
    t_w = orbit_index(exp, q)
    cond3 = t % t_w == 0
    if cond3 != cond4:
        raise RuntimeError(f"t_w | t and exp(G) | q^t - 1 disagree for exp={exp}, q={q}, t={t}")
    return SplittingVerdict(cond4, cond4, cond3, exp, t_w, t)


def splitting_necessary_condition(h: Group, q: int | FiniteField) -> bool:
    """exp(H/H') | q - 1: necessary for F_q to be a splitting field of H."""
    p, _ = prime_power(q)
    q = _q_of(q)
    _require_semisimple(h.n, p)
    _, quotient = commutator_subgroup(h)
    exp, _ = exponent(quotient)
    return (q - 1) % exp == 0
