"""Finite groups stored as Cayley tables.

Elements are the indices ``0..n-1``; ``table[i, j]`` is the index of
``g_i * g_j``.  Permutation groups compose right to left, i.e.
``(a * b)(x) = a(b(x))``.
"""

from __future__ import annotations

import math
import re
from collections import deque
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Group",
    "AbelianGroup",
    "GroupError",
    "group_abelian",
    "group_from_permutations",
    "group_from_cayley",
    "exponent",
    "commutator_subgroup",
    "conjugacy_class_count",
    "sylow_is_cp",
    "parse_cycles",
    "cycle_notation",
]

DEFAULT_ORDER_CAP = 10_000
_EXHAUSTIVE_ASSOC = 256
_SAMPLED_TRIPLES = 10_000


class GroupError(ValueError):
    pass


class Group:
    """A finite group given extensionally by its Cayley table."""

    def __init__(self, table, labels: Sequence[str] | None = None, *, validate: bool = True):
        table = np.asarray(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError(f"Cayley table must be a non-empty square array, got shape {table.shape}")
        self._table = table
        self.n = table.shape[0]
        if labels is None:
            labels = [f"g{i}" for i in range(self.n)]
        if len(labels) != self.n:
            raise GroupError(f"expected {self.n} labels, got {len(labels)}")
        self.labels = [str(s) for s in labels]
        ident = [i for i in range(self.n) if np.array_equal(table[i], np.arange(self.n))]
        if not ident:
            raise GroupError("no identity element")
        self.identity = ident[0]
        if validate:
            self._validate()

    # storage ----------------------------------------------------------------

    @property
    def table(self) -> np.ndarray:
        return self._table

    def __len__(self) -> int:
        return self.n

    @property
    def order(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.n})"

    def _validate(self) -> None:
        t, n = self.table, self.n
        ar = np.arange(n)
        if not np.array_equal(t[:, self.identity], ar):
            raise GroupError("identity column is not the identity permutation")
        if not (np.sort(t, axis=1) == ar).all() or not (np.sort(t, axis=0) == ar[:, None]).all():
            raise GroupError("Cayley table is not a Latin square")
        if n <= _EXHAUSTIVE_ASSOC:
            lhs = t[t[:, :, None], ar[None, None, :]]  # (ab)c
            rhs = t[ar[:, None, None], t[None, :, :]]  # a(bc)
            ok = np.array_equal(lhs, rhs)
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, _SAMPLED_TRIPLES))
            ok = np.array_equal(t[t[a, b], c], t[a, t[b, c]])
        if not ok:
            raise GroupError("Cayley table is not associative")

    # element arithmetic -----------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverses(self) -> np.ndarray:
        rows, cols = np.nonzero(self.table == self.identity)
        inv = np.empty(self.n, dtype=np.int32)
        inv[rows] = cols
        return inv

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result, base = self.identity, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.n, dtype=np.int64)
        ar = np.arange(self.n)
        cur = ar.copy()
        k = 1
        while (orders == 0).any():
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = k
            cur = self.table[cur, ar]
            k += 1
        return orders

    def element_order(self, a: int) -> int:
        return int(self.element_orders[a])

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    # subgroups ----------------------------------------------------------------

    def subgroup_closure(self, generators: Iterable[int]) -> list[int]:
        """Smallest subgroup containing ``generators`` as a sorted index list."""
        gens = sorted(set(int(g) for g in generators) - {self.identity})
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = set(int(x) for x in subset)
        if self.identity not in s:
            return False
        idx = np.array(sorted(s))
        return set(self.table[np.ix_(idx, idx)].ravel().tolist()) <= s

    def quotient(self, normal: Sequence[int]) -> tuple["Group", np.ndarray]:
        """Quotient by a normal subgroup.

        Returns the quotient group (cosets represented by their smallest
        member) and the map element index -> coset index.
        """
        normal = np.array(sorted(set(int(x) for x in normal)))
        coset_of = -np.ones(self.n, dtype=np.int64)
        reps: list[int] = []
        for g in range(self.n):
            if coset_of[g] >= 0:
                continue
            members = self.table[g, normal]
            coset_of[members] = len(reps)
            reps.append(g)
        m = len(reps)
        if m * len(normal) != self.n:
            raise GroupError("subset is not a subgroup")
        rep_arr = np.array(reps)
        qt = coset_of[self.table[rep_arr[:, None], rep_arr[None, :]]]
        # normality: left cosets must coincide with right cosets
        for g in reps:
            if set(self.table[normal, g].tolist()) != set(self.table[g, normal].tolist()):
                raise GroupError("subgroup is not normal")
        labels = [f"{self.labels[r]}N" if r != self.identity else "N" for r in reps]
        return Group(qt, labels, validate=False), coset_of


class AbelianGroup(Group):
    """Direct product of cyclic groups with arithmetic element operations.

    Elements are tuples in mixed radix, last factor varying fastest, so the
    identity has index 0.  The Cayley table is only built when something
    actually needs it.
    """

    def __init__(self, invariants: Sequence[int]):
        invariants = tuple(int(m) for m in invariants)
        if any(m < 2 for m in invariants):
            raise GroupError(f"cyclic factors must have order >= 2, got {list(invariants)}")
        self.invariants = invariants
        self.n = math.prod(invariants)
        self.identity = 0
        self._radix = np.array([math.prod(invariants[i + 1 :]) for i in range(len(invariants))], dtype=np.int64)

    def __repr__(self) -> str:
        return f"AbelianGroup({list(self.invariants)})"

    @cached_property
    def digits(self) -> np.ndarray:
        idx = np.arange(self.n, dtype=np.int64)
        if not self.invariants:
            return np.zeros((self.n, 0), dtype=np.int64)
        return (idx[:, None] // self._radix[None, :]) % np.array(self.invariants)[None, :]

    def _encode(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self._radix

    @cached_property
    def labels(self) -> list[str]:
        if len(self.invariants) == 1:
            return ["1" if i == 0 else ("x" if i == 1 else f"x^{i}") for i in range(self.n)]
        return ["(" + ",".join(str(int(d)) for d in row) + ")" for row in self.digits]

    @cached_property
    def table(self) -> np.ndarray:
        mods = np.array(self.invariants)
        s = (self.digits[:, None, :] + self.digits[None, :, :]) % mods
        return self._encode(s).astype(np.int32)

    @property
    def is_abelian(self) -> bool:
        return True

    def mul(self, a: int, b: int) -> int:
        mods = np.array(self.invariants)
        return int(self._encode((self.digits[a] + self.digits[b]) % mods))

    @cached_property
    def inverses(self) -> np.ndarray:
        mods = np.array(self.invariants)
        return self._encode((-self.digits) % mods).astype(np.int32)

    def power(self, a: int, k: int) -> int:
        mods = np.array(self.invariants)
        return int(self._encode((self.digits[a] * k) % mods))

    @cached_property
    def element_orders(self) -> np.ndarray:
        mods = np.array(self.invariants, dtype=np.int64)
        comp = mods[None, :] // np.gcd(self.digits, mods[None, :])
        return np.lcm.reduce(comp, axis=1) if self.invariants else np.ones(self.n, dtype=np.int64)


# -- constructors ------------------------------------------------------------


def group_abelian(invariants: Sequence[int]) -> AbelianGroup:
    """C_{m1} x ... x C_{mk} in mixed-radix order, identity first."""
    return AbelianGroup(invariants)


def parse_cycles(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse cycle notation such as ``"(235)(678)"`` or ``"(1,2)(3,4)"`` into
    a 1-based one-line image tuple (position ``i-1`` holds the image of ``i``)."""
    text = text.strip()
    cycles = re.findall(r"\(([^()]*)\)", text)
    if not cycles and text not in ("", "1", "()", "e", "id"):
        raise GroupError(f"cannot parse permutation {text!r}")
    parsed = []
    for c in cycles:
        if "," in c or " " in c.strip():
            pts = [int(x) for x in re.split(r"[,\s]+", c.strip()) if x]
        else:
            pts = [int(x) for x in c]
        parsed.append(pts)
    m = max([degree or 0] + [x for c in parsed for x in c])
    img = list(range(1, m + 1))
    for pts in parsed:
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b
    return tuple(img)


def cycle_notation(perm: Sequence[int]) -> str:
    seen = set()
    out = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start - 1]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x - 1]
        if len(cyc) > 1:
            sep = "," if len(perm) > 9 else ""
            out.append("(" + sep.join(map(str, cyc)) + ")")
    return "".join(out) or "1"


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # (a*b)(x) = a(b(x))
    return tuple(a[b[i] - 1] for i in range(len(a)))


def _as_perm(g, degree: int) -> tuple[int, ...]:
    if isinstance(g, str):
        p = parse_cycles(g, degree)
    else:
        p = tuple(int(x) for x in g)
    if len(p) < degree:
        p = p + tuple(range(len(p) + 1, degree + 1))
    if sorted(p) != list(range(1, len(p) + 1)):
        raise GroupError(f"{g!r} is not a permutation of 1..{len(p)}")
    return p


def group_from_permutations(
    generators: Sequence,
    *,
    elements: Sequence | None = None,
    cap: int = DEFAULT_ORDER_CAP,
) -> Group:
    """Closure of permutation generators (one-line image lists or cycle strings).

    Elements are ordered by breadth-first discovery from the identity, unless
    ``elements`` pins an explicit order (it must list the closure exactly).
    """
    degree = 1
    for g in list(generators) + list(elements or []):
        if isinstance(g, str):
            degree = max(degree, len(parse_cycles(g)))
        else:
            degree = max(degree, len(g))
    gens = [_as_perm(g, degree) for g in generators]
    ident = tuple(range(1, degree + 1))
    order = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _compose(x, g)
            if y not in index:
                if len(order) >= cap:
                    raise GroupError(f"closure exceeds the order cap {cap}")
                index[y] = len(order)
                order.append(y)
                queue.append(y)
    if elements is not None:
        pinned = [_as_perm(g, degree) for g in elements]
        if len(set(pinned)) != len(pinned) or set(pinned) != set(order):
            raise GroupError("explicit element list does not match the generated group")
        order = pinned
        index = {p: i for i, p in enumerate(order)}
        labels = [g if isinstance(g, str) else cycle_notation(p) for g, p in zip(elements, pinned)]
    else:
        labels = [cycle_notation(p) for p in order]
    n = len(order)
    table = np.empty((n, n), dtype=np.int32)
    for i, a in enumerate(order):
        for j, b in enumerate(order):
            table[i, j] = index[_compose(a, b)]
    g = Group(table, labels, validate=n <= _EXHAUSTIVE_ASSOC)
    g.permutations = order
    return g


def group_from_cayley(table, labels: Sequence[str] | None = None) -> Group:
    return Group(table, labels)


# -- structural queries --------------------------------------------------------


def exponent(g: Group) -> tuple[int, int | None]:
    """lcm of element orders and the smallest index attaining it (when one does)."""
    orders = g.element_orders
    exp = int(reduce(math.lcm, (int(o) for o in np.unique(orders)), 1))
    hits = np.nonzero(orders == exp)[0]
    witness = int(hits[0]) if hits.size else None
    return exp, witness


def commutator_subgroup(g: Group) -> tuple[list[int], Group]:
    """Derived subgroup H' (sorted indices) and the quotient H/H'."""
    if g.is_abelian:
        derived = [g.identity]
    else:
        t, inv = g.table, g.inverses
        ar = np.arange(g.n)
        # [a, b] = a^-1 b^-1 a b
        comms = t[t[inv[:, None], inv[None, :]], t[ar[:, None], ar[None, :]]]
        derived = g.subgroup_closure(np.unique(comms).tolist())
    quotient, _ = g.quotient(derived)
    return derived, quotient


def conjugacy_classes(g: Group) -> list[list[int]]:
    if g.is_abelian:
        return [[i] for i in range(g.n)]
    t, inv = g.table, g.inverses
    ar = np.arange(g.n)
    conj = t[t[ar[:, None], ar[None, :]], inv[:, None]]  # conj[h, x] = h x h^-1
    seen = np.zeros(g.n, dtype=bool)
    classes = []
    for x in range(g.n):
        if not seen[x]:
            cls = np.unique(conj[:, x])
            seen[cls] = True
            classes.append(cls.tolist())
    return classes


def conjugacy_class_count(g: Group) -> int:
    if g.is_abelian:
        return g.n
    return len(conjugacy_classes(g))


def sylow_is_cp(g: Group, p: int) -> bool:
    """True iff p divides |G| exactly once (Sylow p-subgroups are then C_p)."""
    return g.n % p == 0 and g.n % (p * p) != 0
