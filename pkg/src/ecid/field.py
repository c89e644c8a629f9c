"""Exact arithmetic in GF(p^a) and dense linear algebra over it.

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_i`` are the
coefficients of the residue polynomial (constant term first).  The scalar
API (:class:`FieldElement`) works for any supported field; the vectorised
kernels used by the algebra and code modules go through lookup tables and
are only available for small fields (``q <= TABLE_LIMIT``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from sympy import Poly, isprime, symbols

__all__ = [
    "FiniteField",
    "FieldElement",
    "TABLE_LIMIT",
    "field_make",
    "multiplicative_order",
    "row_reduce",
    "matrix_rank",
]

TABLE_LIMIT = 2048
MAX_ORDER = 2**63

_X = symbols("x")


def _poly_is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    # sympy wants highest degree first
    return bool(Poly(list(reversed(coeffs)), _X, modulus=p).is_irreducible)


@dataclass(frozen=True)
class FiniteField:
    """GF(p^degree) as polynomial residues modulo ``modulus``.

    Build instances through :func:`field_make`, which validates the modulus.
    """

    p: int
    degree: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.degree

    @property
    def characteristic(self) -> int:
        return self.p

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.degree}, modulus={list(self.modulus)})"

    def __len__(self) -> int:
        return self.q

    # -- element construction --------------------------------------------

    def __call__(self, value: int | Sequence[int] | FieldElement) -> FieldElement:
        """Coerce an int (reduced mod p) or a coefficient list to an element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError(f"element of {value.field} is not in {self}")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, int(value) % self.p)
        return FieldElement(self, self.encode(value))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def generator(self) -> FieldElement:
        """The class of ``x`` (a root of the modulus); 1 for prime fields."""
        return FieldElement(self, self.p if self.degree > 1 else 1)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.q)]

    def encode(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.degree:
            raise ValueError(f"expected at most {self.degree} coefficients, got {len(coeffs)}")
        value = 0
        for c in reversed(list(coeffs)):
            c = int(c)
            if not 0 <= c < self.p:
                raise ValueError(f"coefficient {c} outside [0, {self.p})")
            value = value * self.p + c
        return value

    def decode(self, value: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.degree):
            value, c = divmod(value, self.p)
            out.append(c)
        return tuple(out)

    # -- arithmetic on encoded ints -----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.p
        p = self.p
        return self.encode([(x + y) % p for x, y in zip(self.decode(a), self.decode(b))])

    def neg(self, a: int) -> int:
        if self.degree == 1:
            return (-a) % self.p
        return self.encode([(-x) % self.p for x in self.decode(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        p = self.p
        if self.degree == 1:
            return (a * b) % p
        x, y = self.decode(a), self.decode(b)
        prod = [0] * (2 * self.degree - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] += xi * yj
        # reduce by the monic modulus from the top down
        m = self.modulus
        for k in range(len(prod) - 1, self.degree - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(self.degree):
                    prod[k - self.degree + i] -= c * m[i]
            prod[k] = 0
        return self.encode([c % p for c in prod[: self.degree]])

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = 1
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.degree == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def in_prime_subfield(self, a: int) -> bool:
        return 0 <= a < self.p

    # -- lookup tables for vectorised kernels -------------------------------

    def _require_tables(self) -> None:
        if self.q > TABLE_LIMIT:
            raise ValueError(f"vectorised kernels need q <= {TABLE_LIMIT}, got q = {self.q}")

    @cached_property
    def add_table(self) -> np.ndarray:
        self._require_tables()
        if self.degree == 1:
            r = np.arange(self.q)
            return ((r[:, None] + r[None, :]) % self.p).astype(np.int32)
        digits = np.array([self.decode(v) for v in range(self.q)], dtype=np.int64)
        s = (digits[:, None, :] + digits[None, :, :]) % self.p
        weights = self.p ** np.arange(self.degree)
        return (s @ weights).astype(np.int32)

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._require_tables()
        if self.degree == 1:
            r = np.arange(self.q)
            return ((r[:, None] * r[None, :]) % self.p).astype(np.int32)
        # via discrete logs of a primitive element
        q = self.q
        g = next(v for v in range(2, q) if self._is_primitive(v))
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            cur = self.mul(cur, g)
        exp[q - 1 :] = exp[: q - 1]
        table = np.zeros((q, q), dtype=np.int32)
        table[1:, 1:] = exp[log[1:, None] + log[None, 1:]]
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(v) for v in range(self.q)], dtype=np.int32)

    @cached_property
    def inv_table(self) -> np.ndarray:
        out = np.zeros(self.q, dtype=np.int32)
        for v in range(1, self.q):
            out[v] = self.inv(v)
        return out

    def _is_primitive(self, a: int) -> bool:
        n = self.q - 1
        for r in _prime_factors(n):
            if self.pow(a, n // r) == 1:
                return False
        return True

    def to_json(self) -> dict:
        return {"p": self.p, "degree": self.degree, "modulus": list(self.modulus)}


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.decode(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(b)))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        if not self.field.in_prime_subfield(self.value):
            raise ValueError(f"{self} is not in the prime subfield")
        return self.value

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(reversed(terms)) or "0"

    def __repr__(self) -> str:
        return f"FieldElement({list(self.coeffs)}, p={self.field.p})"


# Module-level operation aliases.
def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def _prime_factors(n: int) -> list[int]:
    from sympy import primefactors

    return list(primefactors(n))


def field_make(p: int, degree: int = 1, modulus: Sequence[int] | None = None) -> FiniteField:
    """Build GF(p^degree).

    Without ``modulus`` the lexicographically smallest monic irreducible
    polynomial (coefficient lists compared constant term first) is used.
    """
    p, degree = int(p), int(degree)
    if not isprime(p):
        raise ValueError(f"p = {p} is not prime")
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    if p**degree > MAX_ORDER:
        raise ValueError(f"q = {p}^{degree} exceeds 2^63")
    if modulus is not None:
        mod = tuple(int(c) for c in modulus)
        if len(mod) != degree + 1 or mod[-1] != 1:
            raise ValueError(f"modulus {list(mod)} is not monic of degree {degree}")
        if any(not 0 <= c < p for c in mod):
            raise ValueError(f"modulus coefficients must lie in [0, {p})")
        if not _poly_is_irreducible(mod, p):
            raise ValueError(f"modulus {list(mod)} is reducible over GF({p})")
        return FiniteField(p, degree, mod)
    for head in itertools.product(range(p), repeat=degree):
        mod = tuple(head) + (1,)
        if _poly_is_irreducible(mod, p):
            return FiniteField(p, degree, mod)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def multiplicative_order(base: int, modulus: int) -> int:
    """Least ``a > 0`` with ``base**a == 1 (mod modulus)``; 1 when modulus is 1."""
    if modulus < 1:
        raise ValueError(f"modulus must be >= 1, got {modulus}")
    if modulus == 1:
        return 1
    if math.gcd(base, modulus) != 1:
        raise ValueError(f"gcd({base}, {modulus}) != 1")
    b = base % modulus
    cur, a = b, 1
    while cur != 1:
        cur = (cur * b) % modulus
        a += 1
    return a


# -- linear algebra -----------------------------------------------------------


def _as_array(rows, field: FiniteField | None) -> tuple[np.ndarray, FiniteField]:
    if isinstance(rows, np.ndarray):
        if field is None:
            raise ValueError("field is required for encoded matrices")
        return rows.astype(np.int64, copy=True).reshape(rows.shape[0], -1), field
    rows = [list(r) for r in rows]
    if not rows:
        if field is None:
            raise ValueError("empty matrix needs an explicit field")
        return np.zeros((0, 0), dtype=np.int64), field
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    fields = {x.field for r in rows for x in r if isinstance(x, FieldElement)}
    if field is not None:
        fields.add(field)
    if len(fields) != 1:
        raise ValueError(f"matrix entries must come from one field, got {len(fields)}")
    field = fields.pop()
    data = [[field(x).value for x in r] for r in rows]
    return np.array(data, dtype=np.int64).reshape(len(rows), width), field


def row_reduce(rows, field: FiniteField | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    m, field = _as_array(rows, field)
    n_rows, n_cols = m.shape
    if field.q <= TABLE_LIMIT:
        return _row_reduce_tables(m, field)
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        k = next((k for k in range(r, n_rows) if m[k, c]), None)
        if k is None:
            continue
        m[[r, k]] = m[[k, r]]
        f = field.inv(int(m[r, c]))
        m[r] = [field.mul(f, int(x)) for x in m[r]]
        for k in range(n_rows):
            if k != r and m[k, c]:
                f = field.neg(int(m[k, c]))
                m[k] = [field.add(int(a), field.mul(f, int(b))) for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m[:r], pivots


def _row_reduce_tables(m: np.ndarray, field: FiniteField) -> tuple[np.ndarray, list[int]]:
    add_t, mul_t, neg_t, inv_t = field.add_table, field.mul_table, field.neg_table, field.inv_table
    n_rows, n_cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = mul_t[inv_t[m[r, c]], m[r]]
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            factors = neg_t[m[others, c]]
            m[others] = add_t[m[others], mul_t[factors[:, None], m[r][None, :]]]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m[:r], pivots


def matrix_rank(rows, field: FiniteField | None = None) -> int:
    """Rank of a matrix of :class:`FieldElement` rows (or encoded ints with ``field``)."""
    reduced, _ = row_reduce(rows, field)
    return reduced.shape[0]


def matmul(a: np.ndarray, b: np.ndarray, field: FiniteField) -> np.ndarray:
    """Product of two encoded matrices over ``field``."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if field.degree == 1 and field.p <= TABLE_LIMIT:
        return (a.astype(np.int64) @ b.astype(np.int64)) % field.p
    add_t, mul_t = field.add_table, field.mul_table
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for i in range(a.shape[1]):
        out = add_t[out, mul_t[a[:, i][:, None], b[i][None, :]]]
    return out


def elements_from_values(field: FiniteField, values: Iterable[int]) -> list[FieldElement]:
    return [FieldElement(field, int(v)) for v in values]
