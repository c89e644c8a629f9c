"""Elements of the group algebra F_q G and the left ideals they generate.

Coefficient vectors are numpy arrays of encoded field elements (see
:mod:`ecid.field`) indexed by group-element index.  Left ideals
``F_q G e = {x e}`` are used throughout; their dimension is the rank of
:func:`right_mul_matrix`.
"""

from __future__ import annotations

import warnings
from typing import Iterable, Sequence

import numpy as np

from .field import FieldElement, FiniteField, matrix_rank, row_reduce
from .groups import Group

__all__ = [
    "AlgebraElement",
    "alg_mul",
    "is_idempotent",
    "lambda1",
    "weighted_lambda1",
    "right_mul_matrix",
    "ideal_dimension",
    "dimension_formula_D",
    "hat_idempotent",
    "complement",
]


class AlgebraElement:
    """sum_g lambda_g g with coefficients in ``field``."""

    __slots__ = ("field", "group", "coeffs")

    def __init__(self, field: FiniteField, group: Group, coeffs):
        if not isinstance(coeffs, np.ndarray):
            coeffs = [field(c).value if isinstance(c, FieldElement) else c for c in coeffs]
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if coeffs.shape != (group.n,):
            raise ValueError(f"expected {group.n} coefficients, got shape {coeffs.shape}")
        if ((coeffs < 0) | (coeffs >= field.q)).any():
            raise ValueError("coefficient outside the field")
        self.field = field
        self.group = group
        self.coeffs = coeffs

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field: FiniteField, group: Group) -> AlgebraElement:
        return cls(field, group, np.zeros(group.n, dtype=np.int64))

    @classmethod
    def one(cls, field: FiniteField, group: Group) -> AlgebraElement:
        c = np.zeros(group.n, dtype=np.int64)
        c[group.identity] = 1
        return cls(field, group, c)

    @classmethod
    def from_digits(cls, field: FiniteField, group: Group, digits: str) -> AlgebraElement:
        """Compact prime-field form, e.g. ``"112201020000"``."""
        if field.degree != 1:
            raise ValueError("digit strings are only accepted over prime fields")
        digits = digits.strip()
        if len(digits) != group.n or not digits.isdigit():
            raise ValueError(f"expected {group.n} digits, got {digits!r}")
        return cls(field, group, np.array([int(ch) for ch in digits], dtype=np.int64))

    @classmethod
    def from_support(cls, field: FiniteField, group: Group, support: Iterable[int]) -> AlgebraElement:
        c = np.zeros(group.n, dtype=np.int64)
        for i in support:
            c[i] = field.add(int(c[i]), 1)
        return cls(field, group, c)

    # views --------------------------------------------------------------------

    def __getitem__(self, i: int) -> FieldElement:
        return FieldElement(self.field, int(self.coeffs[i]))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self.field, int(c)) for c in self.coeffs]

    def digits(self) -> str:
        if self.field.degree != 1 or self.field.p > 10:
            raise ValueError("digit form needs a prime field with p <= 10")
        return "".join(str(int(c)) for c in self.coeffs)

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.field == other.field and self.group is other.group and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.field, id(self.group), self.coeffs.tobytes()))

    def __repr__(self) -> str:
        terms = []
        for i in np.nonzero(self.coeffs)[0]:
            coef = FieldElement(self.field, int(self.coeffs[i]))
            if i == self.group.identity:
                terms.append(str(coef))
            elif coef.value == 1:
                terms.append(self.group.labels[i])
            else:
                terms.append(f"({coef}){self.group.labels[i]}")
        return " + ".join(terms) or "0"

    # arithmetic ---------------------------------------------------------------

    def _check(self, other: AlgebraElement) -> None:
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected AlgebraElement, got {type(other).__name__}")
        if other.field != self.field or other.group is not self.group:
            raise ValueError("algebra elements live in different group algebras")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        return AlgebraElement(self.field, self.group, _vadd(self.field, self.coeffs, other.coeffs))

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.field, self.group, _vneg(self.field, self.coeffs))

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return alg_mul(self, other)
        s = self.field(other).value
        return AlgebraElement(self.field, self.group, _vscale(self.field, s, self.coeffs))

    def __rmul__(self, other):
        s = self.field(other).value
        return AlgebraElement(self.field, self.group, _vscale(self.field, s, self.coeffs))


def _vadd(f: FiniteField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if f.degree == 1:
        return (a + b) % f.p
    return f.add_table[a, b].astype(np.int64)


def _vneg(f: FiniteField, a: np.ndarray) -> np.ndarray:
    if f.degree == 1:
        return (-a) % f.p
    return f.neg_table[a].astype(np.int64)


def _vscale(f: FiniteField, s: int, a: np.ndarray) -> np.ndarray:
    if f.degree == 1:
        return (s * a) % f.p
    return f.mul_table[s, a].astype(np.int64)


def alg_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Convolution (ab)_k = sum over g_i g_j = g_k of a_i b_j."""
    a._check(b)
    f, t = a.field, a.group.table
    acc = np.zeros(a.group.n, dtype=np.int64)
    for i in np.nonzero(a.coeffs)[0]:
        cols = t[i]
        acc[cols] = _vadd(f, acc[cols], _vscale(f, int(a.coeffs[i]), b.coeffs))
    return AlgebraElement(f, a.group, acc)


def is_idempotent(a: AlgebraElement) -> bool:
    return alg_mul(a, a) == a


def lambda1(a: AlgebraElement) -> FieldElement:
    """Coefficient of the identity."""
    return a[a.group.identity]


def weighted_lambda1(a: AlgebraElement) -> int:
    """|G| * lambda_1(a) as an integer in [0, p).

    For idempotents this always lies in the prime field.
    """
    x = lambda1(a) * (a.group.n % a.field.p)
    if not a.field.in_prime_subfield(x.value):
        raise ValueError(f"|G| * lambda_1 = {x} is not in the prime field; is the element idempotent?")
    return x.value


def right_mul_matrix(e: AlgebraElement) -> np.ndarray:
    """Matrix of x -> x e acting on row vectors: row g holds the coordinates of g e."""
    n = e.group.n
    m = np.zeros((n, n), dtype=np.int64)
    m[np.arange(n)[:, None], e.group.table] = e.coeffs[None, :]
    return m


def ideal_basis(e: AlgebraElement) -> np.ndarray:
    """Reduced row-echelon basis of the left ideal F_q G e."""
    reduced, _ = row_reduce(right_mul_matrix(e), e.field)
    return reduced


def ideal_dimension(e: AlgebraElement, *, check: bool = True) -> int:
    if check and not is_idempotent(e):
        warnings.warn("ideal_dimension called on a non-idempotent element", stacklevel=2)
    return matrix_rank(right_mul_matrix(e), e.field)


def dimension_formula_D(x: int, p: int) -> int:
    """r if r != 0 else p, where r is the least non-negative residue of x mod p."""
    r = int(x) % p
    return r if r else p


def hat_idempotent(g: Group, subgroup: Sequence[int], field: FiniteField) -> AlgebraElement:
    """(1/|S|) sum_{s in S} s for a subgroup S with p not dividing |S|."""
    subgroup = sorted(set(int(s) for s in subgroup))
    if not g.is_subgroup(subgroup):
        raise ValueError("index set is not closed under the group law")
    size = len(subgroup)
    if size % field.p == 0:
        raise ValueError(f"|S| = {size} is not invertible in characteristic {field.p}")
    c = np.zeros(g.n, dtype=np.int64)
    c[subgroup] = field.inv(size % field.p)
    return AlgebraElement(field, g, c)


def complement(e: AlgebraElement) -> AlgebraElement:
    """1 - e."""
    return AlgebraElement.one(e.field, e.group) - e
