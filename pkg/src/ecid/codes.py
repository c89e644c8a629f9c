"""Group codes generated by idempotents: dimension, distance, bounds, primitivity.

Minimum distances are exact: every codeword is enumerated (meet in the
middle over a reduced basis), guarded by a budget on ``q**dim``.  Bounds
are kept as :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np
from sympy import primefactors, totient

from .algebra import (
    AlgebraElement,
    alg_mul,
    dimension_formula_D,
    hat_idempotent,
    ideal_basis,
    lambda1,
    right_mul_matrix,
    weighted_lambda1,
)
from .cyclotomic import orbit_index
from .field import FiniteField, matmul, matrix_rank
from .groups import Group, commutator_subgroup, exponent

__all__ = [
    "BudgetExceeded",
    "Bound",
    "CodeReport",
    "IdempotentSearch",
    "PRIMITIVE",
    "NOT_PRIMITIVE",
    "UNKNOWN",
    "min_distance_exact",
    "minimum_distance",
    "abelian_bounds",
    "nonprimitivity_test_abelian",
    "dimension_congruence_set",
    "nonprimitivity_test_semisimple",
    "ecid_dimension_sum",
    "nonprimitivity_test_modular",
    "idempotent_search",
    "analyze_code",
    "subset_table",
]

DEFAULT_BUDGET = 10**8
PRIMITIVE = "primitive"
NOT_PRIMITIVE = "not-primitive"
UNKNOWN = "unknown"

_CHUNK_CELLS = 1 << 22


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Bound:
    value: Fraction
    cite: str
    requires_primitive: bool = False

    def to_json(self) -> dict:
        return {"value": str(self.value), "cite": self.cite, "requires_primitive": self.requires_primitive}

    @classmethod
    def from_json(cls, d: dict) -> Bound:
        return cls(Fraction(d["value"]), d["cite"], bool(d.get("requires_primitive", False)))


# -- exact minimum distance ------------------------------------------------------


def _span(rows: np.ndarray, field: FiniteField) -> np.ndarray:
    """All F_q-combinations of ``rows``; the zero word comes first."""
    n = rows.shape[1]
    out = np.zeros((1, n), dtype=np.int32)
    add_t, mul_t = field.add_table, field.mul_table
    for row in rows:
        scaled = mul_t[:, row]  # (q, n): c * row for every scalar c
        out = add_t[out[None, :, :], scaled[:, None, :]].reshape(-1, n)
    return out


def minimum_distance(basis: np.ndarray, field: FiniteField, budget: int = DEFAULT_BUDGET) -> int:
    """Least Hamming weight of a nonzero F_q-combination of the rows of ``basis``.

    ``basis`` must have linearly independent rows.
    """
    k, n = basis.shape
    if k == 0:
        raise ValueError("the zero code has no minimum distance")
    q = field.q
    if q**k > budget:
        raise BudgetExceeded(f"q^dim = {q}^{k} exceeds the budget {budget}")
    k1 = k // 2
    left = _span(basis[:k1], field)
    right = _span(basis[k1:], field)
    neg_left = field.neg_table[left]
    # weight(a + b) = n - #{j : b_j == -a_j}
    chunk = max(1, _CHUNK_CELLS // (right.shape[0] * n))
    best = n + 1
    for start in range(0, left.shape[0], chunk):
        block = neg_left[start : start + chunk]
        agree = (block[:, None, :] == right[None, :, :]).sum(axis=2)
        weights = n - agree
        if start == 0:
            weights[0, 0] = n + 1  # zero codeword
        best = min(best, int(weights.min()))
    return best


def min_distance_exact(e: AlgebraElement, budget: int = DEFAULT_BUDGET) -> int:
    if e.is_zero():
        raise ValueError("the zero idempotent generates the zero code")
    return minimum_distance(ideal_basis(e), e.field, budget)


# -- idempotent search -------------------------------------------------------------


def _square_batch(x: np.ndarray, group: Group, field: FiniteField) -> np.ndarray:
    t = group.table
    n = group.n
    if field.degree == 1:
        acc = np.zeros_like(x, dtype=np.int64)
        for i in range(n):
            acc[:, t[i]] += x[:, i : i + 1] * x
        return acc % field.p
    add_t, mul_t = field.add_table, field.mul_table
    acc = np.zeros_like(x)
    for i in range(n):
        cols = t[i]
        acc[:, cols] = add_t[acc[:, cols], mul_t[x[:, i : i + 1], x]]
    return acc


def left_mul_matrix(e: AlgebraElement) -> np.ndarray:
    """Matrix of x -> e x on row vectors: row g holds the coordinates of e g."""
    n = e.group.n
    m = np.zeros((n, n), dtype=np.int64)
    m[np.arange(n)[:, None], e.group.table.T] = e.coeffs[None, :]
    return m


@dataclass
class IdempotentSearch:
    field: FiniteField
    group: Group
    idempotents: list[AlgebraElement]
    primitive: list[bool]
    dims: list[int]

    def primitives(self) -> list[AlgebraElement]:
        return [e for e, flag in zip(self.idempotents, self.primitive) if flag]

    def primitive_dimensions(self) -> list[int]:
        return [d for d, flag in zip(self.dims, self.primitive) if flag]

    def dimension_of(self, e: AlgebraElement) -> int:
        return self.dims[self.idempotents.index(e)]

    def decompose(self, e: AlgebraElement) -> list[AlgebraElement]:
        """Split an idempotent into pairwise orthogonal primitive ones found by the search."""
        parts: list[AlgebraElement] = []
        rest = e
        prims = self.primitives()
        while not rest.is_zero():
            for f in prims:
                if alg_mul(f, rest) == f and alg_mul(rest, f) == f:
                    parts.append(f)
                    rest = rest - f
                    break
            else:
                raise RuntimeError(f"no primitive idempotent below {rest!r}")
        return parts


def idempotent_search(h: Group, field: FiniteField, budget: int = DEFAULT_BUDGET) -> IdempotentSearch:
    """Enumerate every element of F_q H and keep the idempotents.

    ``e`` is flagged primitive when it is nonzero and no idempotent
    ``f`` other than 0 and ``e`` satisfies ``f e = e f = f``.
    """
    n, q = h.n, field.q
    total = q**n
    if total > budget:
        raise BudgetExceeded(f"q^|H| = {q}^{n} exceeds the budget {budget}")
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    chunk = max(1, (1 << 22) // (n * n))
    found = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        x = (idx[:, None] // powers[None, :]) % q
        if field.degree > 1:
            x = x.astype(np.int32)
        sq = _square_batch(x, h, field)
        found.append(x[(sq == x).all(axis=1)].astype(np.int64))
    coeffs = np.concatenate(found)
    elems = [AlgebraElement(field, h, c) for c in coeffs]

    nonzero = coeffs.any(axis=1)
    primitive = []
    for e in elems:
        if e.is_zero():
            primitive.append(False)
            continue
        fe = matmul(coeffs, right_mul_matrix(e), field)
        ef = matmul(coeffs, left_mul_matrix(e), field)
        below = (fe == coeffs).all(axis=1) & (ef == coeffs).all(axis=1) & nonzero
        below &= ~(coeffs == e.coeffs).all(axis=1)
        primitive.append(not below.any())
    dims = [matrix_rank(right_mul_matrix(e), field) for e in elems]
    return IdempotentSearch(field, h, elems, primitive, dims)


# -- bounds and primitivity tests ------------------------------------------------------


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def abelian_bounds(g: Group, field: FiniteField, e: AlgebraElement) -> list[Bound]:
    """Lower bounds on d(F_q G e) for abelian G, p not dividing |G|.

    Bounds flagged ``requires_primitive`` hold when e is primitive.
    """
    p, q = field.p, field.q
    if g.n % p == 0:
        raise ValueError(f"p = {p} divides |G| = {g.n}")
    exp, _ = exponent(g)
    t_w = orbit_index(exp, q)
    phi_exp = int(totient(exp))
    prod = math.prod((Fraction(pi, pi - 1) for pi in primefactors(g.n)), start=Fraction(1))
    bounds = [
        Bound(prod, "prod p_i/(p_i - 1) <= |G|/t_w", requires_primitive=True),
        Bound(Fraction(g.n, t_w), "|G|/t_w <= d for minimal codes", requires_primitive=True),
    ]
    conds = []
    if t_w <= p:
        conds.append("t_w <= p")
    # smallest t with exp | q^t - 1 is t_w itself
    if pow(q, t_w, exp) == 1 % exp and t_w <= p:
        conds.append("exp(G) | q^t - 1 with t <= p")
    if phi_exp <= p:
        conds.append("phi(exp(G)) <= p")
    if conds:
        D = dimension_formula_D(weighted_lambda1(e), p)
        bounds.append(Bound(Fraction(g.n, D), f"|G|/D(|G| lambda_1) <= d [{'; '.join(conds)}]", requires_primitive=True))
        if phi_exp <= p:
            bounds.append(Bound(Fraction(g.n, p), "|G|/p <= prod p_i/(p_i - 1) [phi(exp(G)) <= p]", requires_primitive=True))
    dim = matrix_rank(right_mul_matrix(e), field) if not e.is_zero() else 0
    if dim:
        bounds.append(Bound(Fraction(g.n, dim), "|G|/dim <= d"))
    return bounds


def nonprimitivity_test_abelian(g: Group, field: FiniteField, d: int) -> str:
    """not-primitive when a code's distance is below |G|/t_w."""
    exp, _ = exponent(g)
    t_w = orbit_index(exp, field.q)
    return NOT_PRIMITIVE if d * t_w < g.n else UNKNOWN


def dimension_congruence_set(h: Group, field: FiniteField, e: AlgebraElement) -> list[tuple[int, Fraction]]:
    """Admissible dimensions r + kp of F_q H e with their distance bounds |H|/(r + kp)."""
    if e.is_zero() or e == AlgebraElement.one(field, h):
        raise ValueError("the congruence set is defined for idempotents other than 0 and 1")
    p = field.p
    r = weighted_lambda1(e)
    top = (h.n - (r + 1)) // p
    out = [(r + k * p, Fraction(h.n, r + k * p)) for k in range(0, top + 1) if r + k * p >= 1]
    if not out:
        raise ValueError(f"no admissible dimension: r = {r}, |H| = {h.n}, p = {p}")
    return out


def nonprimitivity_test_semisimple(h: Group, field: FiniteField, wd, a: int, d: int, *, t_w: int | None = None) -> str:
    """not-primitive when d < |H|/a for an a dominating every minimal-ideal dimension."""
    if h.n % field.p == 0:
        raise ValueError("the algebra is not semisimple")
    if t_w is None:
        _, quotient = commutator_subgroup(h)
        exp, _ = exponent(quotient)
        t_w = orbit_index(exp, field.q)
    need = max(t_w, wd.max_block_dim)
    if a < need:
        raise ValueError(f"a = {a} is below max(t_w, max n_j d_j) = {need}")
    return NOT_PRIMITIVE if d * a < h.n else UNKNOWN


def _require_certificate(report) -> None:
    if report is None or getattr(report, "verdict", None) not in ("ECID", "minimal-ECD"):
        raise ValueError("an ECID / minimal-ECD certificate is required")


def ecid_dimension_sum(field: FiniteField, parts: Sequence[AlgebraElement], certificate, *, cross_check: bool = True) -> tuple[int, Fraction]:
    """dim of F_q H (e_1 + ... + e_m) from the residues |H| lambda_1(e_i) alone.

    ``parts`` must be pairwise orthogonal primitive idempotents in an
    algebra certified ECID (``certificate`` is a classification report).
    """
    _require_certificate(certificate)
    if not parts:
        raise ValueError("need at least one idempotent")
    p = field.p
    for a, b in itertools.combinations(parts, 2):
        if not alg_mul(a, b).is_zero() or not alg_mul(b, a).is_zero():
            raise ValueError("idempotents are not pairwise orthogonal")
    residues = [weighted_lambda1(e) for e in parts]
    dim = sum(r for r in residues if r) + p * sum(1 for r in residues if r == 0)
    if cross_check:
        total = parts[0]
        for e in parts[1:]:
            total = total + e
        rank = matrix_rank(right_mul_matrix(total), field)
        if rank != dim:
            raise RuntimeError(f"sum formula gives {dim} but the rank is {rank}")
    return dim, Fraction(parts[0].group.n, dim)


def nonprimitivity_test_modular(h: Group, field: FiniteField, certificate, d: int) -> str:
    """In a modular ECID algebra, d < |H|/p means not primitive."""
    _require_certificate(certificate)
    if h.n % field.p != 0:
        raise ValueError("p does not divide |H|; use the semisimple test")
    return NOT_PRIMITIVE if d * field.p < h.n else UNKNOWN


# -- reports ------------------------------------------------------------------------


def _encode_element(e: AlgebraElement) -> dict:
    if e.field.degree == 1:
        return {"coeffs": [int(c) for c in e.coeffs]}
    return {"coeffs": [list(e.field.decode(int(c))) for c in e.coeffs]}


def _decode_element(d: dict, field: FiniteField, group: Group) -> AlgebraElement:
    from .io import parse_idempotent

    return parse_idempotent(d, field, group)


@dataclass
class CodeReport:
    idempotent: AlgebraElement
    dim: int
    dim_method: str
    congruence_set: list[int] | None = None
    distance: int | None = None
    bounds: list[Bound] = field(default_factory=list)
    primitivity: str = UNKNOWN
    primitivity_reason: str = ""
    lambda1: list[int] = field(default_factory=list)
    weighted_lambda1: int | None = None
    D: int | None = None

    def lower_bounds(self) -> list[Bound]:
        return [b for b in self.bounds if not b.requires_primitive or self.primitivity == PRIMITIVE]

    def to_json(self) -> dict:
        if self.distance is not None:
            dist: dict[str, Any] = {"exact": self.distance}
        else:
            dist = {"lower_bounds": [b.to_json() for b in self.lower_bounds()]}
        return {
            "idempotent": _encode_element(self.idempotent),
            "lambda1": self.lambda1,
            "weighted_lambda1": self.weighted_lambda1,
            "D": self.D,
            "dim": self.dim,
            "dim_method": self.dim_method,
            "congruence_set": self.congruence_set,
            "distance": dist,
            "bounds": [b.to_json() for b in self.bounds],
            "primitivity": {"verdict": self.primitivity, "reason": self.primitivity_reason},
        }

    @classmethod
    def from_json(cls, d: dict, field: FiniteField, group: Group) -> CodeReport:
        return cls(
            idempotent=_decode_element(d["idempotent"], field, group),
            dim=d["dim"],
            dim_method=d["dim_method"],
            congruence_set=d["congruence_set"],
            distance=d["distance"].get("exact"),
            bounds=[Bound.from_json(b) for b in d["bounds"]],
            primitivity=d["primitivity"]["verdict"],
            primitivity_reason=d["primitivity"]["reason"],
            lambda1=list(d["lambda1"]),
            weighted_lambda1=d["weighted_lambda1"],
            D=d["D"],
        )


def _primitivity(e: AlgebraElement, dim: int, d: int | None, certificate, wd) -> tuple[str, str]:
    h, field = e.group, e.field
    p = field.p
    if dim == 1:
        return PRIMITIVE, "one-dimensional ideals are minimal"
    semisimple = h.n % p != 0
    verdict = getattr(certificate, "verdict", None)
    if not semisimple and verdict == "ECID":
        if dim == p:
            return PRIMITIVE, "ECID algebra: every idempotent ideal is a sum of dimension-p pieces"
        if d is not None and nonprimitivity_test_modular(h, field, certificate, d) == NOT_PRIMITIVE:
            return NOT_PRIMITIVE, f"d = {d} < |H|/p"
        return NOT_PRIMITIVE, f"ECID algebra and dim = {dim} != p"
    if semisimple and h.is_abelian:
        if d is not None and nonprimitivity_test_abelian(h, field, d) == NOT_PRIMITIVE:
            return NOT_PRIMITIVE, f"d = {d} < |G|/t_w"
        return UNKNOWN, ""
    if semisimple and wd is not None:
        _, quotient = commutator_subgroup(h)
        exp, _ = exponent(quotient)
        t_w = orbit_index(exp, field.q)
        a = max(t_w, wd.max_block_dim)
        if d is not None and nonprimitivity_test_semisimple(h, field, wd, a, d, t_w=t_w) == NOT_PRIMITIVE:
            return NOT_PRIMITIVE, f"d = {d} < |H|/{a}"
        derived, _ = commutator_subgroup(h)
        hat = hat_idempotent(h, derived, field)
        smallest = min(n * deg for n, deg in wd.noncommutative)
        if alg_mul(e, hat).is_zero() and alg_mul(hat, e).is_zero() and dim < 2 * smallest:
            return PRIMITIVE, (f"e lies in the non-commutative part and dim = {dim} < {2 * smallest}"
                               f" (conditional on {wd.source} Wedderburn data)")
    return UNKNOWN, ""


def analyze_code(
    e: AlgebraElement,
    *,
    budget: int = DEFAULT_BUDGET,
    certificate=None,
    wedderburn=None,
) -> CodeReport:
    """Dimension, exact distance (when within budget), bounds and primitivity of F_q H e."""
    h, field = e.group, e.field
    p = field.p
    dim = matrix_rank(right_mul_matrix(e), field)
    x = weighted_lambda1(e)
    D = dimension_formula_D(x, p)
    if dim % p != x % p:
        raise RuntimeError(f"dim = {dim} is not congruent to |H| lambda_1 = {x} mod {p}")
    if dim <= p and dim != D and dim != 0:
        raise RuntimeError(f"rank dimension {dim} disagrees with D = {D}")
    congruence = None
    bounds: list[Bound] = []
    one = AlgebraElement.one(field, h)
    if not e.is_zero() and e != one:
        cands = dimension_congruence_set(h, field, e)
        congruence = [c for c, _ in cands]
        if dim not in congruence:
            raise RuntimeError(f"dimension {dim} missing from the congruence set {congruence}")
        bounds.append(Bound(min(b for _, b in cands), "|H|/(r + kp) <= d over the congruence set"))
    if dim:
        bounds.append(Bound(Fraction(h.n, dim), "|H|/dim <= d"))
    if h.n % p != 0 and h.is_abelian and not e.is_zero():
        bounds.extend(b for b in abelian_bounds(h, field, e) if b.requires_primitive)
    if certificate is not None and certificate.certified and h.n % p == 0 and not e.is_zero():
        bounds.append(Bound(Fraction(h.n, p), "|H|/p <= d in an ECID algebra", requires_primitive=True))
    distance = None
    if not e.is_zero():
        try:
            distance = min_distance_exact(e, budget)
        except BudgetExceeded:
            distance = None
    prim, reason = _primitivity(e, dim, distance, certificate, wedderburn) if not e.is_zero() else (UNKNOWN, "zero")
    report = CodeReport(
        idempotent=e,
        dim=dim,
        dim_method="rank-oracle",
        congruence_set=congruence,
        distance=distance,
        bounds=bounds,
        primitivity=prim,
        primitivity_reason=reason,
        lambda1=list(lambda1(e).coeffs),
        weighted_lambda1=x,
        D=D,
    )
    if distance is not None:
        for b in report.lower_bounds():
            if b.value > distance:
                raise RuntimeError(f"bound {b.cite} = {b.value} exceeds the exact distance {distance}")
    return report


def subset_table(idempotents: Sequence[AlgebraElement], *, budget: int = DEFAULT_BUDGET) -> list[dict]:
    """dim, |H|/dim and d for the code of every non-empty subset sum."""
    h = idempotents[0].group
    rows = []
    for size in range(1, len(idempotents) + 1):
        for subset in itertools.combinations(range(len(idempotents)), size):
            e = idempotents[subset[0]]
            for i in subset[1:]:
                e = e + idempotents[i]
            dim = matrix_rank(right_mul_matrix(e), e.field)
            try:
                d = min_distance_exact(e, budget)
            except BudgetExceeded:
                d = None
            rows.append({"subset": [i + 1 for i in subset], "dim": dim, "ratio": Fraction(h.n, dim), "distance": d})
    return rows
