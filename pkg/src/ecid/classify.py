"""Decide whether a group algebra is minimal ECD / ECID.

Every verdict is backed by the list of rules that were evaluated, each with
its inputs and outcome, so that a report can be audited by hand.  All
arithmetic is on integers (``math.isqrt`` for square roots).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from sympy import factorint, totient

from .cyclotomic import qorbits
from .field import FiniteField
from .groups import Group, commutator_subgroup, conjugacy_class_count, exponent, sylow_is_cp

__all__ = [
    "MINIMAL_ECD",
    "ECID",
    "NOT_ECID",
    "UNDECIDED",
    "Rule",
    "WedderburnData",
    "ClassificationReport",
    "classify_abelian_semisimple",
    "max_minimal_ideal_dim",
    "classify_nonabelian_semisimple",
    "classify_semisimple_arithmetic",
    "classify",
    "b0",
    "ceil_sqrt_ratio",
    "wedderburn_solver",
    "modular_necessary_condition",
    "classify_modular_exhaustive",
]

MINIMAL_ECD = "minimal-ECD"
ECID = "ECID"
NOT_ECID = "not-ECID"
UNDECIDED = "undecided"
VERDICTS = (MINIMAL_ECD, ECID, NOT_ECID, UNDECIDED)


@dataclass(frozen=True)
class Rule:
    rule_id: str
    statement: str
    inputs: dict[str, Any]
    holds: bool

    def to_json(self) -> dict:
        return {"rule": self.rule_id, "statement": self.statement, "inputs": dict(self.inputs), "holds": self.holds}

    @classmethod
    def from_json(cls, d: dict) -> Rule:
        return cls(d["rule"], d["statement"], dict(d["inputs"]), bool(d["holds"]))


@dataclass
class WedderburnData:
    """Shape of a semisimple F_q H: r commutative components plus matrix
    blocks M_{n_j}(F_j) given as pairs (n_j, [F_j : F_q])."""

    r: int
    noncommutative: list[tuple[int, int]]
    source: str = "user-supplied"

    def __post_init__(self):
        self.noncommutative = [(int(n), int(d)) for n, d in self.noncommutative]
        if any(n < 2 or d < 1 for n, d in self.noncommutative):
            raise ValueError("matrix blocks need n_j >= 2 and [F_j : F_q] >= 1")
        if self.source not in ("user-supplied", "arithmetic-solver", "abelian-orbits"):
            raise ValueError(f"unknown source {self.source!r}")

    @property
    def gamma(self) -> int:
        return sum(n * n * d for n, d in self.noncommutative)

    @property
    def s(self) -> int:
        return len(self.noncommutative)

    @property
    def max_block_dim(self) -> int:
        """max n_j * [F_j : F_q] (0 when there are no matrix blocks)."""
        return max((n * d for n, d in self.noncommutative), default=0)

    @property
    def max_n(self) -> int:
        return max((n for n, _ in self.noncommutative), default=0)

    def to_json(self) -> dict:
        return {"r": self.r, "noncommutative": [list(b) for b in self.noncommutative], "source": self.source}

    @classmethod
    def from_json(cls, d: dict) -> WedderburnData:
        return cls(int(d["r"]), [tuple(b) for b in d["noncommutative"]], d.get("source", "user-supplied"))


@dataclass
class ClassificationReport:
    verdict: str
    rules_fired: list[Rule] = field(default_factory=list)
    quantities: dict[str, Any] = field(default_factory=dict)
    wedderburn: WedderburnData | None = None
    assertions: list[str] = field(default_factory=list)
    search: Any = field(default=None, repr=False, compare=False)

    @property
    def certified(self) -> bool:
        return self.verdict in (MINIMAL_ECD, ECID)

    def rule(self, rule_id: str) -> Rule | None:
        return next((r for r in self.rules_fired if r.rule_id == rule_id), None)

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "rules": [r.to_json() for r in self.rules_fired],
            "quantities": dict(self.quantities),
            "assertions": list(self.assertions),
        }
        if self.wedderburn is not None:
            out["wedderburn"] = self.wedderburn.to_json()
        return out

    @classmethod
    def from_json(cls, d: dict) -> ClassificationReport:
        wd = d.get("wedderburn")
        return cls(
            verdict=d["verdict"],
            rules_fired=[Rule.from_json(r) for r in d["rules"]],
            quantities=dict(d["quantities"]),
            wedderburn=WedderburnData.from_json(wd) if wd else None,
            assertions=list(d.get("assertions", [])),
        )


# -- integer helpers ------------------------------------------------------------


def ceil_sqrt_ratio(num: int, den: int) -> int:
    """Smallest n with n*n*den >= num, i.e. ceil(sqrt(num/den))."""
    n = math.isqrt(num // den)
    while n * n * den < num:
        n += 1
    return n


def b0(gamma: int) -> int:
    """max over f = 1..floor(gamma/4) of floor(sqrt(gamma/f)) * f."""
    if gamma < 4:
        raise ValueError(f"gamma = {gamma} < 4 leaves no room for a matrix block")
    return max(math.isqrt(gamma // f) * f for f in range(1, gamma // 4 + 1))


def wedderburn_solver(gamma: int, s: int, *, limit: int | None = None) -> list[list[int]]:
    """All multisets {n_1..n_s}, n_j >= 2, with sum n_j^2 = gamma (sorted ascending).

    ``limit`` stops the search early once that many solutions are known.
    """
    if s < 1:
        raise ValueError("s must be positive")
    out: list[list[int]] = []

    def rec(remaining: int, k: int, cap: int, acc: list[int]) -> bool:
        if k == 0:
            if remaining == 0:
                out.append(sorted(acc))
                return limit is not None and len(out) >= limit
            return False
        if remaining < 4 * k or remaining > k * cap * cap:
            return False
        top = min(cap, math.isqrt(remaining - 4 * (k - 1)))
        for n in range(top, 1, -1):
            acc.append(n)
            if rec(remaining - n * n, k - 1, n, acc):
                return True
            acc.pop()
        return False

    rec(gamma, s, math.isqrt(gamma), [])
    return sorted(out)


def _phi_product(order: int) -> int:
    return math.prod(pi ** (e - 1) * (pi - 1) for pi, e in factorint(order).items())


# -- abelian ----------------------------------------------------------------------


def classify_abelian_semisimple(g: Group, fld: FiniteField, *, splitting_index: int | None = None) -> ClassificationReport:
    """Exact verdict for abelian G with p not dividing |G|: minimal ECD iff t_w <= p.

    ``splitting_index`` optionally names an extension index t to test the
    sufficient condition "exp(G) | q^t - 1 with t <= p".
    """
    p, q = fld.p, fld.q
    data = qorbits(g, q)
    t_w = data.t_w
    exp = data.exponent
    phi_exp = int(totient(exp))
    rules = [
        Rule("orbit-size", "minimal ECD iff t_w <= p", {"t_w": t_w, "p": p}, t_w <= p),
        Rule("totient", "phi(exp(G)) <= p implies minimal ECD", {"phi_exp": phi_exp, "p": p}, phi_exp <= p),
        Rule(
            "totient-order",
            "prod p_i^(e_i-1)(p_i-1) < p over |G| implies minimal ECD",
            {"value": _phi_product(g.n), "p": p},
            _phi_product(g.n) < p,
        ),
    ]
    t = splitting_index if splitting_index is not None else t_w
    splits = pow(q, t, exp) == 1 % exp
    rules.append(
        Rule(
            "splitting-index",
            "exp(G) | q^t - 1 with t <= p implies minimal ECD",
            {"t": t, "exp": exp, "q": q, "p": p, "divides": splits},
            splits and t <= p,
        )
    )
    for r in rules[1:]:
        if r.holds and t_w > p:
            raise RuntimeError(f"sufficient rule {r.rule_id} fired but t_w = {t_w} > p = {p}")
    verdict = MINIMAL_ECD if t_w <= p else NOT_ECID
    return ClassificationReport(
        verdict,
        rules,
        {"p": p, "q": q, "order": g.n, "exp": exp, "t_w": t_w, "l": data.l, "phi_exp": phi_exp,
         "orbit_sizes": sorted(data.orbit_sizes)},
    )


def max_minimal_ideal_dim(g: Group, fld: FiniteField) -> int:
    """Largest dimension of a minimal ideal of F_q G (abelian, semisimple): t_w."""
    return qorbits(g, fld.q).t_w


# -- non-abelian semisimple --------------------------------------------------------


def classify_semisimple_arithmetic(
    order: int,
    abelianization_order: int,
    p: int,
    *,
    t_w: int | None = None,
    class_count: int | None = None,
    wedderburn: WedderburnData | None = None,
    splitting: bool = False,
    splitting_reason: str | None = None,
) -> ClassificationReport:
    """Verdict from the arithmetic invariants of a non-abelian H alone.

    ``t_w`` refers to H/H'.  ``splitting`` means F_q is known (or asserted) to
    be a splitting field for H; then t_w = 1 and every block has [F_j:F_q] = 1.
    """
    if order % p == 0:
        raise ValueError(f"p = {p} divides |H| = {order}; use the modular path")
    gamma = order - abelianization_order
    if gamma < 4:
        raise ValueError("a non-abelian group has gamma >= 4")
    if splitting:
        if t_w not in (None, 1):
            raise ValueError(f"splitting field asserted but t_w = {t_w}")
        t_w = 1
    s = class_count - abelianization_order if (class_count is not None and splitting) else None
    q_: dict[str, Any] = {"p": p, "order": order, "index_commutator": abelianization_order, "gamma": gamma,
                          "b0": b0(gamma), "floor_half_gamma": gamma // 2, "floor_sqrt_gamma": math.isqrt(gamma)}
    if t_w is not None:
        q_["t_w"] = t_w
    if s is not None:
        q_["s"] = s
        q_["ceil_sqrt_gamma_over_s"] = ceil_sqrt_ratio(gamma, s)
    rules: list[Rule] = []
    assertions = [f"splitting field: {splitting_reason}"] if splitting else []
    tw_ok = None if t_w is None else t_w <= p

    if tw_ok is False:
        rules.append(Rule("commutative-part", "t_w <= p is necessary", {"t_w": t_w, "p": p}, False))
        return ClassificationReport(NOT_ECID, rules, q_, wedderburn, assertions)

    if wedderburn is not None:
        if wedderburn.gamma != gamma:
            raise ValueError(f"Wedderburn data has sum n_j^2 d_j = {wedderburn.gamma}, expected gamma = {gamma}")
        m = wedderburn.max_block_dim
        q_["max_block_dim"] = m
        if splitting and any(d != 1 for _, d in wedderburn.noncommutative):
            raise ValueError("splitting field asserted but some [F_j : F_q] != 1")
        if not m <= b0(gamma) <= gamma // 2:
            raise RuntimeError(f"max n_j d_j = {m} violates max <= b0 <= floor(gamma/2)")
        holds = m <= p
        rules.append(Rule("wedderburn-exact", "minimal ECD iff t_w <= p and max n_j [F_j:F_q] <= p",
                          {"t_w": t_w, "max_block_dim": m, "p": p}, holds))
        if t_w is not None or not holds:
            return ClassificationReport(MINIMAL_ECD if holds else NOT_ECID, rules, q_, wedderburn, assertions)

    rules.append(Rule("gamma-bound", "t_w <= p and |H| - [H:H'] <= p imply minimal ECD",
                      {"t_w": t_w, "gamma": gamma, "p": p}, bool(tw_ok) and gamma <= p))
    rules.append(Rule("b0-bound", "t_w <= p and (b0 <= p or floor(gamma/2) <= p) imply minimal ECD",
                      {"t_w": t_w, "b0": q_["b0"], "floor_half_gamma": gamma // 2, "p": p},
                      bool(tw_ok) and (q_["b0"] <= p or gamma // 2 <= p)))
    if splitting:
        rules.append(Rule("sqrt-gamma-bound", "over a splitting field, floor(sqrt(gamma)) <= p implies minimal ECD",
                          {"floor_sqrt_gamma": math.isqrt(gamma), "p": p}, math.isqrt(gamma) <= p))
        if s is not None:
            lower = ceil_sqrt_ratio(gamma, s)
            rules.append(Rule("sqrt-gamma-over-s", "over a splitting field, ceil(sqrt(gamma/s)) > p rules out minimal ECD",
                              {"ceil_sqrt_gamma_over_s": lower, "s": s, "p": p}, lower > p))
            if lower > p:
                return ClassificationReport(NOT_ECID, rules, q_, wedderburn, assertions)
    if any(r.holds for r in rules):
        return ClassificationReport(MINIMAL_ECD, rules, q_, wedderburn, assertions)
    return ClassificationReport(UNDECIDED, rules, q_, wedderburn, assertions)


def classify_nonabelian_semisimple(
    h: Group,
    fld: FiniteField,
    wd: WedderburnData | None = None,
    *,
    assert_splitting: bool = False,
) -> ClassificationReport:
    p, q = fld.p, fld.q
    if h.n % p == 0:
        raise ValueError(f"p = {p} divides |H| = {h.n}; use classify_modular_exhaustive")
    if h.is_abelian:
        raise ValueError("group is abelian; use classify_abelian_semisimple")
    derived, quotient = commutator_subgroup(h)
    t_w = qorbits(quotient, q).t_w
    exp_h, _ = exponent(h)
    exp_ab, _ = exponent(quotient)
    necessary = (q - 1) % exp_ab == 0
    root_of_unity = (q - 1) % exp_h == 0
    splitting, reason = False, None
    if root_of_unity:
        splitting, reason = True, f"exp(H) = {exp_h} divides q - 1 = {q - 1}"
    elif assert_splitting:
        if not necessary:
            raise ValueError(f"cannot assert splitting: exp(H/H') = {exp_ab} does not divide q - 1 = {q - 1}")
        splitting, reason = True, "asserted by caller"
    classes = conjugacy_class_count(h)
    index = quotient.n
    if wd is None and splitting:
        s = classes - index
        sols = wedderburn_solver(h.n - index, s, limit=2)
        if len(sols) == 1:
            wd = WedderburnData(index, [(n, 1) for n in sols[0]], source="arithmetic-solver")
    report = classify_semisimple_arithmetic(
        h.n, index, p, t_w=t_w, class_count=classes, wedderburn=wd, splitting=splitting, splitting_reason=reason
    )
    report.quantities.update({"q": q, "t_w": t_w, "exp": exp_h, "exp_abelianization": exp_ab,
                              "commutator_order": len(derived), "class_count": classes})
    report.rules_fired.insert(0, Rule("splitting-necessary", "a splitting field contains a primitive exp(H/H')-th root of unity",
                                      {"exp_abelianization": exp_ab, "q": q}, necessary))
    return report


# -- modular -----------------------------------------------------------------------


def modular_necessary_condition(h: Group, fld: FiniteField) -> bool:
    """Sylow p-subgroups of order p; necessary for ECID when p | |H|."""
    if h.n % fld.p != 0:
        raise ValueError(f"p = {fld.p} does not divide |H| = {h.n}; the algebra is semisimple")
    return sylow_is_cp(h, fld.p)


def classify_modular_exhaustive(h: Group, fld: FiniteField, budget: int = 10**8) -> ClassificationReport:
    """ECID iff every primitive idempotent generates an ideal of dimension p,
    decided by enumerating all idempotents."""
    from .codes import idempotent_search

    p = fld.p
    sylow = modular_necessary_condition(h, fld)
    rules = [Rule("sylow-cyclic", "Sylow p-subgroups isomorphic to C_p is necessary", {"p": p, "order": h.n}, sylow)]
    quantities: dict[str, Any] = {"p": p, "q": fld.q, "order": h.n}
    if not sylow:
        return ClassificationReport(NOT_ECID, rules, quantities)
    search = idempotent_search(h, fld, budget)
    dims = search.primitive_dimensions()
    all_ecd = all(d <= p for d in dims)
    all_p = all(d == p for d in dims)
    if all_ecd != all_p:
        raise RuntimeError(f"primitive ideal dimensions {sorted(set(dims))}: ECD and dimension-p criteria disagree")
    rules.append(Rule("primitive-ecd", "every principal indecomposable has dimension <= p",
                      {"dims": sorted(set(dims)), "p": p}, all_ecd))
    rules.append(Rule("primitive-dim-p", "every primitive idempotent generates a dimension-p ideal",
                      {"dims": sorted(set(dims)), "p": p}, all_p))
    quantities.update({"idempotents": len(search.idempotents), "primitive": len(dims)})
    return ClassificationReport(ECID if all_p else NOT_ECID, rules, quantities, search=search)


def classify(h: Group, fld: FiniteField, *, wd: WedderburnData | None = None, assert_splitting: bool = False,
             budget: int = 10**8) -> ClassificationReport:
    """Dispatch on semisimplicity and commutativity."""
    if h.n % fld.p == 0:
        return classify_modular_exhaustive(h, fld, budget)
    if h.is_abelian:
        return classify_abelian_semisimple(h, fld)
    return classify_nonabelian_semisimple(h, fld, wd, assert_splitting=assert_splitting)
