"""JSON formats for fields, groups, idempotents and Wedderburn data.

Every loader accepts a parsed dict, a JSON string, a path to a JSON file,
or the name of a bundled data file (``"A4"``, ``"SL23"``, ...).
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import AlgebraElement
from .classify import WedderburnData
from .cyclotomic import prime_power
from .field import FiniteField, field_make
from .groups import Group, group_abelian, group_from_cayley, group_from_permutations

__all__ = [
    "load_json",
    "parse_field",
    "parse_group",
    "parse_idempotent",
    "parse_wedderburn",
    "dump_idempotent",
    "bundled",
]


def bundled(name: str) -> Path:
    """Path of a data file shipped with the package."""
    stem = name[:-5] if name.endswith(".json") else name
    return Path(str(resources.files("ecid") / "data" / f"{stem}.json"))


def load_json(source: Any) -> Any:
    if isinstance(source, (dict, list)):
        return source
    if isinstance(source, Path):
        return json.loads(source.read_text())
    text = str(source).strip()
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    path = Path(text)
    if path.exists():
        return json.loads(path.read_text())
    data = bundled(text)
    if data.exists():
        return json.loads(data.read_text())
    raise FileNotFoundError(f"no JSON text, file or bundled data named {text!r}")


def parse_field(source: Any) -> FiniteField:
    d = load_json(source)
    if "p" not in d and "q" in d:
        p, a = prime_power(int(d["q"]))
        return field_make(p, a, d.get("modulus"))
    return field_make(int(d["p"]), int(d.get("degree", 1)), d.get("modulus"))


def parse_group(source: Any) -> Group:
    d = load_json(source)
    if "abelian" in d:
        return group_abelian(d["abelian"])
    if "permutations" in d:
        return group_from_permutations(d["permutations"], elements=d.get("elements"), cap=int(d.get("cap", 10_000)))
    if "cayley" in d:
        return group_from_cayley(d["cayley"], d.get("labels"))
    raise ValueError("group JSON needs one of 'abelian', 'permutations', 'cayley'")


def _field_value(field: FiniteField, c) -> int:
    if isinstance(c, list):
        return field.encode(c)
    return int(c) % field.p if field.degree == 1 else field.encode([int(c)])


def parse_idempotent(source: Any, field: FiniteField, group: Group) -> AlgebraElement:
    d = load_json(source)
    if "digits" in d:
        return AlgebraElement.from_digits(field, group, d["digits"])
    if "coeffs" in d:
        coeffs = d["coeffs"]
        if len(coeffs) != group.n:
            raise ValueError(f"expected {group.n} coefficients, got {len(coeffs)}")
        return AlgebraElement(field, group, np.array([_field_value(field, c) for c in coeffs], dtype=np.int64))
    if "average" in d:
        from .algebra import hat_idempotent

        subgroup = list(range(group.n)) if d["average"] == "all" else [int(i) for i in d["average"]]
        return hat_idempotent(group, subgroup, field)
    raise ValueError("idempotent JSON needs 'coeffs', 'digits' or 'average'")


def dump_idempotent(e: AlgebraElement) -> dict:
    if e.field.degree == 1:
        return {"coeffs": [int(c) for c in e.coeffs]}
    return {"coeffs": [list(e.field.decode(int(c))) for c in e.coeffs]}


def parse_wedderburn(source: Any) -> WedderburnData:
    return WedderburnData.from_json(load_json(source))
