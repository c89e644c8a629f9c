from __future__ import annotations

import json

import numpy as np
import pytest

from ecid.algebra import is_idempotent
from ecid.io import dump_idempotent, load_json, parse_field, parse_group, parse_idempotent, parse_wedderburn


def test_load_json_sources(tmp_path):
    path = tmp_path / "f.json"
    path.write_text('{"p": 7}')
    assert load_json(str(path)) == {"p": 7}
    assert load_json(path) == {"p": 7}
    assert load_json('{"p": 7}') == {"p": 7}
    assert load_json({"p": 7}) == {"p": 7}
    assert load_json("A4.json")["labels"][0] == "1"
    with pytest.raises(FileNotFoundError):
        load_json("no-such-thing")
    with pytest.raises(json.JSONDecodeError):
        load_json("{bad")


def test_parse_field_variants():
    assert parse_field('{"p":3,"degree":1}').q == 3
    assert parse_field('{"q":25}').q == 25
    assert parse_field("GF25").modulus == (2, 4, 1)
    with pytest.raises(ValueError):
        parse_field('{"p":6}')


def test_parse_group_variants():
    assert parse_group('{"abelian":[2,3]}').n == 6
    assert parse_group('{"permutations":["(12)","(123)"]}').n == 6
    assert parse_group('{"cayley":[[0,1],[1,0]],"labels":["e","a"]}').labels == ["e", "a"]
    with pytest.raises(ValueError):
        parse_group('{"matrices":[]}')


def test_idempotent_round_trip(gf25, sl23, sl23_idempotents):
    for e in sl23_idempotents:
        assert is_idempotent(e)
        assert parse_idempotent(dump_idempotent(e), gf25, sl23) == e
    with pytest.raises(ValueError):
        parse_idempotent('{"coeffs":[1,2]}', gf25, sl23)
    with pytest.raises(ValueError):
        parse_idempotent('{"values":[1]}', gf25, sl23)


def test_digit_input_follows_element_order(a4, f3):
    e = parse_idempotent('{"digits":"100000000000"}', f3, a4)
    assert e.coeffs.tolist() == [1] + [0] * 11
    avg = parse_idempotent('{"average":[0]}', f3, a4)
    assert np.array_equal(avg.coeffs, e.coeffs)


def test_parse_wedderburn():
    wd = parse_wedderburn("SL23_GF25_wedderburn")
    assert wd.max_block_dim == 3 and wd.gamma == 21
