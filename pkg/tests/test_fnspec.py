import json

import pytest

from cdiff.catalog import lookup
from cdiff.errors import SpecError
from cdiff.fnspec import parse_fn
from cdiff.rlnum import ANALYTIC


def test_catalog_ids_resolve():
    assert parse_fn("abs1") is lookup("abs1")
    assert parse_fn(' {"id": "poly3"} ') is lookup("poly3")
    assert parse_fn("abs1", 0.0) is lookup("abs1")


def test_constructed_forms():
    power = parse_fn('{"type": "power", "mu": 1}')
    assert power.id == "pow_1"
    assert power.handle.smoothness_k == ANALYTIC

    poly = parse_fn('{"type": "poly", "coefficients": [0, 0, 1], "domain": [0, 6]}')
    assert poly.handle.domain == (0.0, 6.0)
    assert poly.class_k == 2

    kink = parse_fn('{"type": "abspow", "n": 1, "poly": [1, 1], "a": 1, "id": "shifted"}')
    assert kink.id == "shifted"
    assert kink.handle.base_point == 1.0
    assert kink.handle.domain == (0.0, 3.0)
    assert kink.handle.jet == (1.0, 1.0)

    wave = parse_fn('{"type": "sin"}', a=0.5)
    assert wave.handle.base_point == 0.5
    assert wave.handle.domain == (-0.5, 2.5)


def test_spec_from_file(tmp_path):
    path = tmp_path / "fn.json"
    path.write_text(json.dumps({"type": "power", "mu": 1.5}), encoding="utf-8")
    entry = parse_fn(f"@{path}")
    assert entry.handle.smoothness_k == 1
    with pytest.raises(SpecError):
        parse_fn(f"@{tmp_path / 'missing.json'}")


@pytest.mark.parametrize(
    "text, where",
    [
        ('{"type": ', "line 1 column"),
        ("[1, 2]", "line 1 column 1"),
        ('{"type": "power"}', "field 'mu'"),
        ('{"type": "power", "mu": 1, "nu": 2}', "field 'nu'"),
        ('{"type": "cos"}', "field 'type'"),
        ('{"type": "power", "mu": true}', "field 'mu'"),
        ('{"type": "abspow", "n": 1.5}', "field 'n'"),
        ('{"type": "sin", "domain": [0, 1, 2]}', "field 'domain'"),
        ('{"type": "poly", "coefficients": "1,2"}', "field 'coefficients'"),
        ('{"type": "power", "mu": 0.5, "domain": [-1, 1]}', "--fn"),
        ("nope", "--fn"),
    ],
)
def test_malformed_specs_name_the_fault(text, where):
    with pytest.raises(SpecError) as info:
        parse_fn(text)
    assert where in str(info.value)


def test_catalog_entries_keep_their_base_point():
    with pytest.raises(SpecError) as info:
        parse_fn("abs1", 1.0)
    assert info.value.where == "--a"
