import math

import pytest

from gsynth.errors import InputError
from gsynth.jsonio import bounds_from_json, encode, load_json, setfunc_from_json, spec_from_json
from gsynth.realize import DegreeSpec


def test_load_inline_and_file(tmp_path):
    assert load_json('{"a": 1}') == {"a": 1}
    f = tmp_path / "x.json"
    f.write_text('[1, 2]')
    assert load_json(str(f)) == [1, 2]


def test_load_error_has_position():
    with pytest.raises(InputError, match=r"line 2, column"):
        load_json('{\n  "a": }')


def test_bounds_infinities_and_nulls():
    b = bounds_from_json({"f_s": ["-inf", 1], "g_s": [None, "+inf"], "f_t": [0], "g_t": ["inf"],
                          "alpha": "−inf", "beta": None})
    assert b.f_s == (-math.inf, 1) and b.g_s == (math.inf, math.inf)
    assert b.alpha == -math.inf and b.beta == math.inf


def test_bounds_missing_vectors_default_to_unbounded():
    b = bounds_from_json({"f_s": [1, 1], "f_t": [0]})
    assert b.g_s == (math.inf, math.inf) and b.g_t == (math.inf,)


def test_bad_number():
    with pytest.raises(InputError):
        bounds_from_json({"f_s": ["x"], "f_t": [0]})


def test_spec_requires_integers():
    assert spec_from_json({"m_s": [1], "m_t": [1]}) == DegreeSpec((1,), (1,))
    with pytest.raises(InputError):
        spec_from_json({"m_s": [1.5], "m_t": [1]})


def test_setfunc_kinds():
    assert list(setfunc_from_json({"kind": "termrank", "ell": 1}, 2).table()) == [0, 0, 0, 1]
    assert list(setfunc_from_json({"kind": "forest", "m_for": [2]}).table()) == [0, 2]
    assert list(setfunc_from_json({"kind": "zero"}, 2).table()) == [0] * 4
    p = setfunc_from_json({"kind": "explicit", "t": 2, "values": {"1": 1, "2": 1, "3": 1}})
    assert list(p.table()) == [0, 1, 1, 1]
    with pytest.raises(InputError):
        setfunc_from_json({"kind": "explicit", "t": 2, "values": {"1": 1}})
    with pytest.raises(InputError):
        setfunc_from_json({"kind": "mystery"})
    with pytest.raises(InputError):
        setfunc_from_json({})


def test_encode_infinities():
    assert encode({"x": [math.inf, -math.inf, 3]}) == {"x": ["+inf", "-inf", 3]}
