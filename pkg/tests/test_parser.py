"""
Tests for the JSON object format {"n", "p", "lambda", "gens"}.
"""

import pytest

from nilop.errors import ParseError
from nilop.modules.pair import partition_triple, picket
from nilop.utils.parser import load_pair, pair_from_dict, pair_to_dict, parse_pair, serialize_pair


def test_parse_pair():
    """A well-formed document becomes an object of S(n)."""
    X = parse_pair('{"n": 3, "p": 2, "lambda": [3, 1], "gens": [[0, 1, 0, 1]]}')
    assert X.n == 3
    assert str(partition_triple(X)) == "([2],[3,1],[2])"


def test_serialize_is_compact_and_canonical():
    """Keys in fixed order, no spaces, extras appended."""
    X = picket(1, 2, 3, 2)
    assert serialize_pair(X) == '{"n":3,"p":2,"lambda":[2],"gens":[[0,1]]}'
    assert serialize_pair(X, par="x").endswith(',"par":"x"}')
    assert pair_from_dict(pair_to_dict(X)).lam == X.lam


def test_par_field_is_accepted():
    """Output of the CLI can be read back."""
    X = parse_pair('{"n":3,"p":2,"lambda":[2],"gens":[[0,1]],"par":"([1],[2],[1])"}')
    assert X.u_dim == 1


@pytest.mark.parametrize(
    "text,field",
    [
        ('{"n": 3, "p": 2, "lambda": [2]}', "gens"),
        ('{"n": 3, "p": 2, "lambda": [2], "gens": [], "extra": 1}', "extra"),
        ('{"n": "3", "p": 2, "lambda": [2], "gens": []}', "n"),
        ('{"n": 0, "p": 2, "lambda": [], "gens": []}', "n"),
        ('{"n": 3, "p": 4, "lambda": [2], "gens": []}', "p"),
        ('{"n": 3, "p": 2, "lambda": [1, 2], "gens": []}', "lambda"),
        ('{"n": 3, "p": 2, "lambda": [4], "gens": []}', "lambda"),
        ('{"n": 3, "p": 2, "lambda": [2], "gens": [[0, 1, 0]]}', "gens"),
        ('{"n": 3, "p": 2, "lambda": [2], "gens": [[0, 2]]}', "gens"),
    ],
)
def test_parse_errors_name_the_field(text, field):
    """Malformed documents raise ParseError pointing at the offending key."""
    with pytest.raises(ParseError) as info:
        parse_pair(text)
    assert info.value.field == field


def test_invalid_json():
    """Broken JSON is a ParseError too."""
    with pytest.raises(ParseError, match="invalid JSON"):
        parse_pair("{")
    with pytest.raises(ParseError):
        parse_pair("[1, 2]")


def test_load_pair(tmp_path):
    """Objects are read from files."""
    path = tmp_path / "x.json"
    path.write_text(serialize_pair(picket(2, 3, 3, 5)))
    assert load_pair(str(path)).p == 5
