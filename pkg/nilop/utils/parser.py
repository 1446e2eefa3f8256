import json
import typing as tp

import numpy as np

from nilop.errors import InvalidObjectError, ParseError
from nilop.modules.pair import SubspacePair
from nilop.modules.partition import Partition
from nilop.ops import is_prime

PAIR_KEYS = ("n", "p", "lambda", "gens")


def _require_int(doc: dict[str, tp.Any], key: str) -> int:
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"'{key}' must be an integer, got {value!r}", field=key)
    return value


def pair_from_dict(doc: dict[str, tp.Any]) -> SubspacePair:
    if not isinstance(doc, dict):
        raise ParseError(f"expected a JSON object, got {type(doc).__name__}")
    missing = [k for k in PAIR_KEYS if k not in doc]
    if missing:
        raise ParseError(f"missing keys: {missing}", field=missing[0])
    extra = sorted(set(doc) - set(PAIR_KEYS) - {"par"})
    if extra:
        raise ParseError(f"unknown keys: {extra}", field=extra[0])

    n = _require_int(doc, "n")
    p = _require_int(doc, "p")
    if n < 1:
        raise ParseError(f"n must be positive, got {n}", field="n")
    if not is_prime(p):
        raise ParseError(f"p must be prime, got {p}", field="p")

    parts = doc["lambda"]
    if not isinstance(parts, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in parts):
        raise ParseError("'lambda' must be a list of integers", field="lambda")
    try:
        lam = Partition(tuple(parts))
    except InvalidObjectError as e:
        raise ParseError(str(e), field="lambda") from e
    if lam.height > n:
        raise ParseError(f"height of {lam} exceeds n = {n}", field="lambda")

    gens = doc["gens"]
    if not isinstance(gens, list):
        raise ParseError("'gens' must be a list of coefficient lists", field="gens")
    for k, row in enumerate(gens):
        if not isinstance(row, list) or len(row) != lam.size:
            raise ParseError(
                f"generator {k} must have length {lam.size}, got {row!r}", field="gens"
            )
        if not all(isinstance(x, int) and not isinstance(x, bool) and 0 <= x < p for x in row):
            raise ParseError(f"generator {k} has entries outside [0, {p})", field="gens")

    matrix = np.array(gens, dtype=np.int64).reshape(len(gens), lam.size)
    return SubspacePair(n, p, lam, matrix)


def pair_to_dict(X: SubspacePair) -> dict[str, tp.Any]:
    return {
        "n": X.n,
        "p": X.p,
        "lambda": list(X.lam),
        "gens": [[int(x) for x in row] for row in X.gens],
    }


def parse_pair(text: str) -> SubspacePair:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg} at line {e.lineno} column {e.colno}") from e
    return pair_from_dict(doc)


def serialize_pair(X: SubspacePair, **extra: tp.Any) -> str:
    """Canonical compact JSON; `extra` fields (e.g. "par") are appended after the pair keys."""
    doc = pair_to_dict(X)
    doc.update(extra)
    return json.dumps(doc, separators=(",", ":"))


def load_pair(path: str) -> SubspacePair:
    with open(path, "r", encoding="utf-8") as f:
        return parse_pair(f.read())
