"""JSON law files.

    {"n": 3, "kind": "partition",
     "entries": [{"composition": [3], "value": "1/3"}, ...]}

``kind`` is "partition" or "increment".  Values are exact rationals
written as "numerator/denominator"; integers and reducible fractions are
accepted on input and reduced.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import TextIO

from .laws import IncompleteLawError, IncrementLaw, PartitionLaw

KINDS = {"partition": PartitionLaw, "increment": IncrementLaw}


class LawFileError(ValueError):
    pass


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text, where: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise LawFileError(f"{where}: value must be a 'p/q' string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise LawFileError(f"{where}: cannot parse rational {text!r}") from None


def dumps(law) -> str:
    kind = "partition" if isinstance(law, PartitionLaw) else "increment"
    # one entry per line keeps diffs readable
    entries = ",\n".join(
        "  " + json.dumps({"composition": list(c), "value": format_rational(v)})
        for c, v in law.table.items()
    )
    return f'{{"n": {law.n}, "kind": "{kind}", "entries": [\n{entries}\n]}}\n'


def loads(text: str, fill_missing: bool = False):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise LawFileError(f"line {e.lineno}: invalid JSON: {e.msg}") from None
    if not isinstance(doc, dict):
        raise LawFileError("top level must be an object")
    for key in ("n", "kind", "entries"):
        if key not in doc:
            raise LawFileError(f"missing field {key!r}")
    n, kind, entries = doc["n"], doc["kind"], doc["entries"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise LawFileError(f"field 'n': must be a positive integer, got {n!r}")
    if kind not in KINDS:
        raise LawFileError(f"field 'kind': must be 'partition' or 'increment', got {kind!r}")
    if not isinstance(entries, list):
        raise LawFileError("field 'entries': must be a list")
    table = {}
    for i, entry in enumerate(entries):
        where = f"entries[{i}]"
        if not isinstance(entry, dict) or "composition" not in entry or "value" not in entry:
            raise LawFileError(f"{where}: needs 'composition' and 'value'")
        comp = entry["composition"]
        if not isinstance(comp, list) or not comp or any(
            isinstance(x, bool) or not isinstance(x, int) or x < 1 for x in comp
        ):
            raise LawFileError(f"{where}.composition: must be a non-empty list of positive integers")
        key = tuple(comp)
        if key in table:
            raise LawFileError(f"{where}: duplicate composition {key}")
        table[key] = parse_rational(entry["value"], f"{where}.value")
    try:
        return KINDS[kind](n, table, fill_missing=fill_missing)
    except (IncompleteLawError, ValueError) as e:
        raise LawFileError(str(e)) from None


def load(fh: TextIO, fill_missing: bool = False):
    return loads(fh.read(), fill_missing)


def dump(law, fh: TextIO) -> None:
    fh.write(dumps(law))
