"""Text and JSON rendering of factorizations and reports.

Text form: ``u * f1 * ... * fn`` for a plain factorization and
``u * a1 * ... [ b1 * ... * bm ]`` for a U-factorization.
"""

from __future__ import annotations

import dataclasses
import json
import re

from .errors import InvalidInput
from .factor import Factorization, UFactorization

SCHEMA = 1


def format_factorization(R, F):
    return " * ".join(R.format(x) for x in (F.unit, *F.factors))


def format_u_factorization(R, UF):
    head = " * ".join(R.format(x) for x in (UF.unit, *UF.inessential))
    return f"{head} [ {' * '.join(R.format(b) for b in UF.essential)} ]"


def format_any(R, obj):
    if isinstance(obj, UFactorization):
        return format_u_factorization(R, obj)
    if isinstance(obj, Factorization):
        return format_factorization(R, obj)
    return R.format(obj)


def _terms(R, text):
    text = text.strip()
    if not text:
        return []
    # split on '*' outside parentheses; tuple literals never contain '*'
    return [R.parse_element(t) for t in text.split("*")]


def parse_factorization(R, text):
    """Inverse of the two formatters; bracketed text gives a UFactorization."""
    m = re.fullmatch(r"\s*([^\[\]]*?)\s*\[\s*([^\[\]]*?)\s*\]\s*", text)
    if m:
        head = _terms(R, m.group(1))
        ess = _terms(R, m.group(2))
        if not head or not ess:
            raise InvalidInput(f"U-factorization needs a leading unit and essential divisors: {text!r}")
        return UFactorization(head[0], tuple(head[1:]), tuple(ess))
    if "[" in text or "]" in text:
        raise InvalidInput(f"unbalanced brackets in {text!r}")
    terms = _terms(R, text)
    if not terms:
        raise InvalidInput("empty factorization")
    return Factorization(terms[0], tuple(terms[1:]))


def _key(k, R):
    if isinstance(k, str):
        return k
    return R.format(k) if R is not None else str(k)


def jsonable(obj, R=None):
    """Convert reports, dataclasses and ring values to plain JSON data."""
    if isinstance(obj, (Factorization, UFactorization)):
        out = {"unit": jsonable(obj.unit)}
        if isinstance(obj, UFactorization):
            out["inessential"] = jsonable(obj.inessential)
            out["essential"] = jsonable(obj.essential)
        else:
            out["factors"] = jsonable(obj.factors)
        if R is not None:
            out["text"] = format_any(R, obj)
        return out
    if hasattr(obj, "as_dict"):
        return jsonable(obj.as_dict(), R)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name), R) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {_key(k, R): jsonable(v, R) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v, R) for v in items]
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    return str(obj)


def document(command, payload, R=None):
    return {"schema": SCHEMA, "command": command, "result": jsonable(payload, R)}


def dumps(doc):
    return json.dumps(doc, indent=2)
