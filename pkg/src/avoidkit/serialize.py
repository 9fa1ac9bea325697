"""Exact text encodings shared by the JSON reports and file formats."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction


def frac_str(v) -> str:
    """Always ``num/den``, never a float (``3`` becomes ``3/1``)."""
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_frac(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def parse_int_set(text: str) -> frozenset[int]:
    """Parse ``"2,4,6"`` (braces and blanks tolerated); the empty string is the empty set."""
    body = text.strip().strip("{}").strip()
    if not body:
        return frozenset()
    try:
        return frozenset(int(tok) for tok in body.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed integer set {text!r}") from exc


def set_str(s) -> str:
    return "{" + ",".join(str(v) for v in sorted(s)) + "}"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()
