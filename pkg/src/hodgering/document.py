"""JSON ring documents: exact, canonical, lossless.

A document looks like::

    {
      "schema_version": "1",
      "d": 2,
      "pieces": [{"p": 0, "q": 0, "l": 0, "dim": 1}, ...],
      "mult": [{"i": 0, "j": 3, "coeffs": [{"k": 3, "num": 1, "den": 1}]}, ...],
      "conjugation": [{"i": 1, "j": 2, "num": 1, "den": 1}, ...] or null,
      "elements": {"sigma": [{"k": 5, "num": 1, "den": 1}]},
      "flags": {"geometric": true}
    }

Basis indices are global, in the order pieces are listed by ``(l, p, q)``;
basis vector 0 is the unit.  Only products ``e_i * e_j`` with ``i <= j`` are
stored.  Conjugation triplets give the matrix entry in row ``i``, column
``j`` (column ``j`` is the image of ``e_j``).
"""

import json
from fractions import Fraction
from pathlib import Path

import jsonschema

from .errors import ParseError, SchemaVersionMismatch, ValidationFailed
from .exactla import Matrix
from .ring import DeligneSplitting, Element, HodgeRing, validate

__all__ = ["SCHEMA_VERSION", "SCHEMA", "to_document", "from_document", "dumps", "loads", "save", "load"]

SCHEMA_VERSION = "1"

_INT = {"type": "integer"}
_NAT = {"type": "integer", "minimum": 0}
_RAT = {"num": _INT, "den": {"type": "integer", "minimum": 1}}
_COEFF = {
    "type": "object",
    "properties": {"k": _NAT, **_RAT},
    "required": ["k", "num", "den"],
    "additionalProperties": False,
}

SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": {"type": "string"},
        "d": _INT,
        "pieces": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"p": _INT, "q": _INT, "l": _INT, "dim": _NAT},
                "required": ["p", "q", "l", "dim"],
                "additionalProperties": False,
            },
        },
        "mult": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"i": _NAT, "j": _NAT, "coeffs": {"type": "array", "items": _COEFF}},
                "required": ["i", "j", "coeffs"],
                "additionalProperties": False,
            },
        },
        "conjugation": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {"i": _NAT, "j": _NAT, **_RAT},
                        "required": ["i", "j", "num", "den"],
                        "additionalProperties": False,
                    },
                },
            ]
        },
        "elements": {"type": "object", "additionalProperties": {"type": "array", "items": _COEFF}},
        "flags": {
            "type": "object",
            "properties": {"geometric": {"type": "boolean"}},
            "additionalProperties": False,
        },
    },
    "required": ["schema_version", "d", "pieces", "mult"],
    "additionalProperties": False,
}


def _rat(x):
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def _coeffs(sparse):
    return [{"k": k, **_rat(v)} for k, v in sorted(sparse.items()) if v]


def to_document(ring, elements=None):
    """Canonical dict for ``ring`` and optional ``{name: Element}``."""
    sp = ring.splitting
    doc = {
        "schema_version": SCHEMA_VERSION,
        "d": ring.d,
        "pieces": [{"p": k.p, "q": k.q, "l": k.l, "dim": n} for k, n in sp.pieces.items()],
        "mult": [{"i": i, "j": j, "coeffs": _coeffs(c)} for (i, j), c in sorted(ring.mult.items()) if c],
        "conjugation": None,
        "elements": {name: _coeffs(x.sparse()) for name, x in sorted((elements or {}).items())},
        "flags": {"geometric": ring.geometric},
    }
    if ring.conjugation is not None:
        trip = []
        for i, row in enumerate(ring.conjugation.rows()):
            for j, v in sorted(row.items()):
                trip.append({"i": i, "j": j, **_rat(v)})
        doc["conjugation"] = trip
    return doc


def _frac(entry, field):
    try:
        return Fraction(entry["num"], entry["den"])
    except ZeroDivisionError:
        raise ParseError("denominator must be positive", field=field) from None


def _sparse(entries, n, field):
    out = {}
    for t, e in enumerate(entries):
        k = e["k"]
        if k >= n:
            raise ParseError(f"basis index {k} out of range for dimension {n}", field=f"{field}[{t}].k")
        if k in out:
            raise ParseError(f"basis index {k} repeated", field=f"{field}[{t}].k")
        out[k] = _frac(e, f"{field}[{t}]")
    return out


def _field_path(path):
    out = ""
    for part in path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<root>"


def from_document(doc, check=True):
    """Build ``(ring, {name: Element})`` from a parsed document.

    Raises ParseError for structural problems and ValidationFailed when the
    ring axioms fail (``check=False`` skips the latter).
    """
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"unsupported schema_version {version!r}, expected {SCHEMA_VERSION!r}", field="schema_version"
        )
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as e:
        raise ParseError(e.message, field=_field_path(e.absolute_path)) from None

    pieces = {}
    for t, e in enumerate(doc["pieces"]):
        key = (e["p"], e["q"], e["l"])
        if key in pieces:
            raise ParseError(f"piece {key} listed twice", field=f"pieces[{t}]")
        pieces[key] = e["dim"]
    try:
        splitting = DeligneSplitting(doc["d"], pieces)
    except ValueError as e:
        raise ParseError(str(e), field="pieces") from None
    n = splitting.dim

    mult = {}
    for t, e in enumerate(doc["mult"]):
        i, j = e["i"], e["j"]
        if i > j:
            raise ParseError(f"upper-triangular only: entry has i={i} > j={j}", field=f"mult[{t}]")
        if j >= n:
            raise ParseError(f"basis index {j} out of range for dimension {n}", field=f"mult[{t}].j")
        if (i, j) in mult:
            raise ParseError(f"product ({i}, {j}) listed twice", field=f"mult[{t}]")
        mult[(i, j)] = _sparse(e["coeffs"], n, f"mult[{t}].coeffs")

    conj = None
    if doc.get("conjugation") is not None:
        rows = [{} for _ in range(n)]
        for t, e in enumerate(doc["conjugation"]):
            i, j = e["i"], e["j"]
            if i >= n or j >= n:
                raise ParseError(f"entry ({i}, {j}) out of range for dimension {n}", field=f"conjugation[{t}]")
            v = _frac(e, f"conjugation[{t}]")
            if v:
                rows[i][j] = v
        conj = Matrix(n, n, rows)

    geometric = doc.get("flags", {}).get("geometric", False)
    ring = HodgeRing(splitting, mult, conjugation=conj, geometric=geometric)
    elements = {
        name: Element.from_sparse(n, _sparse(entries, n, f"elements.{name}"))
        for name, entries in doc.get("elements", {}).items()
    }
    if check:
        report = validate(ring)
        if not report.passed:
            raise ValidationFailed(report)
    return ring, elements


def dumps(ring, elements=None):
    return json.dumps(to_document(ring, elements), sort_keys=True, indent=2) + "\n"


def loads(text, check=True):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from None
    return from_document(doc, check=check)


def save(ring, path, elements=None):
    Path(path).write_text(dumps(ring, elements))


def load(path, check=True):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return loads(text, check=check)
