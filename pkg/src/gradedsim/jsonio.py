"""JSON documents for relations, grade matrices and pseudometrics.

Every payload names its states so it can be matched against a system file.
INF is written as the string ``"inf"``; rationals as ``"p/q"`` strings.
"""

from __future__ import annotations

from .errors import ValidationError
from .grades import INF, GradeDomain, MinGradeMatrix, Pseudometric, Relation
from .systems import format_rational, load_json, parse_rational

_FIELDS = {
    "relation": {"kind", "states", "pairs"},
    "graded": {"kind", "domain", "states", "entries"},
    "pseudometric": {"kind", "states", "distances"},
}


def relation_to_doc(r: Relation, states) -> dict:
    return {"kind": "relation", "states": list(states),
            "pairs": [[states[i], states[j]] for i, j in r.pairs()]}


def grade_to_json(g, domain: GradeDomain):
    if g is INF:
        return "inf"
    return g if domain is GradeDomain.NAT else format_rational(g)


def matrix_to_doc(m: MinGradeMatrix, states) -> dict:
    return {"kind": "graded", "domain": m.domain.value, "states": list(states),
            "entries": [[grade_to_json(g, m.domain) for g in row] for row in m.entries]}


def metric_to_doc(d: Pseudometric, states) -> dict:
    return {"kind": "pseudometric", "states": list(states),
            "distances": [[format_rational(x) for x in row] for row in d.d]}


def to_doc(payload, states) -> dict:
    if isinstance(payload, Relation):
        return relation_to_doc(payload, states)
    if isinstance(payload, MinGradeMatrix):
        return matrix_to_doc(payload, states)
    if isinstance(payload, Pseudometric):
        return metric_to_doc(payload, states)
    raise TypeError(f"cannot serialise {type(payload).__name__}")


def _grade_from_json(v, domain, where):
    if v == "inf":
        return INF
    if domain is GradeDomain.NAT:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise ValidationError(f"{where}: expected a natural number or \"inf\", got {v!r}")
        return v
    q = parse_rational(v, where)
    if domain is GradeDomain.UNIT and q > 1:
        raise ValidationError(f"{where}: grade {v} exceeds 1")
    return q


def _square(doc, key, n):
    rows = doc.get(key)
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise ValidationError(f"{key!r} must be a {n}x{n} array")
    return rows


def from_doc(doc, states=None):
    """Decode a payload document; if ``states`` is given the names must match."""
    if not isinstance(doc, dict) or doc.get("kind") not in _FIELDS:
        raise ValidationError(f"payload kind must be one of {sorted(_FIELDS)}")
    kind = doc["kind"]
    if set(doc) != _FIELDS[kind]:
        raise ValidationError(f"{kind} document needs exactly the fields {sorted(_FIELDS[kind])}")
    names = doc["states"]
    if not isinstance(names, list) or not names or not all(isinstance(x, str) for x in names):
        raise ValidationError("'states' must be a non-empty list of names")
    if states is not None and list(states) != names:
        raise ValidationError(f"payload states {names} do not match system states {list(states)}")
    idx = {s: i for i, s in enumerate(names)}
    n = len(names)
    if kind == "relation":
        pairs = []
        for p in doc["pairs"]:
            if not (isinstance(p, list) and len(p) == 2 and all(x in idx for x in p)):
                raise ValidationError(f"bad pair {p!r}")
            pairs.append((idx[p[0]], idx[p[1]]))
        return Relation.from_pairs(n, pairs)
    if kind == "graded":
        try:
            domain = GradeDomain(doc["domain"])
        except ValueError:
            raise ValidationError(f"unknown grade domain {doc['domain']!r}") from None
        rows = _square(doc, "entries", n)
        return MinGradeMatrix(
            [[_grade_from_json(v, domain, f"entries[{i}][{j}]") for j, v in enumerate(row)]
             for i, row in enumerate(rows)],
            domain,
        )
    rows = _square(doc, "distances", n)
    try:
        return Pseudometric([[parse_rational(v, "distances") for v in row] for row in rows])
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def unwrap(doc):
    """Accept either a bare payload or a CLI JSON report carrying one."""
    if isinstance(doc, dict) and "payload" in doc and "verdict" in doc:
        result = doc["payload"].get("result") if isinstance(doc["payload"], dict) else None
        if result is None:
            raise ValidationError("report carries no result payload")
        return result
    return doc


def loads(text: str, states=None):
    return from_doc(unwrap(load_json(text)), states)
