"""File formats: set and structure JSON, exact rationals, DOT export.

Set file::

    {"name": "S8", "elements": ["1", "2", "3", "5", "66", "70", "255", "39270"]}

Structure file (``[a, b]`` means b covers a)::

    {"n": 3, "covers": [[0, 1], [0, 2]]}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import ValidationError
from .lcm import GcdSet, build_gcd_set
from .poset import Structure

_INT_RE = re.compile(r"[0-9]+")
_FRAC_RE = re.compile(r"(-?[0-9]+)/([0-9]+)")


def fraction_to_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def str_to_fraction(s: str) -> Fraction:
    m = _FRAC_RE.fullmatch(s)
    if not m or int(m.group(2)) == 0:
        raise ValidationError(f"not a rational of the form num/den: {s!r}")
    return Fraction(int(m.group(1)), int(m.group(2)))


def _parse_int(v: Any) -> int:
    if isinstance(v, bool):
        raise ValidationError(f"not an integer: {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str) and _INT_RE.fullmatch(v.strip()):
        return int(v)
    raise ValidationError(f"element must be a decimal string, got {v!r}")


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def set_from_json(doc: Any) -> GcdSet:
    if not isinstance(doc, dict) or not isinstance(doc.get("elements"), list):
        raise ValidationError('a set file needs an "elements" list')
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ValidationError('"name" must be a string')
    return build_gcd_set([_parse_int(v) for v in doc["elements"]], name=name)


def set_to_json(S: GcdSet) -> dict:
    out: dict = {"elements": [str(x) for x in S.elements]}
    if S.name is not None:
        out["name"] = S.name
    return out


def structure_from_json(doc: Any, raw: bool = False) -> Structure:
    """Parse a structure file; ``raw`` skips the meet-semilattice check."""
    if not isinstance(doc, dict) or "n" not in doc or not isinstance(doc.get("covers"), list):
        raise ValidationError('a structure file needs "n" and a "covers" list')
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValidationError('"n" must be an integer')
    pairs = []
    for p in doc["covers"]:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(v, int) and not isinstance(v, bool) for v in p)):
            raise ValidationError(f"cover entries must be [a, b] integer pairs, got {p!r}")
        pairs.append((p[0], p[1]))
    S = Structure.from_covers(n, pairs, require_meets=not raw)
    return S


def structure_to_json(S: Structure) -> dict:
    return S.to_json()


def load_input(path: str | Path, raw: bool = False) -> GcdSet | Structure:
    """A set file or a structure file, told apart by its keys."""
    doc = load_json(path)
    if isinstance(doc, dict) and "elements" in doc:
        return set_from_json(doc)
    return structure_from_json(doc, raw=raw)


def load_set(path: str | Path) -> GcdSet:
    doc = load_json(path)
    return set_from_json(doc)


def dumps(doc: Any) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- DOT ------------------------------------------------------------------


def to_dot(obj: GcdSet | Structure, name: str = "hasse") -> str:
    """Hasse diagram as a DOT digraph drawn bottom to top.

    Nodes are ``v0 .. v{n-1}`` in ascending order, labeled by element value
    for sets and by index for bare structures; edges run from the covered
    element to the covering one.
    """
    if isinstance(obj, GcdSet):
        order = obj.order
        labels = [str(x) for x in obj.elements]
    else:
        order = obj
        labels = [str(i) for i in range(obj.n)]
    safe = re.sub(r"[^A-Za-z0-9_]", "_", name) or "hasse"
    lines = [f"digraph {safe} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, lab in enumerate(labels):
        lines.append(f'  v{i} [label="{lab}"];')
    for a, b in sorted(order.covers):
        lines.append(f"  v{a} -> v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE_RE = re.compile(r'^\s*v([0-9]+)\s*\[label="([^"]*)"\];\s*$')
_EDGE_RE = re.compile(r"^\s*v([0-9]+)\s*->\s*v([0-9]+);\s*$")


def from_dot(text: str, require_meets: bool = True) -> tuple[Structure, list[str]]:
    """Read back what :func:`to_dot` writes: the structure and its node labels."""
    labels: dict[int, str] = {}
    edges = []
    for line in text.splitlines():
        if m := _NODE_RE.match(line):
            labels[int(m.group(1))] = m.group(2)
        elif m := _EDGE_RE.match(line):
            edges.append((int(m.group(1)), int(m.group(2))))
    n = len(labels)
    if n == 0 or sorted(labels) != list(range(n)):
        raise ValidationError("DOT text has no nodes v0..v{n-1}")
    S, order = Structure.from_covers_with_labels(n, edges, require_meets=require_meets)
    return S, [labels[old] for old in order]
