"""Text formats.

A .poset file:

    # comment
    elements: a b c
    relations: a<b b<c

Relations may be any generating set; the closure is computed on load.
Labels in files must not contain '^' or 'v', which are reserved for the
rendered meet/join labels of derived posets (programmatic labels are not
restricted; the ban only guards round-trips through files).

An .ssp file:

    field: Q            (or: field: F 5)
    poset: relative/path.poset
    dim: 3
    space a: 1,0,0 ; 0,1,0
    space b: 1/2,0,1

Omitted elements get the zero subspace; vectors are canonicalized on load
and monotonicity is validated.
"""

from __future__ import annotations

import os

from .errors import InvalidLabel, ParseError
from .linalg import Field, Subspace
from .poset import Poset
from .sspace import SSpace

RESERVED_CHARS = ("^", "v")


def _strip_comments(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def _check_file_label(label: str):
    for ch in RESERVED_CHARS:
        if ch in label:
            raise InvalidLabel(
                f"label {label!r} contains {ch!r}, reserved for derived posets")


def parse_poset(text: str) -> Poset:
    elements = None
    relations = []
    for line in _strip_comments(text):
        if line.startswith("elements:"):
            if elements is not None:
                raise ParseError("duplicate elements line")
            elements = line[len("elements:"):].split()
            for x in elements:
                _check_file_label(x)
        elif line.startswith("elements-derived:"):
            # emitted by derive --emit; rendered meet/join labels allowed
            if elements is not None:
                raise ParseError("duplicate elements line")
            elements = line[len("elements-derived:"):].split()
        elif line.startswith("relations:"):
            for token in line[len("relations:"):].split():
                if "<" not in token:
                    raise ParseError(f"bad relation token {token!r}")
                a, b = token.split("<", 1)
                relations.append((a, b))
        else:
            raise ParseError(f"unrecognized line {line!r}")
    if elements is None:
        raise ParseError("missing elements line")
    return Poset.build(elements, relations)


def format_poset(p: Poset) -> str:
    derived = any(ch in x for x in p.elements for ch in RESERVED_CHARS)
    head = "elements-derived" if derived else "elements"
    rel = " ".join(f"{a}<{b}" for a, b in p.covers())
    return f"{head}: {' '.join(p.elements)}\nrelations: {rel}\n"


def load_poset(path: str) -> Poset:
    with open(path, encoding="utf-8") as fh:
        return parse_poset(fh.read())


def save_poset(p: Poset, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_poset(p))


def _parse_field(spec: str) -> Field:
    parts = spec.split()
    if parts == ["Q"]:
        return Field.rationals()
    if len(parts) == 2 and parts[0] == "F":
        try:
            return Field.prime(int(parts[1]))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"bad field spec {spec!r}")


def format_field(field: Field) -> str:
    return "Q" if field.p is None else f"F {field.p}"


def parse_sspace(text: str, poset_loader) -> SSpace:
    """poset_loader maps the poset: path to a Poset; injected so parsing
    stays testable without touching the filesystem."""
    field = None
    poset = None
    dim = None
    raw_spaces = []
    for line in _strip_comments(text):
        if line.startswith("field:"):
            field = _parse_field(line[len("field:"):].strip())
        elif line.startswith("poset:"):
            poset = poset_loader(line[len("poset:"):].strip())
        elif line.startswith("dim:"):
            dim = int(line[len("dim:"):].strip())
        elif line.startswith("space "):
            body = line[len("space "):]
            if ":" not in body:
                raise ParseError(f"bad space line {line!r}")
            label, vectors = body.split(":", 1)
            raw_spaces.append((label.strip(), vectors.strip()))
        else:
            raise ParseError(f"unrecognized line {line!r}")
    if field is None or poset is None or dim is None:
        raise ParseError("need field:, poset:, and dim: lines")
    assign = {}
    for label, vectors in raw_spaces:
        rows = []
        if vectors:
            for vec in vectors.split(";"):
                entries = [field.parse(tok) for tok in vec.strip().split(",") if tok.strip()]
                if len(entries) != dim:
                    raise ParseError(f"vector of length {len(entries)}, dim is {dim}")
                rows.append(entries)
        assign[label] = Subspace.from_rows(field, dim, rows)
    return SSpace(poset, field, dim, assign)


def format_sspace(v: SSpace, poset_path: str) -> str:
    lines = [f"field: {format_field(v.field)}", f"poset: {poset_path}", f"dim: {v.dim}"]
    for s in v.poset.elements:
        sub = v.sub(s)
        if sub.is_zero():
            continue
        vecs = " ; ".join(",".join(v.field.format(x) for x in row)
                          for row in sub.mat.rows)
        lines.append(f"space {s}: {vecs}")
    return "\n".join(lines) + "\n"


def load_sspace(path: str) -> SSpace:
    base = os.path.dirname(os.path.abspath(path))

    def loader(rel):
        return load_poset(rel if os.path.isabs(rel) else os.path.join(base, rel))

    with open(path, encoding="utf-8") as fh:
        return parse_sspace(fh.read(), loader)


def save_sspace(v: SSpace, path: str, poset_path: str = None):
    """Write the space, and its poset next to it when no poset file is
    already referenced."""
    if poset_path is None:
        poset_path = os.path.splitext(path)[0] + ".poset"
        save_poset(v.poset, poset_path)
    rel = os.path.relpath(poset_path, os.path.dirname(os.path.abspath(path)) or ".")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_sspace(v, rel))
