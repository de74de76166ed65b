"""Presentation file format: JSON wire format for the input data.

Document keys: "vertices" (array of strings), "arrows" (array of objects
with name/source/target), "f" (array of cycles, each an array of arrow
names), "m" (object: orbit representative -> positive integer), "c"
(object: representative -> rational), "b" (object: f-fixed arrow ->
rational), "T" (array of arrow names, expanded to f-orbits), optional
"name".  Rationals are written as strings "p/q"; plain integers are
accepted as shorthand.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .quiver import BiserialQuiverData, InputError, Quiver


class PresentationFormatError(InputError):
    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


def parse_rational(value, location=""):
    if isinstance(value, bool):
        raise PresentationFormatError("expected a rational, got a boolean",
                                      location)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise PresentationFormatError(f"bad rational {value!r}: {exc}",
                                          location)
    raise PresentationFormatError(f"expected a rational, got {value!r}",
                                  location)


def format_rational(value: Fraction):
    value = Fraction(value)
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def _expect(doc, key, kind, location):
    if key not in doc:
        raise PresentationFormatError(f"missing key {key!r}", location)
    value = doc[key]
    if not isinstance(value, kind):
        raise PresentationFormatError(
            f"key {key!r} must be {kind.__name__}", location)
    return value


def data_from_dict(doc, name="") -> BiserialQuiverData:
    where = name or "presentation"
    vertices = _expect(doc, "vertices", list, where)
    arrows_raw = _expect(doc, "arrows", list, where)
    arrows = []
    for i, entry in enumerate(arrows_raw):
        loc = f"{where}.arrows[{i}]"
        if not isinstance(entry, dict):
            raise PresentationFormatError("arrow must be an object", loc)
        for key in ("name", "source", "target"):
            if key not in entry:
                raise PresentationFormatError(f"missing {key!r}", loc)
        arrows.append((entry["name"], entry["source"], entry["target"]))
    try:
        quiver = Quiver(vertices, arrows)
    except InputError as exc:
        raise PresentationFormatError(str(exc), where)
    cycles = _expect(doc, "f", list, where)
    f = {}
    for i, cyc in enumerate(cycles):
        loc = f"{where}.f[{i}]"
        if not isinstance(cyc, list) or not cyc:
            raise PresentationFormatError("cycle must be a nonempty array", loc)
        for j, a in enumerate(cyc):
            if a in f:
                raise PresentationFormatError(f"arrow {a} repeated", loc)
            f[a] = cyc[(j + 1) % len(cyc)]
    missing = set(quiver.arrow_names()) - set(f)
    if missing:
        raise PresentationFormatError(
            f"f does not cover arrows {sorted(missing)}", where)
    m = {k: parse_rational(v, f"{where}.m[{k}]")
         for k, v in _expect(doc, "m", dict, where).items()}
    c = {k: parse_rational(v, f"{where}.c[{k}]")
         for k, v in _expect(doc, "c", dict, where).items()}
    b = {k: parse_rational(v, f"{where}.b[{k}]")
         for k, v in doc.get("b", {}).items()}
    triangles = doc.get("T", [])
    try:
        return BiserialQuiverData(quiver, f, m, c, b, triangles,
                                  name=doc.get("name", name))
    except InputError as exc:
        raise PresentationFormatError(str(exc), where)


def data_to_dict(data: BiserialQuiverData) -> dict:
    doc = {
        "vertices": list(data.quiver.vertices),
        "arrows": [
            {"name": a.name, "source": a.source, "target": a.target}
            for a in data.quiver.arrows
        ],
        "f": data.f_cycles,
        "m": {rep: int(v) for rep, v in sorted(data.m.items())},
        "c": {rep: format_rational(v) for rep, v in sorted(data.c.items())},
        "b": {a: format_rational(v) for a, v in sorted(data.b.items())},
        "T": sorted(data.triangles),
    }
    if data.name:
        doc["name"] = data.name
    return doc


def load_presentation(path) -> BiserialQuiverData:
    with open(path) as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise PresentationFormatError(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: "
                f"{exc.msg}", str(path))
    if not isinstance(doc, dict):
        raise PresentationFormatError("top level must be an object", str(path))
    return data_from_dict(doc, name=doc.get("name", ""))


def dump_presentation(data: BiserialQuiverData) -> str:
    return json.dumps(data_to_dict(data), indent=2, sort_keys=True) + "\n"
