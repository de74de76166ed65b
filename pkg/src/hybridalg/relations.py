"""Generators of the defining ideal of a presentation.

Kinds:
  "pair":   a*f(a), minus the quaternion tail c*presocle when a is a triangle
            (arrows with f(a) != a)
  "loop":   a^2 minus quaternion tail and/or border socle term (f-fixed a)
  "zeta":   the length-3 monomial a*f(a)*g(f(a)), unless exceptional
  "xi":     the length-3 monomial a*g(a)*f(g(a)), unless exceptional
  "socle":  c_a*socle_cycle(a) - c_bar*socle_cycle(bar a), one per vertex
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .paths import LinComb, Path
from .quiver import ArrowClassification, BiserialQuiverData


@dataclass
class Relation:
    kind: str
    anchor: str
    element: LinComb

    def __str__(self):
        return f"[{self.kind}@{self.anchor}] {self.element}"


@dataclass
class Exception2:
    """Record of a suppressed zeta/xi monomial and the witnessing arrow."""
    kind: str
    anchor: str
    witness: str
    witness_flag: str  # "virtual" or "critical"


@dataclass
class RelationSet:
    relations: list[Relation]
    exceptions: list[Exception2]

    def of_kind(self, kind: str):
        return [r for r in self.relations if r.kind == kind]

    def elements(self):
        return [r.element for r in self.relations]


def _path(data, arrows):
    src = data.quiver.arrow_source[arrows[0]]
    return Path(src, tuple(arrows))


def zeta_path(data: BiserialQuiverData, a: str) -> Path:
    fa = data.f[a]
    return _path(data, [a, fa, data.g[fa]])


def xi_path(data: BiserialQuiverData, a: str) -> Path:
    ga = data.g[a]
    return _path(data, [a, ga, data.f[ga]])


def _critical_witness_applies(data, cls, w: str) -> bool:
    # A critical witness only suppresses the zero relation when the virtual
    # arrow following it is not a loop; the loop shape only occurs on the
    # two-vertex quiver, where the explicit small-quiver analysis keeps the
    # relation.
    fw = data.f[w]
    return cls.is_critical(w) and not (
        data.quiver.arrow_source[fw] == data.quiver.arrow_target[fw]
    )


def zeta_exception(data, cls: ArrowClassification, a: str):
    """Witness arrow and flag if the zeta monomial at ``a`` is suppressed."""
    bar = data.bar[a]
    if a in data.triangles and bar in data.triangles:
        if cls.is_virtual(bar):
            return bar, "virtual"
        if _critical_witness_applies(data, cls, bar):
            return bar, "critical"
    return None


def xi_exception(data, cls: ArrowClassification, a: str):
    ga = data.g[a]
    fa = data.f[a]
    if a in data.triangles and ga in data.triangles:
        if cls.is_virtual(fa):
            return fa, "virtual"
        if _critical_witness_applies(data, cls, fa):
            return fa, "critical"
    return None


@dataclass
class SpecialPaths:
    zeta: Path
    xi: Path
    zeta_exceptional: bool
    xi_exceptional: bool
    zeta_witness: tuple[str, str] | None
    xi_witness: tuple[str, str] | None


def special_paths(data: BiserialQuiverData, cls: ArrowClassification, a: str) -> SpecialPaths:
    zw = zeta_exception(data, cls, a)
    xw = xi_exception(data, cls, a)
    return SpecialPaths(
        zeta=zeta_path(data, a),
        xi=xi_path(data, a),
        zeta_exceptional=zw is not None,
        xi_exceptional=xw is not None,
        zeta_witness=zw,
        xi_witness=xw,
    )


def generate_relations(data: BiserialQuiverData, cls: ArrowClassification | None = None) -> RelationSet:
    if cls is None:
        cls = ArrowClassification(data)
    rels: list[Relation] = []
    excs: list[Exception2] = []
    arrows = sorted(data.quiver.arrow_names())

    for a in arrows:
        fa = data.f[a]
        bar = data.bar[a]
        if fa != a:
            elem = LinComb.monomial(_path(data, [a, fa]))
            if a in data.triangles:
                elem = elem - LinComb.monomial(data.presocle(bar), data.scalar(bar))
            rels.append(Relation("pair", a, elem))
        else:
            elem = LinComb.monomial(_path(data, [a, a]))
            if a in data.triangles:
                elem = elem - LinComb.monomial(data.presocle(bar), data.scalar(bar))
            if data.border(a):
                elem = elem - LinComb.monomial(data.socle_cycle(bar), data.border(a))
            rels.append(Relation("loop", a, elem))

    for a in arrows:
        witness = zeta_exception(data, cls, a)
        if witness is None:
            rels.append(Relation("zeta", a, LinComb.monomial(zeta_path(data, a))))
        else:
            excs.append(Exception2("zeta", a, witness[0], witness[1]))
        witness = xi_exception(data, cls, a)
        if witness is None:
            rels.append(Relation("xi", a, LinComb.monomial(xi_path(data, a))))
        else:
            excs.append(Exception2("xi", a, witness[0], witness[1]))

    for v in data.quiver.vertices:
        a, bar = sorted(data.quiver.arrows_at[v])
        elem = (
            LinComb.monomial(data.socle_cycle(a), data.scalar(a))
            - LinComb.monomial(data.socle_cycle(bar), data.scalar(bar))
        )
        if elem:
            rels.append(Relation("socle", a, elem))

    return RelationSet(rels, excs)
