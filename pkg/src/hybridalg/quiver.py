"""Combinatorial layer: 2-regular quivers, the permutations f and g, arrow
and vertex classification, and structural validation of presentations.

A presentation bundles a 2-regular connected quiver with a permutation ``f``
of its arrows (``source(f(a)) == target(a)``), weights ``m`` and nonzero
scalars ``c`` on the orbits of the companion permutation ``g``, a border
scalar ``b`` on each f-fixed arrow, and a set ``triangles`` of arrows that is
a union of f-orbits of length 1 or 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .paths import Path


class InputError(ValueError):
    """Malformed combinatorial input (not a semantic rule violation)."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.arrows: tuple[Arrow, ...] = tuple(
            a if isinstance(a, Arrow) else Arrow(*a) for a in arrows
        )
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise InputError("duplicate arrow names")
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex names")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise InputError(f"arrow {a.name} uses unknown vertex")
        self.arrow_source = {a.name: a.source for a in self.arrows}
        self.arrow_target = {a.name: a.target for a in self.arrows}
        self.arrows_at = {v: [] for v in self.vertices}
        self.arrows_into = {v: [] for v in self.vertices}
        for a in self.arrows:
            self.arrows_at[a.source].append(a.name)
            self.arrows_into[a.target].append(a.name)

    def arrow_names(self):
        return [a.name for a in self.arrows]

    def is_two_regular(self) -> bool:
        return all(len(self.arrows_at[v]) == 2 for v in self.vertices) and all(
            len(self.arrows_into[v]) == 2 for v in self.vertices
        )

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for a in self.arrows:
                for w in ((a.target,) if a.source == v else ()) + (
                    (a.source,) if a.target == v else ()
                ):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        return len(seen) == len(self.vertices)

    def other_arrow_at(self, arrow_name: str) -> str:
        """The bar involution: the other arrow sharing the source vertex."""
        pair = self.arrows_at[self.arrow_source[arrow_name]]
        if len(pair) != 2 or arrow_name not in pair:
            raise InputError(f"vertex of {arrow_name} is not 2-regular")
        return pair[0] if pair[1] == arrow_name else pair[1]


def orbits(perm: dict[str, str]):
    """Disjoint cycles of a permutation, each starting at its least element,
    listed by increasing least element."""
    if set(perm.keys()) != set(perm.values()):
        raise InputError("not a permutation")
    seen = set()
    cycles = []
    for start in sorted(perm):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        cycles.append(cyc)
    return cycles


def derive_g(f: dict[str, str], quiver: Quiver) -> dict[str, str]:
    """The companion permutation g(a) = bar(f(a)).

    Raises InputError naming any arrow where f breaks source/target
    compatibility.
    """
    names = set(quiver.arrow_names())
    if set(f.keys()) != names or set(f.values()) != names:
        raise InputError("f is not a permutation of the arrows")
    bad = [
        a for a in sorted(names)
        if quiver.arrow_source[f[a]] != quiver.arrow_target[a]
    ]
    if bad:
        raise InputError(
            "f violates source/target compatibility at: " + ", ".join(bad)
        )
    return {a: quiver.other_arrow_at(f[a]) for a in f}


def orbit_lookup(cycles):
    rep = {}
    length = {}
    for cyc in cycles:
        r = min(cyc)
        for a in cyc:
            rep[a] = r
            length[a] = len(cyc)
    return rep, length


class BiserialQuiverData:
    """Full input datum: quiver, f, weights, scalars, border, triangles.

    ``m`` and ``c`` may be keyed by any member of a g-orbit; they are
    normalized to the lexicographically least member.  ``triangles`` may be
    given by representatives and is closed under f.
    """

    def __init__(self, quiver: Quiver, f: dict[str, str], m: dict, c: dict,
                 b: dict | None = None, triangles=(), name: str = ""):
        self.quiver = quiver
        self.name = name
        if not quiver.is_two_regular():
            raise InputError("quiver is not 2-regular")
        # connectivity is a validation rule, not a construction requirement:
        # contractions legitimately produce disconnected presentations
        self.f = dict(f)
        self.g = derive_g(self.f, quiver)
        self.bar = {a: quiver.other_arrow_at(a) for a in quiver.arrow_names()}
        self.g_cycles = orbits(self.g)
        self.f_cycles = orbits(self.f)
        self.g_rep, self.g_orbit_len = orbit_lookup(self.g_cycles)
        self.f_rep, self.f_orbit_len = orbit_lookup(self.f_cycles)

        self.m = self._normalize_orbit_map(m, "m")
        self.c = self._normalize_orbit_map(c, "c")
        for rep, value in self.m.items():
            if int(value) != value or value < 1:
                raise InputError(f"weight m[{rep}] must be a positive integer")
        self.m = {rep: int(v) for rep, v in self.m.items()}
        for rep, value in self.c.items():
            if value == 0:
                raise InputError(f"scalar c[{rep}] must be nonzero")

        self.border_arrows = tuple(sorted(a for a in self.f if self.f[a] == a))
        self.b = {}
        for key, value in (b or {}).items():
            if key not in self.border_arrows:
                raise InputError(f"border scalar on non-f-fixed arrow {key}")
            self.b[key] = Fraction(value)
        for a in self.border_arrows:
            self.b.setdefault(a, Fraction(0))

        tri = set()
        for a in triangles:
            if a not in self.f:
                raise InputError(f"unknown arrow {a} in triangle set")
            if self.f_orbit_len[a] not in (1, 3):
                raise InputError(
                    f"arrow {a} has f-orbit of length {self.f_orbit_len[a]}, "
                    "not a triangle"
                )
            cyc = [a]
            x = self.f[a]
            while x != a:
                cyc.append(x)
                x = self.f[x]
            tri.update(cyc)
        self.triangles = frozenset(tri)

    def _normalize_orbit_map(self, mapping, label):
        out = {}
        for key, value in mapping.items():
            if key not in self.g_rep:
                raise InputError(f"unknown arrow {key} in {label}")
            rep = self.g_rep[key]
            value = Fraction(value)
            if rep in out and out[rep] != value:
                raise InputError(f"{label} is not constant on the orbit of {rep}")
            out[rep] = value
        missing = {min(cyc) for cyc in self.g_cycles} - set(out)
        if missing:
            raise InputError(f"{label} missing on orbits {sorted(missing)}")
        return out

    # per-arrow accessors -------------------------------------------------
    def weight(self, a: str) -> int:
        return self.m[self.g_rep[a]]

    def scalar(self, a: str) -> Fraction:
        return self.c[self.g_rep[a]]

    def border(self, a: str) -> Fraction:
        return self.b.get(a, Fraction(0))

    def orbit_len(self, a: str) -> int:
        return self.g_orbit_len[a]

    def cycle_degree(self, a: str) -> int:
        """m_a * n_a, the length of the socle cycle at a."""
        return self.weight(a) * self.orbit_len(a)

    def socle_cycle(self, a: str) -> Path:
        """The monomial along the g-cycle of a, of length m_a * n_a."""
        arrows = []
        x = a
        for _ in range(self.cycle_degree(a)):
            arrows.append(x)
            x = self.g[x]
        return Path(self.quiver.arrow_source[a], tuple(arrows))

    def presocle(self, a: str) -> Path:
        """The socle cycle with its last arrow dropped (length m_a*n_a - 1)."""
        full = self.socle_cycle(a)
        return Path(full.source, full.arrows[:-1])

    def vertex_kind(self, v: str) -> str:
        inside = sum(1 for a in self.quiver.arrows_at[v] if a in self.triangles)
        return ("biserial", "hybrid", "quaternion")[inside]

    def is_weighted_surface(self) -> bool:
        return self.triangles == set(self.quiver.arrow_names())


@dataclass(frozen=True)
class ArrowInfo:
    virtual: bool
    virtual_kind: str | None      # "a" or "b" when virtual
    critical: bool
    border: bool
    orbit_len: int
    cycle_degree: int
    socle_cycle: Path
    presocle: Path


class ArrowClassification:
    def __init__(self, data: BiserialQuiverData):
        self.data = data
        self.info: dict[str, ArrowInfo] = {}
        for a in data.quiver.arrow_names():
            mn = data.cycle_degree(a)
            vertex = data.quiver.arrow_source[a]
            virtual_kind = None
            if mn == 1 and data.vertex_kind(vertex) == "biserial":
                virtual_kind = "a"
            elif mn == 2 and data.bar[a] in data.triangles:
                virtual_kind = "b"
            self.info[a] = ArrowInfo(
                virtual=virtual_kind is not None,
                virtual_kind=virtual_kind,
                critical=False,
                border=data.f[a] == a,
                orbit_len=data.orbit_len(a),
                cycle_degree=mn,
                socle_cycle=data.socle_cycle(a),
                presocle=data.presocle(a),
            )
        # critical needs virtual flags of all arrows first
        for a, info in list(self.info.items()):
            critical = (
                info.cycle_degree == 3
                and a in data.triangles
                and self.info[data.f[a]].virtual
            )
            if critical:
                self.info[a] = ArrowInfo(**{**info.__dict__, "critical": True})

    def is_virtual(self, a: str) -> bool:
        return self.info[a].virtual

    def is_critical(self, a: str) -> bool:
        return self.info[a].critical

    def virtual_arrows(self):
        return sorted(a for a, i in self.info.items() if i.virtual)

    def critical_arrows(self):
        return sorted(a for a, i in self.info.items() if i.critical)


def classify_arrows(data: BiserialQuiverData) -> ArrowClassification:
    return ArrowClassification(data)


def classify_vertices(data: BiserialQuiverData) -> dict[str, str]:
    return {v: data.vertex_kind(v) for v in data.quiver.vertices}


@dataclass
class Violation:
    rule: str
    message: str


@dataclass
class ValidationReport:
    level: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self):
        return [v.rule for v in self.violations]


# rule identifiers -----------------------------------------------------------
RULE_LOCAL = "excluded-local"                 # one vertex, degenerate weights
RULE_DISC = "excluded-disc"                   # two vertices, virtual loop, light 3-cycle
RULE_ALL_VIRTUAL = "excluded-all-virtual"     # three vertices, every arrow virtual
RULE_NOT_SYMMETRIC = "not-symmetric"
RULE_NOT_FINITE = "not-finite-dimensional"
RULE_TRIANGLE_WEIGHT = "triangle-weight"      # m*n < 2 on a triangle arrow
RULE_STRUCTURE = "structure"


def validate(data: BiserialQuiverData, level: str = "structural") -> ValidationReport:
    """Check a presentation.

    ``structural`` checks the combinatorial invariants plus the shape-based
    exclusion patterns.  ``full`` additionally builds the algebra and runs
    the symmetric-form test, catching the parameter-dependent exclusions.
    """
    if level not in ("structural", "full"):
        raise InputError(f"unknown validation level {level!r}")
    report = ValidationReport(level=level)
    q = data.quiver

    if not q.is_connected():
        report.violations.append(Violation(RULE_STRUCTURE, "quiver is not connected"))
    for a in q.arrow_names():
        if data.bar[a] == a:
            report.violations.append(Violation(RULE_STRUCTURE, f"bar({a}) = {a}"))
        if data.g[a] != data.bar[data.f[a]]:
            report.violations.append(Violation(RULE_STRUCTURE, f"g != bar.f at {a}"))
    for a in data.triangles:
        if data.cycle_degree(a) < 2:
            report.violations.append(Violation(
                RULE_TRIANGLE_WEIGHT,
                f"triangle arrow {a} has m*n = {data.cycle_degree(a)} < 2",
            ))
    cls = classify_arrows(data)
    all_arrows = set(q.arrow_names())

    if len(q.vertices) == 1:
        if data.triangles == all_arrows and all(v == 1 for v in data.m.values()):
            report.violations.append(Violation(
                RULE_LOCAL, "one vertex, all arrows quaternion, weight 1"))
        if len(data.triangles) == 1:
            tri = next(iter(data.triangles))
            other = data.bar[tri]
            if data.weight(other) == 1 and data.border(other) != 0:
                report.violations.append(Violation(
                    RULE_LOCAL,
                    f"one vertex, lone triangle loop, weight 1, and {other} "
                    "squares to a nonzero socle element",
                ))
    if len(q.vertices) == 2 and data.triangles == all_arrows:
        has_virtual_loop = any(
            cls.is_virtual(a) and q.arrow_source[a] == q.arrow_target[a]
            for a in all_arrows
        )
        light_3cycle = any(
            len(cyc) == 3 and data.m[min(cyc)] == 1 for cyc in data.g_cycles
        )
        if has_virtual_loop and light_3cycle:
            report.violations.append(Violation(
                RULE_DISC, "two vertices, virtual loop, weight-1 g-3-cycle"))
    if len(q.vertices) == 3 and data.triangles == all_arrows:
        if all(cls.is_virtual(a) for a in all_arrows):
            report.violations.append(Violation(
                RULE_ALL_VIRTUAL, "three vertices with every arrow virtual"))

    if level == "full" and report.ok:
        from .algebra import NotFiniteDimensionalError, build_algebra
        from .relations import generate_relations
        try:
            alg = build_algebra(data, generate_relations(data, cls))
        except NotFiniteDimensionalError as exc:
            report.violations.append(Violation(RULE_NOT_FINITE, str(exc)))
            return report
        verdict = alg.symmetric_form_exists()
        if not verdict.symmetric:
            report.violations.append(Violation(
                RULE_NOT_SYMMETRIC, verdict.describe()))
    return report
