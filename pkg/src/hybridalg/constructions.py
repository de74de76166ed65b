"""Splitting a presentation into a triangulation quiver (the star
construction), contracting an algebra onto a vertex subset (idempotent
algebra), and the round-trip verifier combining the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra import FiniteDimAlgebra, build_algebra
from .paths import LinComb, Path
from .quiver import (BiserialQuiverData, InputError, Quiver,
                     classify_arrows, validate)
from .relations import generate_relations


class ContractionError(RuntimeError):
    """The correction search failed; the input is outside the known cases."""


# -- star construction -------------------------------------------------------

@dataclass
class StarResult:
    data: BiserialQuiverData
    split: dict            # arrow not in T -> (first, second, eps, new vertex)
    eps_weights: dict      # eps-orbit representative -> chosen weight
    eps_scalars: dict      # eps-orbit representative -> chosen scalar
    calibrated: dict = field(default_factory=dict)  # loop arrow -> border target


def _fresh(name, taken):
    candidate = name
    while candidate in taken:
        candidate += "_"
    taken.add(candidate)
    return candidate


def star(data: BiserialQuiverData,
         eps_scalars: dict | None = None) -> StarResult:
    """Split every non-triangle arrow through a new vertex, closing each
    split with an extra arrow so that all f-orbits become triangles.

    ``eps_scalars`` optionally pins the scalar on chosen eps-orbits (keyed by
    the split arrow's name); used by the round-trip calibration.
    """
    q = data.quiver
    outside = [a for a in q.arrow_names() if a not in data.triangles]
    taken = set(q.vertices) | set(q.arrow_names())
    new_vertex = {}
    for a in outside:
        new_vertex[a] = _fresh(f"x_{a}", taken)
    split = {}
    arrows = []
    for arr in q.arrows:
        if arr.name in data.triangles:
            arrows.append((arr.name, arr.source, arr.target))
    for a in outside:
        first = _fresh(f"{a}'", taken)
        second = _fresh(f"{a}''", taken)
        eps = _fresh(f"e_{a}", taken)
        split[a] = (first, second, eps, new_vertex[a])
        arrows.append((first, q.arrow_source[a], new_vertex[a]))
        arrows.append((second, new_vertex[a], q.arrow_target[a]))
    for a in outside:
        eps = split[a][2]
        arrows.append((eps, new_vertex[data.f[a]], new_vertex[a]))
    quiver = Quiver(list(q.vertices) + [new_vertex[a] for a in outside], arrows)

    fstar = {}
    for a in data.triangles:
        fstar[a] = data.f[a]
    for a in outside:
        first, second, eps, _ = split[a]
        fa = data.f[a]
        fstar[second] = split[fa][0]
        fstar[split[fa][0]] = eps
        fstar[eps] = second
    # weights and scalars, keyed per g*-orbit via original arrows
    mstar = {}
    cstar = {}
    for a in data.triangles:
        mstar[a] = data.weight(a)
        cstar[a] = data.scalar(a)
    for a in outside:
        first, second, eps, _ = split[a]
        mstar[first] = data.weight(a)
        cstar[first] = data.scalar(a)
        mstar[second] = data.weight(a)
        cstar[second] = data.scalar(a)
    eps_weights = {}
    eps_given = dict(eps_scalars or {})
    eps_chosen = {}
    calibrated = {}
    seen = set()
    for a in outside:
        if a in seen:
            continue
        orbit = [a]
        x = data.f[a]
        while x != a:
            orbit.append(x)
            x = data.f[x]
        seen.update(orbit)
        r = len(orbit)
        loop_border = (r == 1 and q.arrow_source[a] == q.arrow_target[a]
                       and data.border(a) != 0)
        if loop_border:
            # a virtual closing arrow reproduces the nonzero border square;
            # the scalar is calibrated by the round trip
            weight = 2
            calibrated[a] = data.border(a)
        else:
            weight = 1
            while weight * r < 4:
                weight += 1
        scalar = eps_given.get(a, Fraction(1))
        for b in orbit:
            eps = split[b][2]
            mstar[eps] = weight
            cstar[eps] = scalar
        eps_weights[a] = weight
        eps_chosen[a] = scalar
    bstar = {a: data.border(a) for a in data.triangles if data.f[a] == a}
    sdata = BiserialQuiverData(
        quiver, fstar, mstar, cstar, bstar,
        triangles=list(quiver.arrow_names()),
        name=(data.name + "*") if data.name else "star",
    )
    return StarResult(sdata, split, eps_weights, eps_chosen, calibrated)


# -- idempotent contraction ---------------------------------------------------

@dataclass
class TildeArrow:
    name: str
    arrows: tuple          # underlying path along the g-cycle
    source: str
    target: str


@dataclass
class ContractionResult:
    gamma: tuple
    data: BiserialQuiverData            # whole contraction (may be disconnected)
    blocks: list                        # list of BiserialQuiverData
    tilde_arrows: dict                  # name -> TildeArrow
    embedding: dict                     # name -> algebra coords in the parent
    border_measured: dict               # loop name -> scalar
    corrections: dict                   # name -> (monomial Path, scalar)
    verification: "ContractionVerification"


@dataclass
class ContractionVerification:
    relations_checked: int
    failures: list
    block_dims: list                    # per block: dict vertex -> dim
    subalgebra_dim: int

    @property
    def ok(self):
        return not self.failures and sum(
            sum(d.values()) for d in self.block_dims) == self.subalgebra_dim


def _tilde_skeleton(data: BiserialQuiverData, gamma):
    """Contraction combinatorics: tilde arrows, f, T, weights."""
    q = data.quiver
    inside = set(gamma)
    tilde = {}
    for i in gamma:
        for a in q.arrows_at[i]:
            arrows = [a]
            x = a
            while q.arrow_target[x] not in inside:
                x = data.g[x]
                arrows.append(x)
            name = a if len(arrows) == 1 else a + "~"
            tilde[a] = TildeArrow(name, tuple(arrows), i, q.arrow_target[x])
    by_first = {a: t for a, t in tilde.items()}
    f_tilde = {}
    g_tilde = {}
    for a, t in tilde.items():
        last = t.arrows[-1]
        f_tilde[t.name] = by_first[data.f[last]].name
        g_tilde[t.name] = by_first[data.g[last]].name
    triangles = set()
    for a, t in tilde.items():
        if (len(t.arrows) == 1 and a in data.triangles
                and len(tilde[data.f[a]].arrows) == 1):
            # unsplit triangle arrows with unsplit successor; closure under
            # f_tilde follows because triangle f-orbits have length 1 or 3
            triangles.add(t.name)
    return tilde, f_tilde, g_tilde, triangles


def contract(alg: FiniteDimAlgebra, gamma) -> ContractionResult:
    data = alg.data
    q = data.quiver
    gamma = tuple(dict.fromkeys(gamma))
    if not gamma:
        raise InputError("vertex subset is empty")
    for v in gamma:
        if v not in q.vertices:
            raise InputError(f"unknown vertex {v}")
    tilde, f_tilde, g_tilde, triangles = _tilde_skeleton(data, gamma)
    quiver = Quiver(gamma, [(t.name, t.source, t.target)
                            for _, t in sorted(tilde.items())])
    m_t = {}
    c_t = {}
    for a, t in tilde.items():
        m_t[t.name] = data.weight(a)
        c_t[t.name] = data.scalar(a)
    embedding = {t.name: alg.nf_path(t.arrows) for t in tilde.values()}
    for name, coords in embedding.items():
        if not coords:
            raise ContractionError(f"tilde arrow {name} vanishes in the algebra")

    # correction terms: each f-tilde-consecutive product must either vanish
    # (biserial pairs) or equal the scalar multiple of the companion's
    # presocle monomial (triangle pairs).  A nonzero residual is removed by
    # shifting one of the two arrows by a parallel basis monomial; shifts
    # interact, so the whole system is iterated to a fixed point.
    names = {t.name: t for t in tilde.values()}
    bar_t = {}
    for name, t in names.items():
        bar_t[name] = next(nm for nm, tt in sorted(names.items())
                           if tt.source == t.source and nm != name)
    corrections = {}
    border_measured = {}
    order = sorted(names)
    pairs = [name for name in order if f_tilde[name] != name]

    def residual(name):
        succ = f_tilde[name]
        rho = alg.mult(embedding[name], embedding[succ])
        if name in triangles:
            bar = bar_t[name]
            tail = _embedded_socle_cycle(alg, names, embedding, g_tilde,
                                         m_t, bar, trim=1)
            rho = linalg.vec_add(rho, tail, -c_t[bar])
        return rho

    def shift(arrow_name, rho, left_coords):
        """Find x parallel to the arrow with left_coords * x proportional to
        rho, and subtract; returns True on success."""
        t_arr = names[arrow_name]
        for pos in range(alg.dim):
            p = alg.basis_path(pos)
            if (not p.arrows
                    or p.source != t_arr.source
                    or alg.basis_target(pos) != t_arr.target
                    or p.arrows == t_arr.arrows):
                continue
            image = (alg.mult(left_coords, {pos: Fraction(1)})
                     if left_coords is not None else {pos: Fraction(1)})
            mu = _proportion(rho, image)
            if mu is not None:
                corrections.setdefault(arrow_name, []).append(
                    (alg.basis_path(pos), mu))
                embedding[arrow_name] = linalg.vec_add(
                    embedding[arrow_name], {pos: Fraction(1)}, -mu)
                return True
        return False

    for _ in range(2 * len(pairs) + 2):
        dirty = False
        stuck = []
        for name in pairs:
            rho = residual(name)
            if not rho:
                continue
            succ = f_tilde[name]
            # shift the successor against the fixed left factor, else shift
            # the left factor against the fixed right one
            if shift(succ, rho, embedding[name]):
                dirty = True
                continue
            fixed_right = embedding[succ]
            done = False
            for pos in range(alg.dim):
                p = alg.basis_path(pos)
                t_arr = names[name]
                if (not p.arrows
                        or p.source != t_arr.source
                        or alg.basis_target(pos) != t_arr.target
                        or p.arrows == t_arr.arrows):
                    continue
                image = alg.mult({pos: Fraction(1)}, fixed_right)
                mu = _proportion(rho, image)
                if mu is not None:
                    corrections.setdefault(name, []).append(
                        (alg.basis_path(pos), mu))
                    embedding[name] = linalg.vec_add(
                        embedding[name], {pos: Fraction(1)}, -mu)
                    done = dirty = True
                    break
            if not done:
                stuck.append(name)
        if not dirty:
            if stuck:
                raise ContractionError(
                    "no correction found for " +
                    ", ".join(f"{a}*{f_tilde[a]}" for a in stuck))
            break
    else:
        raise ContractionError("correction passes did not stabilize")

    # corrections that subtract a parallel arrow change the embedded socle
    # cycles at top order, so orbit scalars on corrected orbits are resolved
    # from the per-vertex socle identities, anchored at untouched orbits
    _resolve_orbit_scalars(alg, names, embedding, g_tilde, m_t, c_t, bar_t,
                           corrections)

    # border scalars for f-tilde-fixed loops: the square (minus the
    # quaternion tail for triangle loops) must be a multiple of the embedded
    # socle cycle of the companion arrow; corrections can shift the scalar,
    # so it is measured rather than inherited
    b_t = {}
    for name in order:
        if f_tilde[name] != name:
            continue
        rho = residual(name)
        if not rho:
            b_t[name] = Fraction(0)
            continue
        target = _embedded_socle_cycle(alg, names, embedding, g_tilde, m_t,
                                       bar_t[name])
        mu = _proportion(rho, target)
        if mu is None:
            raise ContractionError(
                f"border square of {name} is not a socle multiple")
        b_t[name] = mu
        border_measured[name] = mu

    whole = BiserialQuiverData(quiver, f_tilde, m_t, c_t, b_t,
                               triangles=sorted(triangles),
                               name=(data.name + f"/e[{','.join(gamma)}]"
                                     if data.name else "contraction"))
    blocks = _split_components(whole)
    verification = _verify_contraction(alg, whole, blocks, names, embedding,
                                       gamma)
    return ContractionResult(gamma, whole, blocks, names, embedding,
                             border_measured, corrections, verification)


def _proportion(vec, image):
    """mu with vec == mu * image, or None."""
    if not image:
        return None
    pos = next(iter(image))
    if pos not in vec:
        return None
    mu = vec[pos] / image[pos]
    if linalg.vec_add(vec, image, -mu):
        return None
    return mu


def _resolve_orbit_scalars(alg, names, embedding, g_tilde, m_t, c_t, bar_t,
                           corrections):
    orbit_rep = {}
    for name in names:
        if name in orbit_rep:
            continue
        orbit = [name]
        x = g_tilde[name]
        while x != name:
            orbit.append(x)
            x = g_tilde[x]
        rep = min(orbit)
        for member in orbit:
            orbit_rep[member] = rep
    touched = {orbit_rep[name] for name in corrections}
    if not touched:
        return
    fixed = {rep for rep in set(orbit_rep.values()) if rep not in touched}
    pending = set(touched)
    for _ in range(len(pending) + 1):
        progressed = False
        for name in sorted(names):
            rep = orbit_rep[name]
            bar = bar_t[name]
            rep_bar = orbit_rep[bar]
            if (rep in pending) == (rep_bar in pending):
                continue
            known, unknown = (bar, name) if rep in pending else (name, bar)
            b_known = _embedded_socle_cycle(alg, names, embedding, g_tilde,
                                            m_t, known)
            b_unknown = _embedded_socle_cycle(alg, names, embedding, g_tilde,
                                              m_t, unknown)
            mu = _proportion(b_known, b_unknown)
            if mu is None:
                continue
            # c_known * B_known = c_unknown * B_unknown
            c_t[orbit_rep[unknown]] = c_t[orbit_rep[known]] * mu
            for member, r in orbit_rep.items():
                if r == orbit_rep[unknown]:
                    c_t[member] = c_t[orbit_rep[unknown]]
            pending.discard(orbit_rep[unknown])
            progressed = True
        if not pending or not progressed:
            break


def _embedded_socle_cycle(alg, names, embedding, g_tilde, m_t, start, trim=0):
    """Embedded monomial along the tilde-g-cycle of ``start`` (the socle
    cycle; with trim=1, its length-minus-one prefix)."""
    coords = alg.unit_coords(names[start].source)
    steps = m_t[start] * _orbit_len(g_tilde, start) - trim
    x = start
    for _ in range(steps):
        coords = alg.mult(coords, embedding[x])
        x = g_tilde[x]
    return coords


def _orbit_len(perm, a):
    n = 1
    x = perm[a]
    while x != a:
        n += 1
        x = perm[x]
    return n


def _split_components(data: BiserialQuiverData):
    q = data.quiver
    parent = {v: v for v in q.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for arr in q.arrows:
        ra, rb = find(arr.source), find(arr.target)
        if ra != rb:
            parent[ra] = rb
    groups = {}
    for v in q.vertices:
        groups.setdefault(find(v), []).append(v)
    if len(groups) == 1:
        return [data]
    blocks = []
    for verts in sorted(groups.values(), key=lambda g: g[0]):
        inside = set(verts)
        arrows = [a.name for a in q.arrows if a.source in inside]
        sub_quiver = Quiver(verts, [(a.name, a.source, a.target)
                                    for a in q.arrows if a.source in inside])
        f_sub = {a: data.f[a] for a in arrows}
        m_sub = {a: data.weight(a) for a in arrows}
        c_sub = {a: data.scalar(a) for a in arrows}
        b_sub = {a: data.border(a) for a in arrows if data.f[a] == a}
        blocks.append(BiserialQuiverData(
            sub_quiver, f_sub, m_sub, c_sub, b_sub,
            triangles=[a for a in arrows if a in data.triangles],
            name=data.name + f"#{verts[0]}"))
    return blocks


def _verify_contraction(alg, whole, blocks, names, embedding, gamma):
    failures = []
    checked = 0
    for block in blocks:
        rels = generate_relations(block)
        for rel in rels.relations:
            checked += 1
            total = {}
            for path, coeff in rel.element.terms.items():
                coords = alg.unit_coords(path.source)
                for a in path.arrows:
                    coords = alg.mult(coords, embedding[a])
                total = linalg.vec_add(total, coords, coeff)
            if total:
                failures.append(
                    f"{block.name}: relation {rel} embeds to "
                    f"{alg.coords_to_lincomb(total)}")
    inside = set(gamma)
    sub_dim = sum(
        1 for k in range(alg.dim)
        if alg.basis_source(k) in inside and alg.basis_target(k) in inside
    )
    block_dims = []
    for block in blocks:
        balg = build_algebra(block)
        block_dims.append(balg.dimension_vector())
    return ContractionVerification(checked, failures, block_dims, sub_dim)


# -- round trip ---------------------------------------------------------------

@dataclass
class RoundtripReport:
    star_result: StarResult
    contraction: ContractionResult
    block_index: int
    dims_expected: dict
    dims_found: dict
    relations_vanish: bool
    failures: list

    @property
    def ok(self):
        return (self.dims_expected == self.dims_found
                and self.relations_vanish and not self.failures)


def _psi_contract(star_result: StarResult, path_arrows):
    """Contract a path of the split quiver back to the base quiver."""
    pair_of = {}
    merged = {}
    for a, (first, second, eps, _) in star_result.split.items():
        pair_of[first] = (second, a)
        merged[a] = a
    out = []
    arrows = list(path_arrows)
    i = 0
    while i < len(arrows):
        a = arrows[i]
        if a in pair_of:
            second, orig = pair_of[a]
            if i + 1 >= len(arrows) or arrows[i + 1] != second:
                raise ContractionError(f"unpaired split arrow {a}")
            out.append(orig)
            i += 2
        else:
            out.append(a)
            i += 1
    return tuple(out)


def roundtrip_verify(data: BiserialQuiverData,
                     algebra: FiniteDimAlgebra | None = None) -> RoundtripReport:
    if algebra is None:
        algebra = build_algebra(data)
    sr = star(data)
    if sr.calibrated:
        sr = _calibrate(data, sr)
    star_alg = build_algebra(sr.data)
    result = contract(star_alg, data.quiver.vertices)
    block_index = None
    for i, block in enumerate(result.blocks):
        if set(block.quiver.vertices) >= set(data.quiver.vertices):
            block_index = i
            break
    failures = list(result.verification.failures)
    if block_index is None:
        failures.append("no single block covers the original vertices")
        block_index = 0
    block = result.blocks[block_index]
    dims_found = result.verification.block_dims[block_index]
    dims_expected = algebra.dimension_vector()
    # psi: push every relation generator of the contraction into the base
    # algebra and reduce there
    relations_vanish = True
    rels = generate_relations(block)
    for rel in rels.relations:
        total = LinComb()
        for path, coeff in rel.element.terms.items():
            # expand the tilde path through the embedding, then contract
            acc = [((), Fraction(1))]
            for a in path.arrows:
                new = []
                emb = result.embedding[a]
                for arrows_so_far, c in acc:
                    for pos, c2 in emb.items():
                        p = star_alg.basis_path(pos)
                        new.append((arrows_so_far + p.arrows, c * c2))
                acc = new
            for arrows, c in acc:
                base_arrows = _psi_contract(sr, arrows)
                src = path.source
                total = total + LinComb.monomial(
                    Path(src, base_arrows), c * coeff)
        nf = algebra.normal_form(total)
        if nf:
            relations_vanish = False
            failures.append(f"psi({rel}) = {algebra.coords_to_lincomb(nf)}")
    return RoundtripReport(sr, result, block_index, dims_expected,
                           dims_found, relations_vanish, failures)


def _calibrate(data: BiserialQuiverData, sr: StarResult) -> StarResult:
    """Choose eps scalars so that nonzero border squares survive the trip."""
    star_alg = build_algebra(sr.data)
    result = contract(star_alg, data.quiver.vertices)
    scalars = {}
    for a, target in sr.calibrated.items():
        loop_name = sr.split[a][0] + "~"
        measured = result.border_measured.get(loop_name)
        if not measured:
            raise ContractionError(
                f"calibration failed: border of {loop_name} vanished")
        scalars[a] = target / measured
    return star(data, eps_scalars=scalars)
