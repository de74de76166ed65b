"""Periodic detecting modules and the kernel/image tests they impose.

Two families: cyclic detectors built from a pair of parallel initial
submonomials (theta = p + x q against psi = c_a p-hat - x^-1 c_bar q-hat),
and matrix detectors attached to a component of the separated quiver, given
by square matrices S_x and T_x over the algebra with S T = 0 = T S.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import FiniteDimAlgebra
from .modules import (RightModule, _mmul, _unit, element_module, iso_test,
                      projective_sum, radical_space, socle_space, submodule,
                      syzygy, top_dims)
from .paths import LinComb, Path
from .quiver import classify_arrows


@dataclass
class SeparatedComponent:
    """Alternating cycle i_1 -a_1-> j_1 <-b_1- i_2 -a_2-> j_2 ... of the
    separated quiver; arrows out of the i's, arrows into the j's."""
    sources: list          # i_1 ... i_r
    targets: list          # j_1 ... j_r
    out_arrows: list       # a_nu : i_nu -> j_nu
    in_arrows: list        # b_nu : i_{nu+1} -> j_nu

    @property
    def r(self):
        return len(self.sources)


def separated_components(data, cls=None):
    """Components of the separated quiver, as alternating cycles.

    Requires every arrow to survive in the Gabriel quiver (no virtual
    arrows), so each component is a cycle.
    """
    if cls is None:
        cls = classify_arrows(data)
    virtual = [a for a in data.quiver.arrow_names() if cls.is_virtual(a)]
    if virtual:
        raise ValueError(f"separated quiver needs a 2-regular Gabriel "
                         f"quiver; virtual arrows present: {virtual}")
    q = data.quiver
    seen = set()
    comps = []
    for start in sorted(q.arrow_names()):
        if start in seen:
            continue
        sources, targets, outs, ins = [], [], [], []
        a = start
        while True:
            seen.add(a)
            sources.append(q.arrow_source[a])
            targets.append(q.arrow_target[a])
            outs.append(a)
            # the other arrow ending at target(a)
            pair = q.arrows_into[q.arrow_target[a]]
            b = pair[0] if pair[1] == a else pair[1]
            ins.append(b)
            seen.add(b)
            # the other arrow starting at source(b)
            pair = q.arrows_at[q.arrow_source[b]]
            a = pair[0] if pair[1] == b else pair[1]
            if a == start:
                break
        comps.append(SeparatedComponent(sources, targets, outs, ins))
    return comps


@dataclass
class CyclicDetector:
    vertex_from: str
    vertex_to: str
    theta: dict            # algebra coordinates
    psi: dict
    x: Fraction
    hypotheses_hold: bool
    failures: list


def build_cyclic_detector(alg: FiniteDimAlgebra, p: Path, q: Path,
                          x) -> CyclicDetector:
    """Detector from parallel proper initial submonomials p of the cycle at
    one arrow and q of the cycle at the other arrow of the same vertex."""
    data = alg.data
    x = Fraction(x)
    if x == 0:
        raise ValueError("parameter x must be nonzero")
    a, abar = p.arrows[0], q.arrows[0]
    if data.bar[a] != abar:
        raise ValueError("p and q must start with the two arrows of one vertex")
    cls = classify_arrows(data)
    failures = []
    for arrow in (a, abar):
        if cls.is_virtual(arrow) or cls.is_critical(arrow):
            failures.append(f"arrow {arrow} is virtual or critical")
    full_p = data.socle_cycle(a).arrows
    full_q = data.socle_cycle(abar).arrows
    if full_p[: len(p)] != p.arrows or len(p) >= len(full_p):
        raise ValueError("p is not a proper initial submonomial of the cycle")
    if full_q[: len(q)] != q.arrows or len(q) >= len(full_q):
        raise ValueError("q is not a proper initial submonomial of the cycle")
    phat = full_p[len(p):]
    qhat = full_q[len(q):]
    jp = data.quiver.arrow_target[p.arrows[-1]]
    jq = data.quiver.arrow_target[q.arrows[-1]]
    if jp != jq:
        raise ValueError("p and q must end at a common vertex")
    i = p.source
    theta = linalg.vec_add(alg.nf_path(p.arrows), alg.nf_path(q.arrows), x)
    psi = linalg.vec_add(
        linalg.vec_scale(alg.nf_path(phat), data.scalar(a)),
        alg.nf_path(qhat), -data.scalar(abar) / x)
    # hypotheses: the four mixed products vanish and dims match
    for left, right, label in (
        (p.arrows, qhat, "p*qhat"), (q.arrows, phat, "q*phat"),
        (phat, q.arrows, "phat*q"), (qhat, p.arrows, "qhat*p"),
    ):
        if alg.nf_path(left + right, None):
            failures.append(f"product {label} is nonzero")
    theta_mod = element_module(alg, i, theta)
    psi_mod = element_module(alg, jp, psi)
    if theta_mod.dim != len(phat) + len(qhat):
        failures.append(f"dim theta H = {theta_mod.dim} != {len(phat)+len(qhat)}")
    if psi_mod.dim != len(p) + len(q):
        failures.append(f"dim psi H = {psi_mod.dim} != {len(p)+len(q)}")
    # the defining products must vanish outright
    if alg.mult(theta, psi) or alg.mult(psi, theta):
        failures.append("theta*psi or psi*theta nonzero")
    return CyclicDetector(i, jp, theta, psi, x, not failures, failures)


def cyclic_detector_modules(alg, det: CyclicDetector):
    theta_mod = element_module(alg, det.vertex_from, det.theta)
    psi_mod = element_module(alg, det.vertex_to, det.psi)
    return theta_mod, psi_mod


@dataclass
class DetectorPair:
    component: SeparatedComponent
    x: Fraction
    s_matrix: list         # r x r entries: algebra coordinate dicts
    t_matrix: list
    products_vanish: bool


def _entry_mult(alg, a, b):
    return alg.mult(a, b)


def build_detecting_pair(alg: FiniteDimAlgebra, comp: SeparatedComponent,
                         x) -> DetectorPair:
    x = Fraction(x)
    if x == 0:
        raise ValueError("parameter x must be nonzero")
    if comp.r == 1:
        raise ValueError("r = 1 components use build_cyclic_detector")
    data = alg.data
    r = comp.r
    zero = {}
    S = [[dict() for _ in range(r)] for _ in range(r)]
    for nu in range(r):
        a_coords = alg.nf_path((comp.out_arrows[nu],))
        b_coords = alg.nf_path((comp.in_arrows[nu],))
        if nu == 0:
            S[0][0] = linalg.vec_add(S[0][0], a_coords)
            S[1 % r][0] = linalg.vec_add(S[1 % r][0], b_coords, -x)
        else:
            S[nu][nu] = linalg.vec_add(S[nu][nu], a_coords)
            S[(nu + 1) % r][nu] = linalg.vec_add(S[(nu + 1) % r][nu],
                                                 b_coords, -1)
    T = [[dict() for _ in range(r)] for _ in range(r)]
    for nu in range(r):
        ga = data.g[comp.out_arrows[nu]]
        gb = data.g[comp.in_arrows[nu]]
        a_tail = alg.normal_form(LinComb.monomial(data.presocle(ga)))
        b_tail = alg.normal_form(LinComb.monomial(data.presocle(gb)))
        ca = data.scalar(comp.out_arrows[nu])
        cb = data.scalar(comp.in_arrows[nu])
        # column nu carries c_a A_{g(a_nu)} at row nu; the b-tail sits in
        # column nu+1, with the 1/x twist on the first in-arrow
        T[nu][nu] = linalg.vec_add(T[nu][nu], a_tail, ca)
        col = (nu + 1) % r
        scale = cb / x if nu == 0 else cb
        T[nu][col] = linalg.vec_add(T[nu][col], b_tail, scale)
    ok = True
    for i in range(r):
        for j in range(r):
            st = {}
            ts = {}
            for k in range(r):
                st = linalg.vec_add(st, _matmul_entry(alg, S[i][k], T[k][j]))
                ts = linalg.vec_add(ts, _matmul_entry(alg, T[i][k], S[k][j]))
            if st or ts:
                ok = False
    return DetectorPair(comp, x, S, T, ok)


def _matmul_entry(alg, a, b):
    if not a or not b:
        return {}
    return alg.mult(a, b)


def detector_modules(alg, pair: DetectorPair):
    """The modules generated by the columns of S and of T inside the
    matching projective sums."""
    comp = pair.component
    s_mod = _column_module(alg, pair.s_matrix, comp.sources)
    t_mod = _column_module(alg, pair.t_matrix, comp.targets)
    return s_mod, t_mod


def _column_module(alg, matrix, row_vertices):
    P, index = projective_sum(alg, row_vertices)
    # the vertex components of an element generate the same submodule, so
    # each column contributes its per-vertex pieces as generators
    gens = []
    r = len(matrix)
    for col in range(r):
        percol = P.zero_vector()
        for row in range(r):
            for pos, c in matrix[row][col].items():
                w = alg.basis_target(pos)
                slot = index[w].index((row, pos))
                percol[w][slot] += c
        for w in percol:
            if any(percol[w]):
                gens.append((w, percol[w]))
    mod, _ = submodule(P, gens)
    return mod


def string_module(alg: FiniteDimAlgebra, comp: SeparatedComponent, x) -> RightModule:
    """The one-parameter cycle module: one copy of the ground field at each
    slot of the component, arrows along the cycle acting by 1 except the
    first, which acts by x."""
    x = Fraction(x)
    q = alg.data.quiver
    r = comp.r
    # slots: i-copies then j-copies, grouped per vertex
    dims = {v: 0 for v in q.vertices}
    i_slot = []
    j_slot = []
    for nu in range(r):
        i_slot.append((comp.sources[nu], dims[comp.sources[nu]]))
        dims[comp.sources[nu]] += 1
    for nu in range(r):
        j_slot.append((comp.targets[nu], dims[comp.targets[nu]]))
        dims[comp.targets[nu]] += 1
    action = {}
    for a in q.arrow_names():
        action[a] = _zeros_mat(dims[q.arrow_source[a]], dims[q.arrow_target[a]])
    for nu in range(r):
        a = comp.out_arrows[nu]
        vi, pi = i_slot[nu]
        vj, pj = j_slot[nu]
        action[a][pi][pj] = x if nu == 0 else Fraction(1)
        b = comp.in_arrows[nu]
        vi2, pi2 = i_slot[(nu + 1) % r]
        action[b][pi2][pj] = Fraction(1)
    mod = RightModule(alg, dims, action)
    mod.slot_info = (i_slot, j_slot)
    return mod


def _zeros_mat(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


@dataclass
class ExactnessReport:
    socle_annihilated: bool
    im_t_equals_ker_s: bool
    im_s_equals_ker_t: bool
    ker_s_is_socle_part: bool
    ker_t_is_radical_part: bool

    @property
    def exact(self):
        return self.im_t_equals_ker_s and self.im_s_equals_ker_t


def check_detector_exactness(alg: FiniteDimAlgebra, pair: DetectorPair,
                             M: RightModule) -> ExactnessReport:
    """Evaluate S_x, T_x as linear maps on M and compare kernels and images
    with the socle and radical slices."""
    comp = pair.component
    r = comp.r
    soc = socle_space(M)
    annihilated = module_socle_annihilated(alg, M)
    def block_matrix(matrix, rows_v, cols_v):
        row_dims = [M.dims[v] for v in rows_v]
        col_dims = [M.dims[v] for v in cols_v]
        total_r, total_c = sum(row_dims), sum(col_dims)
        out = _zeros_mat(total_r, total_c)
        roff = 0
        for i, vi in enumerate(rows_v):
            coff = 0
            for j, vj in enumerate(cols_v):
                ent = matrix[i][j]
                if ent:
                    blk = M.element_matrix(vi, vj, ent)
                    for rr in range(M.dims[vi]):
                        for cc in range(M.dims[vj]):
                            out[roff + rr][coff + cc] = blk[rr][cc]
                coff += M.dims[vj]
            roff += M.dims[vi]
        return out
    Smat = block_matrix(pair.s_matrix, comp.sources, comp.targets)
    Tmat = block_matrix(pair.t_matrix, comp.targets, comp.sources)
    # kernels and images of right multiplication (row vectors)
    ker_s = linalg.nullspace(linalg.transpose(Smat), ncols=len(Smat))
    ker_t = linalg.nullspace(linalg.transpose(Tmat), ncols=len(Tmat))
    im_s = linalg.rref(Smat)[0]
    im_t = linalg.rref(Tmat)[0]
    def same_space(rows_a, rows_b):
        ra = linalg.rank(rows_a) if rows_a else 0
        rb = linalg.rank(rows_b) if rows_b else 0
        ru = linalg.rank(list(rows_a) + list(rows_b)) if (rows_a or rows_b) else 0
        return ra == rb == ru
    # socle and radical slices in the block coordinates
    rad = radical_space(M)
    soc_rows = _slice_rows(M, soc, comp.sources)
    rad_rows = _slice_rows(M, rad, comp.targets)
    return ExactnessReport(
        socle_annihilated=annihilated,
        im_t_equals_ker_s=same_space(im_t, ker_s),
        im_s_equals_ker_t=same_space(im_s, ker_t),
        ker_s_is_socle_part=same_space(ker_s, soc_rows),
        ker_t_is_radical_part=same_space(ker_t, rad_rows),
    )


def _slice_rows(M, space, vertices):
    dims = [M.dims[v] for v in vertices]
    total = sum(dims)
    rows = []
    # a vertex may occur several times among the slots; each occurrence
    # carries the same subspace of M at that vertex
    off = 0
    for v, d in zip(vertices, dims):
        for row in space.rows.get(v, []):
            out = [Fraction(0)] * total
            out[off:off + d] = row
            rows.append(out)
        off += d
    return rows


def module_socle_annihilated(alg, M) -> bool:
    """True iff every right-socle element of the algebra acts as zero."""
    for v in alg.data.quiver.vertices:
        if not M.dims[v]:
            continue
        for z in alg.socle_vectors(v):
            for w in alg.data.quiver.vertices:
                if not M.dims[w]:
                    continue
                mat = M.element_matrix(v, w, z)
                if any(any(row) for row in mat):
                    return False
    return True
