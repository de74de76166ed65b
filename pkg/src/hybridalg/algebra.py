"""Finite-dimensional quotient of a path algebra by a relation ideal.

The quotient is computed by exact linear algebra over the rationals.  All
paths up to a working length L are enumerated and the span W of the products
u*r*v of relation generators is formed, keeping only products whose every
monomial fits inside L, so W is an honest subspace of the ideal I.  The
result is trusted only once a certificate is found: a nil length s with
s + spread <= L (spread = largest monomial-length spread of a relation) such
that every path of length exactly s lies in W.  Then W + span(paths of
length >= s) is a two-sided ideal containing the generators (products that
overflow L only leak monomials of length > L - spread >= s), every path of
length >= s factors through a length-s prefix in W, hence equals I, and
I restricted to lengths < s is the short-coordinate projection of W.  The
quotient basis is therefore the set of non-pivot monomials of length < s,
computed exactly.  If no certificate exists up to the length cap, the
presentation is reported as not finite-dimensional under the cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .linalg import RowEchelon
from .paths import LinComb, Path, stationary
from .quiver import ArrowClassification, BiserialQuiverData, classify_arrows
from .relations import RelationSet, generate_relations


class NotFiniteDimensionalError(RuntimeError):
    """Raised when the truncation cap is exceeded without certification."""


class CompositionError(ValueError):
    """A path in a linear combination does not compose in the quiver."""


def enumerate_paths(quiver, max_len: int):
    """All composable paths of length <= max_len, sorted length-lex."""
    paths = [stationary(v) for v in quiver.vertices]
    frontier = list(paths)
    for _ in range(max_len):
        new = []
        for p in frontier:
            for a in quiver.arrows_at[p.target(quiver)]:
                new.append(Path(p.source, p.arrows + (a,)))
        paths.extend(new)
        frontier = new
    paths.sort(key=Path.sort_key)
    return paths


@dataclass
class SymmetricVerdict:
    symmetric: bool
    functional: dict | None = None          # basis index -> value, when yes
    certificate: dict | None = None         # socle element coords, when no
    certificate_pair: tuple | None = None   # two independent socle elements
    certificate_vertex: str | None = None
    reason: str = ""

    def describe(self) -> str:
        if self.symmetric:
            return "symmetric form exists"
        return self.reason


class FiniteDimAlgebra:
    def __init__(self, data: BiserialQuiverData, relations: RelationSet,
                 length: int, nil_length: int, paths, echelon: RowEchelon):
        self.data = data
        self.relations = relations
        self.length = length
        self.nil_length = nil_length      # every path of length >= this is 0
        self.paths = paths
        self.path_index = {(p.source, p.arrows): i for i, p in enumerate(paths)}
        self.echelon = echelon
        self.basis = [
            i for i in range(len(paths))
            if i not in echelon.rows and len(paths[i]) < nil_length
        ]
        self.basis_pos = {idx: k for k, idx in enumerate(self.basis)}
        q = data.quiver
        self.vertex_unit = {
            v: self.basis_pos[self.path_index[(v, ())]] for v in q.vertices
        }
        self._mult_cache: dict[tuple[int, int], dict[int, Fraction]] = {}
        self._socle_cache = None
        self._commutator_cache = None

    # -- basic queries ----------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_paths(self):
        return [self.paths[i] for i in self.basis]

    def basis_path(self, pos: int) -> Path:
        return self.paths[self.basis[pos]]

    def basis_source(self, pos: int) -> str:
        return self.basis_path(pos).source

    def basis_target(self, pos: int) -> str:
        return self.basis_path(pos).target(self.data.quiver)

    def dimension_vector(self) -> dict[str, int]:
        out = {v: 0 for v in self.data.quiver.vertices}
        for i in self.basis:
            out[self.paths[i].source] += 1
        return out

    def cartan_matrix(self):
        verts = list(self.data.quiver.vertices)
        pos = {v: k for k, v in enumerate(verts)}
        mat = [[0] * len(verts) for _ in verts]
        q = self.data.quiver
        for i in self.basis:
            p = self.paths[i]
            mat[pos[p.source]][pos[p.target(q)]] += 1
        return mat

    # -- normal forms and products ----------------------------------------
    def _reduce_indexvec(self, vec):
        red = self.echelon.reduce(vec)
        # coordinates on monomials of length >= nil_length lie in the ideal
        return {
            self.basis_pos[i]: c for i, c in red.items() if i in self.basis_pos
        }

    def normal_form(self, element: LinComb) -> dict[int, Fraction]:
        """Coordinates over the basis (keyed by basis position)."""
        vec: dict[int, Fraction] = {}
        q = self.data.quiver
        for path, coeff in element.terms.items():
            if not path.is_composable(q):
                raise CompositionError(f"path {path} does not compose")
            if len(path) > self.length:
                continue
            idx = self.path_index[(path.source, path.arrows)]
            vec[idx] = vec.get(idx, Fraction(0)) + coeff
        return self._reduce_indexvec(vec)

    def nf_path(self, arrows, source=None) -> dict[int, Fraction]:
        if not arrows:
            return {self.vertex_unit[source]: Fraction(1)}
        src = self.data.quiver.arrow_source[arrows[0]]
        return self.normal_form(LinComb.monomial(Path(src, tuple(arrows))))

    def coords_to_lincomb(self, coords) -> LinComb:
        return LinComb({self.basis_path(pos): c for pos, c in coords.items()})

    def basis_mult(self, i: int, j: int):
        """Product of basis elements i and j, as basis coordinates."""
        key = (i, j)
        cached = self._mult_cache.get(key)
        if cached is not None:
            return cached
        q = self.data.quiver
        p, r = self.basis_path(i), self.basis_path(j)
        if p.target(q) != r.source or len(p) + len(r) > self.length:
            # non-composable pairs vanish; overlong products lie in the ideal
            out: dict[int, Fraction] = {}
        else:
            idx = self.path_index[(p.source, p.arrows + r.arrows)]
            out = self._reduce_indexvec({idx: Fraction(1)})
        self._mult_cache[key] = out
        return out

    def mult(self, x: dict, y: dict) -> dict:
        """Product of two coordinate vectors."""
        out: dict[int, Fraction] = {}
        for i, ci in x.items():
            for j, cj in y.items():
                for k, ck in self.basis_mult(i, j).items():
                    val = out.get(k, Fraction(0)) + ci * cj * ck
                    if val:
                        out[k] = val
                    else:
                        out.pop(k, None)
        return out

    def unit_coords(self, vertex: str) -> dict:
        return {self.vertex_unit[vertex]: Fraction(1)}

    def right_component(self, x: dict, vertex: str) -> dict:
        """x * e_vertex: keep coordinates on basis paths ending at vertex."""
        return {i: c for i, c in x.items() if self.basis_target(i) == vertex}

    # -- radical and socle -------------------------------------------------
    def radical_positions(self, power: int = 1):
        return [k for k in range(self.dim) if len(self.basis_path(k)) >= power]

    def loewy_length(self) -> int:
        return max((len(self.basis_path(k)) for k in range(self.dim)), default=0) + 1

    def projective_basis(self, vertex: str):
        """Basis positions of e_vertex * H."""
        return [k for k in range(self.dim) if self.basis_source(k) == vertex]

    def socle_vectors(self, vertex: str):
        """Basis of {x in e_vertex*H : x*J = 0}, as coordinate dicts."""
        if self._socle_cache is None:
            self._socle_cache = {}
        if vertex in self._socle_cache:
            return self._socle_cache[vertex]
        cols = self.projective_basis(vertex)
        rows = []
        for a in sorted(self.data.quiver.arrow_names()):
            src = self.data.quiver.arrow_source[a]
            images = {}
            for k in cols:
                if self.basis_target(k) != src:
                    continue
                prod = self.nf_path(self.basis_path(k).arrows + (a,),
                                    self.basis_source(k))
                if prod:
                    images[k] = prod
            if not images:
                continue
            hit = sorted({pos for img in images.values() for pos in img})
            for pos in hit:
                rows.append([images.get(k, {}).get(pos, Fraction(0)) for k in cols])
        kern = linalg.nullspace(rows, ncols=len(cols))
        out = []
        for v in kern:
            out.append({cols[t]: c for t, c in enumerate(v) if c})
        self._socle_cache[vertex] = out
        return out

    # -- Gabriel quiver and blocks ------------------------------------------
    def gabriel_arrows(self):
        """Arrows surviving as basis monomials (they span J/J^2)."""
        out = []
        for arr in self.data.quiver.arrows:
            idx = self.path_index[(arr.source, (arr.name,))]
            if idx not in self.echelon.rows:
                out.append(arr)
        return out

    def gabriel_quiver(self, cls: ArrowClassification | None = None):
        """Subquiver on the surviving arrows.

        Checks the expected description: the surviving arrows are exactly the
        non-virtual ones, except for the local algebra with two virtual
        loops, where a single loop survives.
        """
        from .quiver import Quiver
        arrows = self.gabriel_arrows()
        if cls is None:
            cls = classify_arrows(self.data)
        names = {a.name for a in arrows}
        nonvirtual = {a for a in self.data.quiver.arrow_names()
                      if not cls.is_virtual(a)}
        q = self.data.quiver
        local_two_virtual_loops = (
            len(q.vertices) == 1
            and all(cls.is_virtual(a) for a in q.arrow_names())
        )
        if local_two_virtual_loops:
            if len(names) != 1:
                raise AssertionError("local two-virtual-loop algebra should "
                                     "keep exactly one loop")
        elif names != nonvirtual:
            raise AssertionError(
                f"surviving arrows {sorted(names)} differ from non-virtual "
                f"arrows {sorted(nonvirtual)}")
        return Quiver(self.data.quiver.vertices, arrows)

    def vertex_components(self):
        """Vertex classes under connectivity of the Gabriel quiver."""
        arrows = self.gabriel_arrows()
        parent = {v: v for v in self.data.quiver.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a in arrows:
            ra, rb = find(a.source), find(a.target)
            if ra != rb:
                parent[ra] = rb
        groups = {}
        for v in self.data.quiver.vertices:
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values(), key=lambda g: g[0])

    def block_decomposition(self):
        comps = self.vertex_components()
        blocks = []
        for verts in comps:
            inside = set(verts)
            for k in range(self.dim):
                src, tgt = self.basis_source(k), self.basis_target(k)
                if (src in inside) != (tgt in inside):
                    raise AssertionError("block structure violated by basis "
                                         f"element {self.basis_path(k)}")
            blocks.append(AlgebraBlock(self, tuple(verts)))
        return blocks

    # -- symmetric form ------------------------------------------------------
    def commutator_space(self) -> RowEchelon:
        """Echelon (in basis coordinates) of span{xy - yx}."""
        if self._commutator_cache is not None:
            return self._commutator_cache
        ech = RowEchelon()
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                diff = linalg.vec_add(self.basis_mult(i, j),
                                      self.basis_mult(j, i), Fraction(-1))
                if diff:
                    ech.insert(diff)
        self._commutator_cache = ech
        return ech

    def symmetric_form_exists(self) -> SymmetricVerdict:
        """Decide existence of a symmetric linear form with nondegenerate
        associated bilinear form; produce a witness or a certificate.

        A symmetric functional kills all commutators, and the radical of its
        form is a two-sided ideal, hence meets the right socle.  For a socle
        element z of e_v*H, all components z*e_w with w != v are commutators,
        so the form is degenerate at z iff the diagonal component z*e_v is
        sent to 0.  The algebra is symmetric iff some functional vanishing on
        commutators is nonzero on the diagonal component of every nonzero
        socle element.
        """
        comm = self.commutator_space()
        # certificate search: nonzero socle z with all diagonal parts in [H,H]
        diag_classes = {}
        for v in self.data.quiver.vertices:
            socle = self.socle_vectors(v)
            if not socle:
                continue
            reduced = []
            for z in socle:
                diag = self.right_component(z, v)
                reduced.append(comm.reduce(diag))
            # kernel of z -> class of diagonal part modulo commutators
            coords = sorted({i for r in reduced for i in r})
            matrix = [[reduced[t].get(i, Fraction(0)) for t in range(len(socle))]
                      for i in coords]
            kern = linalg.nullspace(matrix, ncols=len(socle))
            if kern:
                z = {}
                for t, c in enumerate(kern[0]):
                    if c:
                        z = linalg.vec_add(z, socle[t], c)
                # verify: z is nonzero and every right component is a commutator
                assert z
                for w in self.data.quiver.vertices:
                    assert comm.contains(self.right_component(z, w))
                return SymmetricVerdict(
                    symmetric=False, certificate=z, certificate_vertex=v,
                    reason=f"socle element at vertex {v} is orthogonal to "
                           "every symmetric functional")
            if len(socle) > 1:
                # a scalar functional cannot be injective on a socle of
                # dimension >= 2, so every symmetric form is degenerate
                return SymmetricVerdict(
                    symmetric=False, certificate=None,
                    certificate_pair=(socle[0], socle[1]),
                    certificate_vertex=v,
                    reason=f"socle of the projective at {v} has dimension "
                           f"{len(socle)}; no functional separates it")
            diag_classes[v] = reduced[0]

        # witness: functional on H/[H,H] nonzero on each diagonal socle class
        quotient_coords = [k for k in range(self.dim) if k not in comm.rows]
        qpos = {k: t for t, k in enumerate(quotient_coords)}
        values = []
        for v, cls_vec in diag_classes.items():
            values.append([cls_vec.get(k, Fraction(0)) for k in quotient_coords])
        kdim = len(quotient_coords)
        phi_quot = None
        bound = len(values) * max(kdim - 1, 1) + 2
        for s in range(1, bound):
            t = [Fraction(s) ** e for e in range(kdim)]
            if all(sum(a * b for a, b in zip(t, row)) for row in values):
                phi_quot = t
                break
        assert phi_quot is not None

        def phi(coords) -> Fraction:
            total = Fraction(0)
            for k, c in comm.reduce(coords).items():
                total += c * phi_quot[qpos[k]]
            return total

        functional = {k: phi({k: Fraction(1)}) for k in range(self.dim)}
        # verification by multiplication: phi kills commutators and the Gram
        # matrix of (x, y) -> phi(xy) is nondegenerate
        gram = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                gram[i][j] = sum(
                    (c * functional[k] for k, c in self.basis_mult(i, j).items()),
                    Fraction(0),
                )
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                assert gram[i][j] == gram[j][i], "functional not symmetric"
        assert linalg.det(gram) != 0, "witness form is degenerate"
        return SymmetricVerdict(symmetric=True, functional=functional)

    # -- diagnostics --------------------------------------------------------
    def check_associativity(self, triples=None) -> bool:
        rng = range(self.dim)
        if triples is None:
            triples = [(i, j, k) for i in rng for j in rng for k in rng]
        for i, j, k in triples:
            left = self.mult(self.basis_mult(i, j), {k: Fraction(1)})
            right = self.mult({i: Fraction(1)}, self.basis_mult(j, k))
            if left != right:
                return False
        return True


class AlgebraBlock:
    """A block of an algebra, presented as a view on the parent."""

    def __init__(self, parent: FiniteDimAlgebra, vertices):
        self.parent = parent
        self.vertices = tuple(vertices)
        inside = set(vertices)
        self.basis_positions = [
            k for k in range(parent.dim) if parent.basis_source(k) in inside
        ]

    @property
    def dim(self) -> int:
        return len(self.basis_positions)

    def dimension_vector(self):
        full = self.parent.dimension_vector()
        return {v: full[v] for v in self.vertices}

    def cartan_matrix(self):
        pos = {v: k for k, v in enumerate(self.vertices)}
        mat = [[0] * len(self.vertices) for _ in self.vertices]
        for k in self.basis_positions:
            src = self.parent.basis_source(k)
            tgt = self.parent.basis_target(k)
            mat[pos[src]][pos[tgt]] += 1
        return mat


def relation_window(relations: RelationSet) -> int:
    """Largest monomial-length spread across the relation generators."""
    spread = 0
    for rel in relations.relations:
        spread = max(spread, rel.element.max_length() - rel.element.min_length())
    return spread


def _close_ideal(data, relations, length, paths, path_index):
    q = data.quiver
    by_end: dict[tuple[str, int], list[Path]] = {}
    by_start: dict[tuple[str, int], list[Path]] = {}
    for p in paths:
        by_end.setdefault((p.target(q), len(p)), []).append(p)
        by_start.setdefault((p.source, len(p)), []).append(p)
    ech = RowEchelon()
    for rel in relations.relations:
        terms = rel.element.sorted_terms()
        src = terms[0][0].source
        tgt = terms[0][0].target(q)
        maxlen = rel.element.max_length()
        for ulen in range(0, length - maxlen + 1):
            for u in by_end.get((src, ulen), ()):
                for vlen in range(0, length - maxlen - ulen + 1):
                    for v in by_start.get((tgt, vlen), ()):
                        vec = {}
                        for mono, coeff in terms:
                            arrows = u.arrows + mono.arrows + v.arrows
                            idx = path_index[(u.source, arrows)]
                            vec[idx] = vec.get(idx, Fraction(0)) + coeff
                        ech.insert(vec)
    return ech


def _find_nil_length(relations, length, paths, path_index, ech):
    window = relation_window(relations)
    by_len: dict[int, list] = {}
    for p in paths:
        by_len.setdefault(len(p), []).append(p)
    for s in range(1, length - window + 1):
        if all(
            ech.contains({path_index[(p.source, p.arrows)]: Fraction(1)})
            for p in by_len.get(s, ())
        ):
            return s
    return None


def build_at_length(data: BiserialQuiverData, relations: RelationSet, length: int):
    """One closure attempt; returns (algebra-or-None, certified flag)."""
    paths = enumerate_paths(data.quiver, length)
    path_index = {(p.source, p.arrows): i for i, p in enumerate(paths)}
    ech = _close_ideal(data, relations, length, paths, path_index)
    s = _find_nil_length(relations, length, paths, path_index, ech)
    if s is None:
        return None, False
    return FiniteDimAlgebra(data, relations, length, s, paths, ech), True


# resource guard: a path count past this signals a degenerate presentation
# long before the length cap formula is reached
PATH_BUDGET = 60000


def build_algebra(data: BiserialQuiverData,
                  relations: RelationSet | None = None,
                  start_length: int | None = None) -> FiniteDimAlgebra:
    if relations is None:
        relations = generate_relations(data, classify_arrows(data))
    max_degree = max(data.cycle_degree(a) for a in data.quiver.arrow_names())
    window = relation_window(relations)
    length = start_length if start_length is not None else max_degree + 3
    length = max(length, max_degree + window + 1,
                 max(r.element.max_length() for r in relations.relations) + 1)
    cap = 4 * max_degree + 8
    narrows = len(data.quiver.arrows)
    while length <= cap:
        if narrows * 2 ** (length - 1) > PATH_BUDGET:
            raise NotFiniteDimensionalError(
                f"path budget exceeded at truncation length {length} "
                f"(cap {cap}); presentation has no certified "
                "finite-dimensional quotient")
        algebra, ok = build_at_length(data, relations, length)
        if ok:
            return algebra
        length += 1
    raise NotFiniteDimensionalError(
        f"truncation cap {cap} exceeded; presentation has no certified "
        "finite-dimensional quotient under the cap")
