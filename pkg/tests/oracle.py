"""Independent brute-force ideal closure, used to cross-check the engine.

Deliberately naive and structurally different from the main implementation:
paths are enumerated directly, every product u*r*v inside the window is
formed by a triple loop, and elimination pivots on the LARGEST monomial
(the engine pivots on the smallest).  Only the relation generators are
shared, since they are the input being checked.
"""

from fractions import Fraction


class BruteForceClosure:
    def __init__(self, data, relations, length):
        self.data = data
        self.length = length
        q = data.quiver
        store = [((), v) for v in q.vertices]
        frontier = list(store)
        for _ in range(length):
            new = []
            for arrs, src in frontier:
                at = q.arrow_target[arrs[-1]] if arrs else src
                for a in q.arrows_at[at]:
                    new.append((arrs + (a,), src))
            store.extend(new)
            frontier = new
        store.sort(key=lambda t: (len(t[0]), t[0], t[1]))
        self.store = store
        self.index = {t: i for i, t in enumerate(store)}
        self.rows = {}
        ends, starts = {}, {}
        for t in store:
            arrs, src = t
            tgt = q.arrow_target[arrs[-1]] if arrs else src
            ends.setdefault(tgt, []).append(t)
            starts.setdefault(src, []).append(t)
        for rel in relations.relations:
            terms = rel.element.sorted_terms()
            src = terms[0][0].source
            tgt = terms[0][0].target(q)
            longest = rel.element.max_length()
            for u_arrs, u_src in ends.get(src, []):
                if len(u_arrs) + longest > length:
                    continue
                for v_arrs, _ in starts.get(tgt, []):
                    if len(u_arrs) + longest + len(v_arrs) > length:
                        continue
                    vec = {}
                    for mono, coeff in terms:
                        k = self.index[(u_arrs + mono.arrows + v_arrs, u_src)]
                        vec[k] = vec.get(k, Fraction(0)) + coeff
                    self._insert(vec)

    def _reduce(self, vec):
        vec = dict(vec)
        while vec:
            lead = max(vec)
            row = self.rows.get(lead)
            if row is None:
                return vec, lead
            coeff = vec.pop(lead)
            for k, v in row.items():
                if k == lead:
                    continue
                nv = vec.get(k, Fraction(0)) - coeff * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
        return {}, None

    def _insert(self, vec):
        red, lead = self._reduce(vec)
        if red:
            inv = 1 / red[lead]
            self.rows[lead] = {k: v * inv for k, v in red.items()}

    def in_ideal(self, arrows, source):
        red, _ = self._reduce({self.index[(tuple(arrows), source)]: Fraction(1)})
        return not red

    def reduce_lincomb(self, element):
        """Normal form of a path combination as {(arrows, source): coeff}."""
        vec = {}
        for path, coeff in element.terms.items():
            if len(path.arrows) > self.length:
                continue
            k = self.index[(path.arrows, path.source)]
            vec[k] = vec.get(k, Fraction(0)) + coeff
        red, _ = self._reduce(vec)
        return {self.store[k]: c for k, c in red.items()}

    def nil_length(self, max_spread):
        """Smallest s with s + max_spread <= length and all length-s paths
        in the closure, or None."""
        by_len = {}
        for arrs, src in self.store:
            by_len.setdefault(len(arrs), []).append((arrs, src))
        for s in range(1, self.length - max_spread + 1):
            if all(self.in_ideal(arrs, src) for arrs, src in by_len.get(s, [])):
                return s
        return None

    def survivors_below(self, s):
        return [t for t in self.store
                if len(t[0]) < s and self.index[t] not in self.rows]


def oracle_dimensions(data, relations, length, max_spread, known_s=None,
                      closure=None):
    """(dimension vector, total, nil length, closure) by brute force, or
    None if the window does not certify.

    With ``known_s`` the claimed nil length is verified instead of scanned
    for (every length-s path must lie in the closure and the window bound
    must hold).
    """
    if closure is None:
        closure = BruteForceClosure(data, relations, length)
    if known_s is not None:
        if known_s + max_spread > length:
            return None
        by_len = [t for t in closure.store if len(t[0]) == known_s]
        if not all(closure.in_ideal(arrs, src) for arrs, src in by_len):
            return None
        s = known_s
    else:
        s = closure.nil_length(max_spread)
        if s is None:
            return None
    alive = closure.survivors_below(s)
    dims = {v: 0 for v in data.quiver.vertices}
    for arrs, src in alive:
        dims[src] += 1
    return dims, len(alive), s, closure
