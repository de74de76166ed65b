"""Paths in a quiver and rational linear combinations of them.

Paths compose left to right: ``(a, b)`` means "first traverse ``a``, then
``b``", matching right-module conventions everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Path:
    """A path given by its source vertex and the sequence of arrow names.

    An empty arrow sequence is the stationary path at ``source``.
    """

    source: str
    arrows: tuple[str, ...] = ()

    def __len__(self):
        return len(self.arrows)

    def target(self, quiver) -> str:
        if not self.arrows:
            return self.source
        return quiver.arrow_target[self.arrows[-1]]

    def is_composable(self, quiver) -> bool:
        at = self.source
        for name in self.arrows:
            if quiver.arrow_source[name] != at:
                return False
            at = quiver.arrow_target[name]
        return True

    def concat(self, other: "Path") -> "Path":
        return Path(self.source, self.arrows + other.arrows)

    def sort_key(self):
        # length-lexicographic with arrow-name tiebreak; source breaks ties
        # among stationary paths
        return (len(self.arrows), self.arrows, self.source)

    def __str__(self):
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(self.arrows)


def stationary(vertex: str) -> Path:
    return Path(vertex, ())


class LinComb:
    """Rational linear combination of paths; zero coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[Path, Fraction] = {}
        if terms:
            for path, coeff in dict(terms).items():
                c = Fraction(coeff)
                if c:
                    self.terms[path] = c

    @classmethod
    def monomial(cls, path: Path, coeff=1) -> "LinComb":
        return cls({path: Fraction(coeff)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, LinComb) and self.terms == other.terms

    def __add__(self, other: "LinComb") -> "LinComb":
        out = dict(self.terms)
        for path, coeff in other.terms.items():
            c = out.get(path, Fraction(0)) + coeff
            if c:
                out[path] = c
            else:
                out.pop(path, None)
        result = LinComb()
        result.terms = out
        return result

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + other.scale(-1)

    def scale(self, coeff) -> "LinComb":
        c = Fraction(coeff)
        result = LinComb()
        if c:
            result.terms = {p: v * c for p, v in self.terms.items()}
        return result

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key())

    def max_length(self) -> int:
        return max((len(p) for p in self.terms), default=0)

    def min_length(self) -> int:
        return min((len(p) for p in self.terms), default=0)

    def sources(self):
        return {p.source for p in self.terms}

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for path, coeff in self.sorted_terms():
            bits.append(f"({coeff})*{path}")
        return " + ".join(bits)

    def __repr__(self):
        return f"LinComb({self})"
