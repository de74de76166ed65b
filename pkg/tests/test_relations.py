from fractions import Fraction

from hybridalg.paths import LinComb, Path
from hybridalg.quiver import classify_arrows
from hybridalg.relations import generate_relations, special_paths

from test_quiver import sigma


def by_kind(rels, kind):
    return {r.anchor: r for r in rels.relations if r.kind == kind}


def monomials(element):
    return sorted("*".join(p.arrows) for p in element.terms)


def test_sigma_quaternion_relations():
    data = sigma(2)
    rels = generate_relations(data, classify_arrows(data))
    pair = by_kind(rels, "pair")
    assert monomials(pair["b"].element) == ["a", "b*g"]          # b g = a
    assert pair["b"].element.terms[Path("1", ("a",))] == Fraction(-1)
    assert monomials(pair["g"].element) == ["g*a", "s*d*g"]      # g a = 2 s d g
    assert monomials(pair["a"].element) == ["a*b", "b*s*d"]


def test_sigma_zero_relations():
    data = sigma(2)
    rels = generate_relations(data, classify_arrows(data))
    zeros = sorted(
        "*".join(next(iter(r.element.terms)).arrows)
        for r in rels.relations if r.kind in ("zeta", "xi"))
    assert zeros == sorted([
        "a*b*s", "g*a*a", "s*h*h", "h*d*g",     # from the f-successor side
        "a*a*b", "b*s*h", "h*h*d", "d*g*a",     # from the g-successor side
    ])
    suppressed = {(e.kind, e.anchor, e.witness) for e in rels.exceptions}
    assert suppressed == {("zeta", "b", "a"), ("zeta", "d", "h"),
                          ("xi", "g", "a"), ("xi", "s", "h")}


def test_pentagon_fourteen_zero_relations(corpus):
    data = corpus.data("pentagon_wsa")
    rels = generate_relations(data)
    zeros = [r for r in rels.relations if r.kind in ("zeta", "xi")]
    assert len(zeros) == 14
    listed = {
        "bal*xi*om", "om*gb*f2a", "xi*be*al", "eta*eta*fa", "fa*f2a*bal",
        "ga*om*xi", "f2a*al*eta",                      # one family
        "al*eta*eta", "om*xi*be", "xi*om*gb", "gb*f2a*al", "eta*fa*f2a",
        "fa*ga*om", "f2a*bal*xi",                      # the other family
    }
    got = {"*".join(next(iter(r.element.terms)).arrows) for r in zeros}
    assert got == listed
    suppressed = {(e.anchor, e.kind) for e in rels.exceptions}
    assert suppressed == {("al", "zeta"), ("be", "zeta"), ("gb", "zeta"),
                          ("bal", "xi"), ("be", "xi"), ("ga", "xi")}


def test_no_triangles_gives_monomial_pairs(corpus):
    data = corpus.data("brauer_star")
    rels = generate_relations(data)
    for anchor, rel in by_kind(rels, "pair").items():
        assert len(rel.element.terms) == 1
        (path,) = rel.element.terms
        assert path.arrows == (anchor, data.f[anchor])


def test_socle_relations_one_per_vertex():
    data = sigma(2)
    rels = generate_relations(data)
    socle = rels.of_kind("socle")
    assert len(socle) == len(data.quiver.vertices)
    for rel in socle:
        lengths = sorted(len(p) for p in rel.element.terms)
        a = rel.anchor
        bar = data.bar[a]
        assert lengths == sorted([data.cycle_degree(a),
                                  data.cycle_degree(bar)])


def test_generator_shape_invariants(corpus):
    for entry in ("pentagon_wsa", "kite_wsa", "brauer_two_vertex",
                  "disc_sigma_m11"):
        data = corpus.data(entry)
        rels = generate_relations(data)
        for rel in rels.relations:
            if rel.kind in ("pair", "loop"):
                product = Path(data.quiver.arrow_source[rel.anchor],
                               (rel.anchor, data.f[rel.anchor]))
                assert rel.element.terms.get(product) == Fraction(1)
            elif rel.kind in ("zeta", "xi"):
                (path,) = rel.element.terms
                assert len(path) == 3
            else:
                assert rel.kind == "socle"
                lengths = {len(p) for p in rel.element.terms}
                assert lengths == {data.cycle_degree(rel.anchor),
                                   data.cycle_degree(data.bar[rel.anchor])} \
                    or len(lengths) == 1


def test_special_paths_exception_flags(corpus):
    data = corpus.data("pentagon_wsa")
    cls = classify_arrows(data)
    sp = special_paths(data, cls, "al")
    assert sp.zeta_exceptional and sp.zeta_witness == ("bal", "critical")
    assert not sp.xi_exceptional
    sp = special_paths(data, cls, "ga")
    assert sp.xi_exceptional and sp.xi_witness == ("om", "virtual")

    sig = sigma(2)
    cls2 = classify_arrows(sig)
    sp = special_paths(sig, cls2, "s")
    assert sp.zeta.arrows == ("s", "h", "h")
    assert not sp.zeta_exceptional
    assert sp.xi_exceptional and sp.xi_witness == ("h", "virtual")


def test_biserial_vertices_never_exceptional(corpus):
    data = corpus.data("brauer_star")
    cls = classify_arrows(data)
    for a in data.quiver.arrow_names():
        sp = special_paths(data, cls, a)
        assert not sp.zeta_exceptional and not sp.xi_exceptional
