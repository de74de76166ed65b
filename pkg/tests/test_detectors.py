from fractions import Fraction

import pytest

from hybridalg import detectors as de
from hybridalg import modules as mo
from hybridalg.paths import Path

X_VALUES = (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(-1))


def test_separated_components_structure(corpus):
    data = corpus.data("brauer_star")
    comps = de.separated_components(data)
    assert [c.r for c in comps] == [3]
    comp = comps[0]
    # every vertex occurs once among sources and once among targets
    assert sorted(comp.sources) == ["1", "2", "3"]
    assert sorted(comp.targets) == ["1", "2", "3"]
    data2 = corpus.data("brauer_double")
    assert [c.r for c in de.separated_components(data2)] == [1, 1]


def test_separated_needs_gabriel_two_regular(corpus):
    with pytest.raises(ValueError, match="virtual"):
        de.separated_components(corpus.data("linear_sigma_l2"))


def test_matrix_detector_products(corpus):
    for entry in ("brauer_star", "brauer_two_vertex", "disc_quaternion_m31"):
        alg = corpus.algebra(entry)
        for comp in de.separated_components(alg.data):
            if comp.r == 1:
                continue
            for x in X_VALUES:
                pair = de.build_detecting_pair(alg, comp, x)
                assert pair.products_vanish, (entry, x)


def test_matrix_detector_syzygy_swap(corpus):
    alg = corpus.algebra("brauer_star")
    comp = de.separated_components(alg.data)[0]
    for x in (Fraction(2), Fraction(-1)):
        pair = de.build_detecting_pair(alg, comp, x)
        S, T = de.detector_modules(alg, pair)
        assert mo.iso_test(mo.syzygy(S), T).isomorphic
        assert mo.iso_test(mo.syzygy(T), S).isomorphic
        U = de.string_module(alg, comp, x)
        assert mo.iso_test(U, T).isomorphic
        _, period = mo.omega_orbit(alg, U, 4)
        assert period in (1, 2)


def test_cyclic_detector_double_arrows(corpus):
    alg = corpus.algebra("brauer_double")
    comp = de.separated_components(alg.data)[0]
    p = Path(comp.sources[0], (comp.out_arrows[0],))
    q = Path(comp.sources[0], (comp.in_arrows[0],))
    for x in X_VALUES:
        det = de.build_cyclic_detector(alg, p, q, x)
        assert det.hypotheses_hold, det.failures
        theta_mod, psi_mod = de.cyclic_detector_modules(alg, det)
        assert psi_mod.dim == 2
        assert mo.iso_test(mo.syzygy(theta_mod), psi_mod).isomorphic
        assert mo.iso_test(mo.syzygy(psi_mod), theta_mod).isomorphic


def test_cyclic_detector_loop_pair(corpus):
    # the two loops at the one-vertex biserial algebra give parallel arrows
    alg = corpus.algebra("local_inverse_loops_m22")
    det = de.build_cyclic_detector(alg, Path("1", ("a",)), Path("1", ("b",)),
                                   Fraction(2))
    assert det.hypotheses_hold, det.failures
    theta_mod, psi_mod = de.cyclic_detector_modules(alg, det)
    _, period = mo.omega_orbit(alg, theta_mod, 4)
    assert period in (1, 2)


def test_exactness_on_string_modules(corpus):
    alg = corpus.algebra("brauer_star")
    comp = de.separated_components(alg.data)[0]
    pair = de.build_detecting_pair(alg, comp, Fraction(2))
    for y in (Fraction(3), Fraction(5), Fraction(7, 2)):
        U = de.string_module(alg, comp, y)
        report = de.check_detector_exactness(alg, pair, U)
        assert report.socle_annihilated
        assert report.exact
        assert report.ker_s_is_socle_part
        assert report.ker_t_is_radical_part


def test_exactness_fails_with_stable_maps(corpus):
    # a module with nonzero stable maps from the detector family fails the
    # kernel/image coincidences
    alg = corpus.algebra("brauer_star")
    comp = de.separated_components(alg.data)[0]
    pair = de.build_detecting_pair(alg, comp, Fraction(2))
    M = mo.middle_module(alg, "1")
    report = de.check_detector_exactness(alg, pair, M)
    assert report.socle_annihilated
    assert not report.exact
    S_mod, T_mod = de.detector_modules(alg, pair)
    assert (mo.stable_hom_dim(alg, S_mod, M)
            + mo.stable_hom_dim(alg, T_mod, M)) > 0


def test_exactness_forces_top_equals_socle(corpus):
    alg = corpus.algebra("brauer_star")
    comps = de.separated_components(alg.data)
    for y in (Fraction(3), Fraction(5)):
        U = de.string_module(alg, comps[0], y)
        if all(de.check_detector_exactness(
                alg, de.build_detecting_pair(alg, c, Fraction(2)), U).exact
               for c in comps if c.r >= 2):
            tops = mo.top_dims(U)
            soc = de.socle_space(U)
            assert sum(tops.values()) == soc.total_dim()


def test_stable_vanishing_matches_exactness(corpus):
    alg = corpus.algebra("brauer_star")
    comp = de.separated_components(alg.data)[0]
    pair = de.build_detecting_pair(alg, comp, Fraction(2))
    S_mod, T_mod = de.detector_modules(alg, pair)
    battery = [de.string_module(alg, comp, Fraction(3)),
               mo.middle_module(alg, "2"),
               mo.simple_module(alg, "1")]
    for M in battery:
        vanishing = (mo.stable_hom_dim(alg, S_mod, M) == 0
                     and mo.stable_hom_dim(alg, T_mod, M) == 0)
        report = de.check_detector_exactness(alg, pair, M)
        if vanishing:
            assert report.exact
