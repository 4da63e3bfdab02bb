"""Tests for certified automorphisms, fusion, and the brute-force oracle."""

import pytest

from suzuki2.errors import (
    NotAHomomorphism,
    NotBijective,
    NotFound,
    TooLargeForBruteForce,
    Unsupported,
)
from suzuki2.constructions import (
    build_a2,
    build_b2,
    build_generalized_quaternion,
    build_homocyclic,
    build_p_epsilon,
)
from suzuki2.automorphisms import (
    Automorphism,
    aut_from_images,
    aut_group_order,
    brute_force_aut,
    central_maps,
    commutator_matrix,
    find_isomorphism,
    fusion_classes,
    induced_action_on_center,
    induced_action_on_quotient,
    is_at_group,
    is_fif_group,
    isomorphism_from_labels,
    known_aut_generators,
    scan_peps_semilinear,
    verify_lemma31,
)


def conjugation(g, j):
    """Inner automorphism x -> j^-1 x j as a raw permutation."""
    ji = g.inv[j]
    return tuple(g.mul[g.mul[ji][x]][j] for x in range(g.n))


def test_identity_automorphism():
    q8 = build_generalized_quaternion(8)
    ident = Automorphism(q8, range(q8.n), "custom")
    assert ident.order() == 1
    assert ident(3) == 3


def test_certificate_rejects_non_homomorphism():
    # no automorphism of the quaternion group is a single transposition
    q8 = build_generalized_quaternion(8)
    perm = list(range(8))
    perm[6], perm[7] = perm[7], perm[6]
    with pytest.raises(NotAHomomorphism):
        Automorphism(q8, perm)


def test_certificate_rejects_bad_shapes():
    q8 = build_generalized_quaternion(8)
    with pytest.raises(NotBijective):
        Automorphism(q8, [0] * 8)
    cyc = tuple(range(1, 8)) + (0,)
    with pytest.raises(NotAHomomorphism):
        Automorphism(q8, cyc)


def test_conjugation_certifies_and_composes():
    q16 = build_generalized_quaternion(16)
    a = Automorphism(q16, conjugation(q16, q16.gens[0]))
    b = Automorphism(q16, conjugation(q16, q16.gens[1]))
    # closure of certified maps re-certifies
    c = a.compose(b)
    assert c.inverse().compose(c).order() == 1
    assert a.order() in (1, 2, 4, 8)


def test_aut_from_images_identity_and_xi():
    g = build_a2(3, 1)
    ident = aut_from_images(g, list(g.gens))
    assert ident.order() == 1
    xi = known_aut_generators(g)[-2]
    again = aut_from_images(g, [xi(i) for i in g.gens])
    assert again.perm == xi.perm
    assert again.order() == 7


def test_aut_from_images_order_obstruction():
    g = build_a2(3, 1)
    z = g.center()
    inv = next(i for i in z.members if g.element_order(i) == 2)
    images = [inv] + list(g.gens[1:])
    with pytest.raises(NotAHomomorphism):
        aut_from_images(g, images)


def test_known_generators_a2():
    g = build_a2(3, 1)
    auts = known_aut_generators(g)
    assert len(auts) == 9 + 2
    assert [a.source for a in auts] == ["central"] * 9 + ["xi", "frobenius"]
    xi, phi = auts[-2], auts[-1]
    assert xi.order() == 7
    assert phi.order() == 3
    assert all(a.order() == 2 for a in auts[:9])


def test_known_generators_b2():
    g = build_b2(2)
    auts = known_aut_generators(g)
    assert len(auts) == 8 + 2
    xi, phi = auts[-2], auts[-1]
    assert xi.order() == 15
    assert phi.order() == 4
    # xi multiplies both coordinates, the second by lambda^(q+1)
    ctx = g.meta["ctx"]
    lam = ctx.t
    lam5 = ctx.pow(lam, 5)
    for i, (a, b) in enumerate(g.labels):
        assert g.labels[xi(i)] == (ctx.mul(a, lam), ctx.mul(b, lam5))


def test_known_generators_peps():
    g = build_p_epsilon()
    auts = known_aut_generators(g)
    assert len(auts) == 18 + 2
    alpha, beta = auts[-2], auts[-1]
    assert alpha.order() == 21
    assert beta.order() == 9


def test_known_generators_unsupported_family():
    with pytest.raises(Unsupported):
        known_aut_generators(build_homocyclic(2, 4))


def test_peps_semilinear_scan_is_the_odd_part():
    g = build_p_epsilon()
    scan = scan_peps_semilinear(g)
    assert len(scan) == 63
    perms = {a.perm for a in scan}
    alpha, beta = known_aut_generators(g)[-2:]
    assert alpha.perm in perms
    assert beta.perm in perms
    assert sorted({a.order() for a in scan}) == [1, 3, 7, 9, 21]


def test_fusion_classes():
    g = build_a2(3, 1)
    fp = fusion_classes(g, known_aut_generators(g))
    assert fp.sizes == (1, 7, 56)
    assert fp.classes[0] == (0,)
    # the 7-class is exactly the nontrivial center
    assert set(fp.classes[1]) == set(g.center().members) - {0}
    # no automorphisms: everything is a singleton
    trivial = fusion_classes(g, [])
    assert trivial.sizes == (1,) * 64


def test_fusion_classes_b2_and_peps():
    b2 = build_b2(2)
    assert fusion_classes(b2, known_aut_generators(b2)).sizes == (1, 3, 60)
    pe = build_p_epsilon()
    assert fusion_classes(pe, known_aut_generators(pe)).sizes == (1, 7, 504)


def test_aut_group_orders():
    a2 = build_a2(3, 1)
    assert aut_group_order(a2, known_aut_generators(a2)) == 10752
    b2 = build_b2(2)
    assert aut_group_order(b2, known_aut_generators(b2)) == 15360
    assert aut_group_order(a2, []) == 1


def test_aut_group_order_peps():
    g = build_p_epsilon()
    assert aut_group_order(g, known_aut_generators(g)) == 16515072


def test_brute_force_small_groups():
    assert len(brute_force_aut(build_generalized_quaternion(8))) == 24
    hc = build_homocyclic(2, 4)
    auts = brute_force_aut(hc)
    assert len(auts) == 96
    # transitive on the twelve order-4 elements
    assert is_at_group(hc, auts)
    q16 = build_generalized_quaternion(16)
    auts16 = brute_force_aut(q16)
    assert len(auts16) == 32
    assert not is_at_group(q16, auts16)
    assert not is_fif_group(q16, auts16)


def test_brute_force_matches_known_generators_for_b2_1():
    g = build_b2(1)
    brute = brute_force_aut(g)
    assert len(brute) == aut_group_order(g, known_aut_generators(g)) == 24


def test_brute_force_bounds():
    with pytest.raises(TooLargeForBruteForce):
        brute_force_aut(build_p_epsilon())
    with pytest.raises(TooLargeForBruteForce):
        brute_force_aut(build_homocyclic(5, 2))


def test_at_and_fif_on_quaternion_eight():
    q8 = build_generalized_quaternion(8)
    auts = brute_force_aut(q8)
    assert is_at_group(q8, auts)
    assert is_fif_group(q8, auts)


def test_central_maps_require_family_tags():
    with pytest.raises(Unsupported):
        central_maps(build_generalized_quaternion(8))


def test_induced_actions():
    g = build_a2(3, 1)
    auts = known_aut_generators(g)
    xi = auts[-2]
    ident = induced_action_on_quotient(g, auts[0]) ** 0
    # central maps act trivially on both quotient and center
    for a in auts[:9]:
        assert induced_action_on_quotient(g, a) == ident
        assert induced_action_on_center(g, a) == ident
    # xi acts on V as multiplication by the field generator: order 7
    m = induced_action_on_quotient(g, xi)
    assert m != ident
    assert m**7 == ident


def test_commutator_matrix_shape_and_rank():
    g = build_a2(3, 1)
    c = commutator_matrix(g)
    assert (c.nrows, c.ncols) == (3, 3)
    assert c.rank() == 3
    b = build_b2(2)
    cb = commutator_matrix(b)
    assert (cb.nrows, cb.ncols) == (6, 2)
    assert cb.rank() == 2


def test_verify_lemma31_all_families():
    for g in (build_a2(3, 1), build_b2(2), build_p_epsilon()):
        rep = verify_lemma31(g)
        assert rep["all_passed"]
        names = [c["name"] for c in rep["checks"]]
        assert names == [
            "central_kernel_order",
            "central_kernel_elementary_abelian",
            "fusion_orbit_formula",
            "commutator_map_equivariant",
            "commutator_map_surjective",
        ]
    rep = verify_lemma31(build_a2(3, 1))
    kernel = next(c for c in rep["checks"] if c["name"] == "central_kernel_order")
    assert kernel["computed"] == 512
    formula = next(c for c in rep["checks"] if c["name"] == "fusion_orbit_formula")
    assert (formula["o_v"], formula["o_m"]) == (2, 2)
    onto = next(c for c in rep["checks"] if c["name"] == "commutator_map_surjective")
    assert onto["kernel_dim"] == 0


def test_verify_lemma31_rejects_plain_groups():
    with pytest.raises(Unsupported):
        verify_lemma31(build_homocyclic(2, 4))


def test_find_isomorphism_b2_1_q8():
    b1 = build_b2(1)
    q8 = build_generalized_quaternion(8)
    maps = find_isomorphism(b1, q8)
    assert sorted(maps) == list(range(8))
    # certified: products carry over
    for x in range(8):
        for y in range(8):
            assert maps[b1.mul[x][y]] == q8.mul[maps[x]][maps[y]]


def test_find_isomorphism_rejects_mismatch():
    with pytest.raises(NotFound):
        find_isomorphism(build_b2(1), build_homocyclic(3, 2))


def test_isomorphism_from_labels_peps_power():
    # (a, x) -> (a*eps, x) carries the eps^4 cocycle onto the eps one
    pe = build_p_epsilon()
    ctx = pe.meta["ctx"]
    eps = pe.meta["eps"]
    lam = ctx.pow(eps, 4)
    pl = build_p_epsilon(eps=lam)
    maps = isomorphism_from_labels(
        pl, pe, lambda lab: (ctx.mul(lab[0], eps), lab[1])
    )
    assert sorted(maps) == list(range(512))


def test_isomorphism_from_labels_rejects_wrong_map():
    pe = build_p_epsilon()
    ctx = pe.meta["ctx"]
    # squaring only the first coordinate is a label bijection, not a
    # homomorphism; swapping coordinates does not even hit the label set
    with pytest.raises(NotAHomomorphism):
        isomorphism_from_labels(pe, pe, lambda lab: (ctx.frobenius(lab[0]), lab[1]))
    with pytest.raises(NotBijective):
        isomorphism_from_labels(pe, pe, lambda lab: (lab[1], lab[0]))
