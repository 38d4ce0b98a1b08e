import random
from fractions import Fraction

import pytest

from autfilt import autf, exactlin, lie, magnus
from autfilt.autf import word

from helpers import left_normed_derivation, random_word


def test_expand_generator():
    s = magnus.magnus_expand(word(2, 1), 3)
    assert s.coeffs == {(): 1, (1,): 1}


def test_expand_cancelling_word_is_one():
    s = magnus.magnus_expand(word(2, 1, -1), 4)
    assert s.coeffs == {(): 1}


def test_expand_inverse_generator_geometric_series():
    s = magnus.magnus_expand(word(2, -1), 3)
    assert s.coeffs == {(): 1, (1,): -1, (1, 1): 1, (1, 1, 1): -1}


def test_expand_commutator_lowest_degree():
    c = autf.word_commutator(word(2, 1), word(2, 2))
    s = magnus.magnus_expand(c, 3)
    assert s.constant_term == 1
    assert s.homogeneous_part(1) == {}
    assert s.homogeneous_part(2) == {(1, 2): 1, (2, 1): -1}


def test_homomorphism_property_random():
    rng = random.Random(11)
    for _ in range(40):
        u = random_word(rng, 3, rng.randrange(0, 8))
        v = random_word(rng, 3, rng.randrange(0, 8))
        K = 4
        assert magnus.magnus_expand(u * v, K) == magnus.magnus_expand(
            u, K
        ) * magnus.magnus_expand(v, K)


def test_depth_identity():
    d = magnus.johnson_depth(autf.identity_automorphism(3), 6)
    assert d.value is None and d.label == ">=6"


def test_depth_conjugation_generator():
    assert magnus.johnson_depth(autf.make_magnus_C(1, 2, 3), 4).value == 1


def test_depth_t_family():
    assert magnus.johnson_depth(autf.make_T(1, (2, 3, 4), 5), 5).value == 2


def test_depth_s_family_cutoff4():
    assert magnus.johnson_depth(autf.make_S((1, 2), 3, 4, 5), 4).value == 2


def test_depth_zero_for_non_ia():
    assert magnus.johnson_depth(autf.make_nielsen("L", 1, 2, 1, 3), 4).value == 0


def test_image_conjugation_generator():
    ji = magnus.johnson_image(autf.make_magnus_C(1, 2, 3), 1)
    assert ji.components == {1: lie.LieElement(3, 2, {(1, 2): Fraction(1)})}


def test_image_commutator_multiplier():
    ji = magnus.johnson_image(autf.make_magnus_M(1, 2, 3, 3), 1)
    assert ji.components == {1: lie.LieElement(3, 2, {(2, 3): Fraction(1)})}


def test_image_t_family_is_left_normed_bracket():
    n, k = 5, 2
    for i, omega in ((1, (2, 3, 4)), (2, (3, 1, 3)), (5, (4, 3, 2))):
        ji = magnus.johnson_image(autf.make_T(i, omega, n), k)
        expected = lie.left_normed_of_generators(n, omega)
        assert ji.components == {i: expected}


def test_image_additive_on_products():
    n, k = 4, 1
    rng = random.Random(3)
    for _ in range(20):
        i, j = rng.sample(range(1, n + 1), 2)
        a = autf.make_magnus_C(i, j, n)
        l = rng.choice([x for x in range(1, n + 1) if x not in (i, j)])
        b = autf.make_magnus_M(j, i, l, n)
        assert magnus.johnson_image(a.compose(b), k) == magnus.johnson_image(
            a, k
        ) + magnus.johnson_image(b, k)


def test_image_depth_error_reports_offending_degree():
    with pytest.raises(magnus.DepthError) as exc:
        magnus.johnson_image(autf.make_magnus_C(1, 2, 3), 2)
    assert exc.value.degree == 2
    assert exc.value.index == 1


def test_image_components_pass_dynkin():
    ji = magnus.johnson_image(autf.make_S((1, 2), 3, 4, 5), 2)
    for v in ji.components.values():
        assert lie.is_lie_element(v.tensor_coords())


def test_commutator_depth_adds_up():
    # depth of a group commutator is at least the sum of the depths
    rng = random.Random(13)
    n = 4
    gens = [autf.make_magnus_C(1, 2, n), autf.make_magnus_M(2, 3, 4, n)]
    for _ in range(10):
        a, b = rng.choice(gens), rng.choice(gens)
        c = autf.group_commutator(a, b)
        assert magnus.johnson_depth(c, 4).at_least(2)


def test_lower_central_containment():
    # k-fold left-normed commutators of degree-1 generators have depth >= k
    rng = random.Random(17)
    n = 5
    for k in (2, 3):
        for _ in range(10):
            factors = []
            for _ in range(k):
                i, j = rng.sample(range(1, n + 1), 2)
                if rng.random() < 0.5:
                    factors.append(autf.make_magnus_C(i, j, n))
                else:
                    l = rng.choice([x for x in range(1, n + 1) if x not in (i, j)])
                    factors.append(autf.make_magnus_M(i, j, l, n))
            c = autf.left_normed_group_commutator(factors)
            assert magnus.johnson_depth(c, k + 2).at_least(k)


def test_commutator_image_matches_derivation_oracle():
    # dual-route check: nested commutator images agree with nested
    # derivation brackets computed without any Magnus expansion
    n = 5
    cases = [
        [autf.make_magnus_M(1, 2, 3, n), autf.make_magnus_M(2, 1, 3, n)],
        [autf.make_magnus_M(3, 4, 1, n), autf.make_magnus_M(4, 3, 2, n)],
        [
            autf.make_magnus_M(4, 5, 1, n),
            autf.make_magnus_C(4, 2, n),
            autf.make_magnus_M(5, 4, 3, n),
        ],
    ]
    for factors in cases:
        k = len(factors)
        got = magnus.johnson_image(autf.left_normed_group_commutator(factors), k)
        expected = left_normed_derivation(factors, n)
        assert {i: v.tensor_coords() for i, v in got.components.items()} == expected


def test_equivariance_under_transvection_lift():
    # conjugating by g transforms the image by the induced action of the
    # inverse of the abelianization of g
    n, k = 4, 1
    # x2 -> x1 x2 abelianizes to e2 -> e2 + e1, the transvection E(1,2)
    g = autf.make_nielsen("L", 2, 1, 1, n)
    phi = autf.make_magnus_M(1, 2, 3, n)
    lifted = exactlin.induced_on(
        exactlin.elementary_sl(1, 2, n), exactlin.MkSpace(n, k)
    )
    lhs = magnus.johnson_image(phi.conjugate(g), k).to_mk_vector()
    rhs = lifted.inverse.apply(magnus.johnson_image(phi, k).to_mk_vector())
    assert lhs == rhs


def test_equivariance_under_signed_permutation():
    n, k = 4, 2
    perm = {1: 2, 2: 3, 3: 4, 4: 1}
    g = autf.make_signed_permutation(n, perm, {3: -1})
    mat = autf.abelianized_matrix(g)
    base = exactlin.operator_from_matrix(mat, n, name="perm")
    lifted = exactlin.induced_on(base, exactlin.MkSpace(n, k))
    phi = autf.make_T(1, (2, 3, 4), n)
    lhs = magnus.johnson_image(phi.conjugate(g), k).to_mk_vector()
    rhs = lifted.inverse.apply(magnus.johnson_image(phi, k).to_mk_vector())
    assert lhs == rhs


def test_image_json_round_trip():
    ji = magnus.johnson_image(autf.make_S((1, 2), 3, 4, 5), 2)
    assert magnus.JohnsonImage.from_json(ji.to_json()) == ji


def test_hom_wedge2_vector():
    n = 3
    vec = magnus.johnson_image(autf.make_magnus_C(1, 2, n), 1).to_hom_wedge2_vector()
    assert vec.coords == {(1, (1, 2)): Fraction(1)}
