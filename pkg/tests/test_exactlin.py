import random
from fractions import Fraction

import pytest

from autfilt import autf, exactlin, lie, magnus
from autfilt.exactlin import (
    MkSpace,
    SympVSpace,
    SympWedgeSpace,
    TensorSpace,
    TensorVector,
    VSpace,
)

from helpers import brute_necklace_count


def unit(space, label):
    return TensorVector.unit(space, label)


# -- spans and kernels -------------------------------------------------------


def test_span_dimension():
    v = VSpace(3)
    basis = exactlin.span_basis([unit(v, 1), unit(v, 1) + unit(v, 2)])
    assert basis.dim == 2


def test_kernel_of_zero_operator_is_whole_space():
    v = VSpace(3)
    zero = exactlin.LinearOperator(v, v, lambda lab: TensorVector.zero(v))
    assert exactlin.kernel_basis(zero).dim == 3


def test_subspace_equal_by_mutual_containment():
    v = VSpace(3)
    a = exactlin.span_basis([unit(v, 1) + unit(v, 2), unit(v, 2)])
    b = exactlin.span_basis([unit(v, 1), unit(v, 1) - unit(v, 2)])
    assert exactlin.subspace_equal(a, b)
    c = exactlin.span_basis([unit(v, 1)])
    assert not exactlin.subspace_equal(a, c)


def test_space_mismatch_raises():
    with pytest.raises(ValueError):
        unit(VSpace(3), 1) + unit(VSpace(4), 1)


def test_orbit_saturate_rank2():
    v = VSpace(2)
    gens = [exactlin.elementary_sl(1, 2, 2), exactlin.elementary_sl(2, 1, 2)]
    res = exactlin.orbit_saturate(gens, [unit(v, 1)])
    assert res.basis.dim == 2 and res.closed


def test_orbit_saturate_requires_inverse():
    v = VSpace(2)
    bad = exactlin.LinearOperator(v, v, lambda lab: unit(v, lab))
    with pytest.raises(ValueError):
        exactlin.orbit_saturate([bad], [unit(v, 1)])


def test_orbit_output_is_generator_stable():
    n = 3
    space = MkSpace(n, 1)
    gens = [
        exactlin.induced_on(exactlin.elementary_sl(a, b, n), space)
        for a in range(1, n + 1)
        for b in range(1, n + 1)
        if a != b
    ]
    seed = magnus.johnson_image(autf.make_magnus_C(1, 2, n), 1).to_mk_vector()
    basis = exactlin.orbit_saturate(gens, [seed]).basis
    for op in gens:
        for row in basis.rows.values():
            assert basis.contains(op.apply(TensorVector(space, row)))


# -- the contraction ---------------------------------------------------------


def test_phi_on_raw_dual_tensor():
    dt = exactlin.DualTensorSpace(3, 3)
    assert exactlin.phi_map(TensorVector(dt, {(1, (1, 2, 3)): 1})) == TensorVector(
        TensorSpace(3, 2), {(2, 3): 1}
    )
    assert not exactlin.phi_map(TensorVector(dt, {(1, (2, 3, 1)): 1}))


def test_phi_on_bracket():
    # contraction of e1* with [e1, e2] leaves e2
    m1 = exactlin.e_delta(3, 1, 1, (1, 2))
    assert exactlin.phi_map(m1) == TensorVector(TensorSpace(3, 1), {(2,): 1})


def test_phi_kills_rows_avoiding_dual_index():
    n, k = 4, 2
    for d in range(1, n + 1):
        for w in lie.lyndon_words(n, k + 1):
            if d in w:
                continue
            assert not exactlin.phi_map(unit(MkSpace(n, k), (d, w)))


def test_phi_of_leading_row_is_plain_tensor():
    # e_i* against the left-normed bracket (e_i, e_eps) contracts to e_eps
    n, k = 5, 3
    for i, eps in ((1, (2, 3, 4)), (2, (3, 3, 5)), (4, (1, 5, 2))):
        vec = exactlin.e_delta(n, k, i, (i,) + eps)
        assert exactlin.phi_map(vec) == TensorVector(TensorSpace(n, k), {eps: 1})


def test_phi_equivariance_sampled():
    rng = random.Random(3)
    n, k = 4, 2
    space = MkSpace(n, k)
    phi_op = exactlin.phi_operator(n, k)
    labels = space.labels()
    for _ in range(40):
        a, b = rng.sample(range(1, n + 1), 2)
        E = exactlin.elementary_sl(a, b, n)
        Em = exactlin.induced_on(E, space)
        Et = exactlin.induced_on(E, TensorSpace(n, k))
        v = unit(space, rng.choice(labels))
        assert phi_op.apply(Em.apply(v)) == Et.apply(phi_op.apply(v))


def test_tau_of_t_and_s_families():
    n = 5
    assert not exactlin.tau_map(
        magnus.johnson_image(autf.make_T(1, (2, 3, 4), n), 2)
    )
    got = exactlin.tau_map(magnus.johnson_image(autf.make_S((1, 2), 3, 4, n), 2))
    assert got == TensorVector(TensorSpace(n, 2), {(1, 2): 1, (2, 1): -1})


# -- cyclic shift and the two shift-related subspaces ------------------------


def test_cyclic_shift_basis_action():
    t = TensorSpace(3, 2)
    assert exactlin.cyclic_shift(unit(t, (1, 2))) == unit(t, (2, 1))


def test_necklace_count_against_brute_force():
    for n in (2, 3, 4):
        for k in (2, 3, 4):
            assert exactlin.necklace_count(n, k) == brute_necklace_count(n, k)


def test_invariant_basis_dimension_and_fixedness():
    # the pointwise shift-invariant subspace has necklace-count dimension
    for n, k in ((3, 2), (3, 3), (4, 2)):
        basis = exactlin.cyclic_invariant_basis(n, k)
        assert len(basis) == exactlin.necklace_count(n, k)
        for v in basis:
            assert exactlin.cyclic_shift(v) == v
    assert len(exactlin.cyclic_invariant_basis(3, 2)) == 6


def test_w_basis_dimension_and_stability():
    # the shift-difference span is a complement of the invariants and is
    # stable under the shift as a subspace
    for n, k in ((3, 2), (3, 3), (5, 2)):
        w = exactlin.w_basis(n, k)
        assert w.dim == n ** k - exactlin.necklace_count(n, k)
        for row in w.rows.values():
            assert w.contains(exactlin.cyclic_shift(TensorVector(TensorSpace(n, k), row)))


def test_shift_differences_span_w():
    # differences of a monomial and its shift generate the whole space W,
    # including the backward differences realized by the s-family values
    n, k = 3, 3
    w = exactlin.w_basis(n, k)
    t = TensorSpace(n, k)
    for mono in t.labels():
        back = mono[-1:] + mono[:-1]
        assert w.contains(unit(t, mono) - unit(t, back))


# -- elementary transvections and their lifts --------------------------------


def test_elementary_action_on_v():
    E = exactlin.elementary_sl(1, 2, 3)
    v = VSpace(3)
    assert E.apply(unit(v, 1)) == unit(v, 1)
    assert E.apply(unit(v, 2)) == unit(v, 2) + unit(v, 1)
    assert E.inverse.apply(E.apply(unit(v, 2))) == unit(v, 2)


def test_elementary_action_on_dual():
    E = exactlin.elementary_sl(1, 2, 3)
    dual = exactlin.DualSpace(3)
    Ed = exactlin.induced_on(E, dual)
    assert Ed.apply(unit(dual, 1)) == unit(dual, 1) - unit(dual, 2)
    assert Ed.apply(unit(dual, 2)) == unit(dual, 2)


def test_elementary_rejects_equal_indices():
    with pytest.raises(ValueError):
        exactlin.elementary_sl(1, 1, 3)


def test_c_count():
    assert exactlin.c_count((1, (2, 3, 4))) == 0
    assert exactlin.c_count((1, (1, 2, 1))) == 2
    assert exactlin.c_count((2, (2, 2, 2))) == 3


def test_z_reduction_sampled_deltas():
    cases = [
        (5, 2, (1, (1, 2, 1)), 3),
        (5, 2, (2, (2, 2, 2)), 4),
        (5, 3, (1, (1, 3, 1, 4)), 2),
        (5, 3, (4, (4, 4, 1, 4)), 2),
    ]
    for n, k, delta, fresh in cases:
        r = exactlin.z_reduction_check(n, k, delta, fresh)
        assert r.ok
        assert r.leading_coefficient == 2 ** r.c_value - 2


def test_closing_identity_and_negative_control():
    assert exactlin.closing_identity_check(4, 2, 1, 2, (3, 4))
    assert exactlin.closing_identity_check(5, 3, 1, 2, (3, 4, 5))
    assert not exactlin.closing_identity_check(4, 2, 1, 2, (3, 4), mutate_sign=True)


def test_kernel_claim_small():
    rep = exactlin.kernel_claim_check(4, 2)
    assert rep.equal and rep.seeds_in_kernel and rep.saturation_closed
    assert rep.ambient_dimension == 80
    assert rep.kernel_dimension == 64


def test_kernel_claim_early_stop_mode():
    rep = exactlin.kernel_claim_check(4, 2, full_closure=False)
    assert rep.equal and rep.orbit_inside_kernel
    assert not rep.saturation_closed


# -- symplectic layer --------------------------------------------------------


def test_sigma_has_order_four():
    g = 2
    sig = exactlin.sp_generator("sigma", 1, g=g)
    space = SympVSpace(g)
    for lab in space.labels():
        v = unit(space, lab)
        w = v
        for _ in range(4):
            w = sig.apply(w)
        assert w == v


def test_sp_generators_preserve_form():
    g = 3
    assert exactlin.preserves_symplectic_form(exactlin.sp_generator("sigma", 2, g=g))
    assert exactlin.preserves_symplectic_form(exactlin.sp_generator("tau", 1, 3, g=g))
    for t in exactlin.extended_sp_generators(2):
        assert exactlin.preserves_symplectic_form(t)


def test_tau_lift_identity_with_spectator():
    g = 3
    w3 = SympWedgeSpace(g, 3)
    tau12 = exactlin.wedge_lift(exactlin.sp_generator("tau", 1, 2, g=g), 3)
    x = ("b", 3)  # fixed by tau_12
    lhs = tau12.apply(unit(w3, (("a", 1), ("b", 1), x)))
    rhs = unit(w3, (("a", 1), ("b", 1), x)) + unit(w3, (("a", 1), ("a", 2), x))
    assert lhs == rhs


def test_sigma_lift_identity():
    g = 3
    w3 = SympWedgeSpace(g, 3)
    sig1 = exactlin.wedge_lift(exactlin.sp_generator("sigma", 1, g=g), 3)
    x = ("b", 3)
    lhs = sig1.apply(unit(w3, (("a", 1), ("a", 2), x)))
    assert lhs == unit(w3, (("b", 1), ("a", 2), x))


def test_wedge_lift_is_multiplicative_sampled():
    g = 2
    rng = random.Random(9)
    ops = [
        exactlin.sp_generator("sigma", 1, g=g),
        exactlin.sp_generator("sigma", 2, g=g),
        exactlin.sp_generator("tau", 1, 2, g=g),
    ]
    w2 = SympWedgeSpace(g, 2)
    for _ in range(20):
        a, b = rng.choice(ops), rng.choice(ops)
        la, lb = exactlin.wedge_lift(a, 2), exactlin.wedge_lift(b, 2)
        for lab in w2.labels():
            v = unit(w2, lab)
            # lift of the composite equals the composite of the lifts
            composed = la.apply(lb.apply(v))
            base_then_lift = exactlin.wedge_lift(_compose_base(a, b, g), 2).apply(v)
            assert composed == base_then_lift


def _compose_base(a, b, g):
    space = SympVSpace(g)

    def fn(label):
        return a.apply(b.image_of(label))

    def fn_inv(label):
        return b.inverse.apply(a.inverse.image_of(label))

    return exactlin._pair_inverses(
        exactlin.LinearOperator(space, space, fn, name="comp"),
        exactlin.LinearOperator(space, space, fn_inv, name="comp^-1"),
    )


def test_wedge3_orbit_dimensions():
    for g, expected in ((3, 20), (4, 56)):
        space = SympWedgeSpace(g, 3)
        assert space.dimension == expected
        gens = []
        for i in range(1, g + 1):
            gens.append(exactlin.wedge_lift(exactlin.sp_generator("sigma", i, g=g), 3))
            for j in range(i + 1, g + 1):
                gens.append(exactlin.wedge_lift(exactlin.sp_generator("tau", i, j, g=g), 3))
        seed = unit(space, (("a", 1), ("a", 2), ("b", 2)))
        res = exactlin.orbit_saturate(gens, [seed])
        assert res.basis.dim == expected and res.closed


def test_hom_wedge_orbit_spans():
    # the single conjugation value generates the full 9-dimensional
    # Hom(V, wedge^2 V) under the transvection action at n = 3
    n = 3
    space = exactlin.HomWedgeSpace(n)
    assert space.dimension == 9
    gens = [
        exactlin.induced_on(exactlin.elementary_sl(a, b, n), space)
        for a in range(1, n + 1)
        for b in range(1, n + 1)
        if a != b
    ]
    seed = magnus.johnson_image(
        autf.make_magnus_C(1, 2, n), 1
    ).to_hom_wedge2_vector()
    res = exactlin.orbit_saturate(gens, [seed])
    assert res.basis.dim == 9 and res.closed


def test_vector_json_uses_fraction_strings():
    v = TensorVector(VSpace(2), {1: Fraction(1, 3)})
    obj = v.to_json_obj()
    assert obj["coords"] == [["1", "1/3"]]


def test_subspace_basis_json_shape():
    v = VSpace(2)
    basis = exactlin.span_basis([unit(v, 1) + unit(v, 2).scale(Fraction(1, 2))])
    obj = basis.to_json_obj()
    assert obj["space"] == "V(n=2)"
    assert obj["dimension"] == 1
    # rows are content-stripped integer vectors serialized as fraction strings
    assert obj["rows"] == [[["1", "2"], ["2", "1"]]]
