"""Orbit geometry: points, the two-form, momentum, cut shells, descent."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rspacelab import algebra as al
from rspacelab import atlas
from rspacelab import orbit as ob

_S2 = [atlas.instantiate(atlas.descriptor("sphere", 2))]


def test_structure_is_cached_per_instance(pool):
    s = pool("sphere", 2)
    assert ob.structure(s) is ob.structure(s)
    fresh = atlas.instantiate(atlas.descriptor("sphere", 2))
    assert ob.structure(fresh) is not ob.structure(s)
    assert ob.structure(fresh).rank_nc == ob.structure(s).rank_nc


def test_calibration_hand_values(pool):
    # scale c with metric -B/c, set by the cascade sl2 of the ambient orbit
    for rid, params, c in [("grassmann_real", (1, 1), 2.0),
                           ("grassmann_complex_hermitian", (1, 1), 2.0),
                           ("sphere", (2,), 2.0),
                           ("sphere", (3,), 3.0),
                           ("grassmann_real", (1, 2), 3.0)]:
        assert abs(ob.calibration(pool(rid, *params)) - c) < 1e-9


def test_transport_stays_on_the_orbit(pool):
    s = pool("quadric_real", 1, 2)
    pt = ob.random_orbit_point(s, 4)
    assert ob.certificate_residual(pt) < 1e-9
    again = ob.transport(pt, s.g_vee.random_element(np.random.default_rng(5)))
    assert ob.certificate_residual(again) < 1e-9


def test_tangent_frame_is_metric_orthonormal(pool):
    s = pool("sphere", 2)
    x = ob.random_orbit_point(s, 8)
    frame = ob.tangent_frame(x)
    gram = frame @ ob.structure(s).metric @ frame.T
    assert np.abs(gram - np.eye(len(frame))).max() < 1e-8


def test_complex_structure_squares_to_minus_one(pool):
    for rid, params in [("sphere", (2,)), ("unitary_group", (2,)),
                        ("grassmann_real", (1, 2))]:
        x = ob.random_orbit_point(pool(rid, *params), 11)
        assert ob.complex_structure_check(x) < 1e-7


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_two_form_is_antisymmetric_and_bilinear(seed):
    s = _S2[0]
    g = s.g_vee
    rng = np.random.default_rng(seed)
    x = ob.random_orbit_point(s, seed % 97)
    a, b = (g.from_coords(rng.normal(size=g.dim)) for _ in range(2))
    v, w = ob.make_tangent(x, a), ob.make_tangent(x, b)
    assert abs(ob.kks(x, v, w) + ob.kks(x, w, v)) < 1e-9
    c = float(rng.normal())
    vc = ob.make_tangent(x, g.from_coords(c * g.coords(a)))
    assert abs(ob.kks(x, vc, w) - c * ob.kks(x, v, w)) < 1e-7


def test_two_form_rejects_foreign_tangents(pool):
    s = pool("sphere", 2)
    x = ob.random_orbit_point(s, 1)
    y = ob.random_orbit_point(s, 2)
    v = ob.make_tangent(y, s.xi)
    with pytest.raises(ob.BaseMismatch):
        ob.kks(x, v, v)


def test_hamiltonian_field_is_the_circle_action(pool):
    # dH(w) = -2 pi omega(V, w) with V the xi rotation generator as built
    # by make_tangent; the action field itself is -V
    s = pool("sphere", 2)
    x = ob.random_orbit_point(s, 9)
    g = s.g_vee
    rng = np.random.default_rng(1)
    b = g.from_coords(rng.normal(size=g.dim))
    w = ob.make_tangent(x, b)
    h = 1e-6
    d_h = (ob.hamiltonian(ob.transport(x, b, h))
           - ob.hamiltonian(ob.transport(x, b, -h))) / (2 * h)
    v = ob.make_tangent(x, s.xi)
    assert abs(d_h + 2.0 * np.pi * ob.kks(x, v, w)) < 1e-5


def test_flow_closes_with_period_one(pool):
    s = pool("unitary_group", 2)
    pt = ob.random_orbit_point(s, 3)
    assert ob.flow_closure_residual(s, pt) < 1e-9


def test_height_minimum_at_the_base_point():
    s = _S2[0]
    cp1 = atlas.instantiate(atlas.descriptor("grassmann_real", 1, 1))
    h0 = ob.hamiltonian(ob.base_point(cp1))
    assert abs(h0 + 2.0 * np.pi) < 1e-9
    vals = [ob.hamiltonian(ob.random_orbit_point(cp1, 10_000 + i))
            for i in range(10_000)]
    assert min(vals) >= h0 - 1e-9
    # the full spread of the projective line is one step of the ladder
    assert max(vals) <= h0 + 4.0 * np.pi + 1e-9


def test_momentum_requires_the_real_form(pool):
    s = pool("sphere", 2)
    x = ob.base_point(s)
    k_gen = s.g_vee.from_coords(s.k_basis[0])
    v = ob.make_tangent(x, k_gen)
    mu = ob.moment_tn(x, v)
    muc = s.g_vee.coords(mu)
    assert np.linalg.norm(muc - al.project_onto(s.k_basis, muc)) < 1e-8
    off = ob.random_orbit_point(s, 12)  # generic point leaves the real form
    with pytest.raises(ob.NotOnRealForm):
        ob.moment_tn(off, ob.make_tangent(off, k_gen))


def test_orbit_momentum_is_equivariant(pool):
    s = pool("quadric_real", 1, 2)
    g = s.g_vee
    x = ob.random_orbit_point(s, 6)
    eta = g.from_coords(al.project_onto(s.k_basis,
                                        np.random.default_rng(7).normal(
                                            size=g.dim)))
    lhs = ob.moment_nc(ob.transport(x, eta, 0.7))
    rhs = al.conjugate(ob.moment_nc(x), eta, 0.7)
    assert np.abs(lhs.entries - rhs.entries).max() < 1e-9


def test_one_form_pairs_with_horizontal_parts(pool):
    s = pool("sphere", 2)
    x = ob.base_point(s)
    g = s.g_vee
    k_gen = g.from_coords(s.k_basis[0])
    v = ob.make_tangent(x, k_gen)   # sigma-odd (horizontal) at the base
    lam = ob.canonical_one_form(x, v, v)
    want = g.coords(v.vector) @ ob.structure(s).metric @ g.coords(v.vector)
    assert abs(lam - want) < 1e-9
    # sigma-even test directions pair to zero
    p_gen = g.from_coords(s.p_vee_basis[0])
    w = ob.make_tangent(x, p_gen)
    wc = g.coords(w.vector)
    if np.linalg.norm(wc - s.sigma.apply_coords(wc)) < 1e-9:
        assert abs(ob.canonical_one_form(x, v, w)) < 1e-9


def test_flat_model_contract(pool):
    s = pool("sphere", 2)
    st_ = ob.structure(s)
    fp = ob.flat_model(s, np.zeros(st_.rank_nc))
    assert np.abs(fp.point.value.entries - s.xi.entries).max() < 1e-12
    v = 0.3 * np.ones(st_.rank_nc)
    fp = ob.flat_model(s, v)
    gen = al.bracket(s.xi, st_.abar.lift(v))
    want = al.conjugate(s.xi, gen, 1.0)
    assert np.abs(fp.point.value.entries - want.entries).max() < 1e-10


def test_shell_predicate_basics(pool):
    s = pool("grassmann_real", 1, 1)
    st_ = ob.structure(s)
    beta = st_.sigma_bar_roots.roots[0].covector
    on = ob.flat_model(s, (np.pi / 2.0) * beta / (beta @ beta))
    assert ob.delta_contains(on)
    off = ob.flat_model(s, (np.pi / 4.0) * beta / (beta @ beta))
    assert not ob.delta_contains(off)
    # the shell recurs with period pi along the root
    again = ob.flat_model(s, (3 * np.pi / 2.0) * beta / (beta @ beta))
    assert ob.delta_contains(again)


@pytest.mark.parametrize("model", ["cp1", "cp1xcp1"])
def test_cut_locus_oracle(model):
    r = ob.cut_locus_oracle_check(model, samples=400, seed=5)
    assert r["mismatches"] == 0
    assert r["tested"] >= 300


@pytest.mark.parametrize("rid,params", [("sphere", (2,)),
                                        ("quadric_real", (1, 2)),
                                        ("unitary_group", (2,)),
                                        ("grassmann_real", (1, 2))])
def test_moment_image_membership(pool, rid, params):
    r = ob.moment_image_spectrum_check(pool(rid, *params), samples=300,
                                       seed=17)
    assert r["interior_pass"] == r["interior_total"]
    assert r["exterior_pass"] == r["exterior_total"]
    assert r["max_spectral_mismatch"] < 1e-9


def test_projective_line_has_two_critical_clusters():
    cp1 = atlas.instantiate(atlas.descriptor("grassmann_real", 1, 1))
    clusters = ob.find_critical_points(cp1, restarts=30, seed=0)
    assert len(clusters) == 2
    lo, hi = clusters
    assert abs(hi.value - lo.value - 4.0 * np.pi) < 1e-6
    assert lo.hessian_index == 0 and hi.hessian_index == 2
    assert lo.population + hi.population == 30


def test_gap_report_matches_the_reflection_ladder(pool):
    s = pool("sphere", 2)
    rep = ob.critical_gap_report(s, restarts=30, seed=1)
    ladder = ob.weyl_critical_values(s)
    assert np.allclose(rep["values"], ladder, atol=1e-6)
    assert abs(rep["max_gap"] - 8.0 * np.pi) < 1e-4
    assert abs(rep["smin_gap"] - 4.0 * np.pi) < 1e-4
    assert all(i % 2 == 0 for i in rep["indices"])


def test_reflection_ladder_hand_values(pool):
    cp1 = pool("grassmann_real", 1, 1)
    assert np.allclose(ob.weyl_critical_values(cp1),
                       [-2.0 * np.pi, 2.0 * np.pi])
    s2 = pool("sphere", 2)
    assert np.allclose(ob.weyl_critical_values(s2),
                       [-4.0 * np.pi, 0.0, 4.0 * np.pi], atol=1e-9)
