"""Restricted roots, cascades and the root-box predicate."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rspacelab import algebra as al
from rspacelab import atlas
from rspacelab import orbit as ob
from rspacelab import roots as rt

# module-level instance for the hypothesis test (fixtures cannot feed @given)
_SPHERE = [atlas.instantiate(atlas.descriptor("sphere", 2))]

STRUCT_ROWS = [("sphere", (2,)), ("sphere", (3,)), ("quadric_real", (1, 2)),
               ("quadric_real", (2, 2)), ("unitary_group", (2,)),
               ("grassmann_real", (1, 2)), ("grassmann_quaternionic", (1, 1)),
               ("grassmann_complex_hermitian", (1, 1))]


@pytest.mark.parametrize("rid,params", STRUCT_ROWS)
def test_multiplicities_fill_the_algebra(pool, rid, params):
    st_ = ob.structure(pool(rid, *params))
    rr = st_.sigma_roots
    total = sum(r.multiplicity for r in rr.roots) + rr.zero_multiplicity
    assert total == st_.k_alg.dim


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sphere_root_pattern(pool, n):
    # one +/- pair whose multiplicity is the equator dimension
    rr = ob.structure(pool("sphere", n)).sigma_roots
    assert len(rr.roots) == 2
    assert {r.multiplicity for r in rr.roots} == {n - 1}
    a, b = (r.covector for r in rr.roots)
    assert np.linalg.norm(a + b) < 1e-9


def test_split_quadric_root_pattern(pool):
    rr = ob.structure(pool("quadric_real", 2, 2)).sigma_roots
    assert len(rr.roots) == 4
    assert all(r.multiplicity == 1 for r in rr.roots)
    covs = np.array([r.covector for r in rr.roots])
    # two orthogonal +/- pairs, one per sphere factor
    gram = covs @ covs.T
    off = np.abs(gram[np.abs(np.abs(gram) - np.abs(gram).max()) > 1e-9])
    assert off.max() < 1e-9 if off.size else True
    for a in covs:
        assert min(np.linalg.norm(a + b) for b in covs) < 1e-9


def test_covectors_pair_up(pool):
    for rid, params in STRUCT_ROWS:
        covs = [r.covector
                for r in ob.structure(pool(rid, *params)).sigma_roots.roots]
        for a in covs:
            assert min(np.linalg.norm(a + b) for b in covs) < 1e-8


@pytest.mark.parametrize("rid,params", STRUCT_ROWS)
def test_cascade_count_is_complex_rank(pool, rid, params):
    s = pool(rid, *params)
    st_ = ob.structure(s)
    sos = rt.cascade_strongly_orthogonal(s.theta_decomp, s.xi, seed=0)
    assert sos.count == st_.rank_nc


def test_cascade_triples_satisfy_sl2_relations(pool):
    s = pool("sphere", 3)
    sos = rt.cascade_strongly_orthogonal(s.theta_decomp, s.xi, seed=0)

    def cb(a, b):
        return (al.bracket(a[0], b[0]) - al.bracket(a[1], b[1]),
                al.bracket(a[0], b[1]) + al.bracket(a[1], b[0]))

    def cn(a):
        return np.hypot(np.linalg.norm(a[0].entries),
                        np.linalg.norm(a[1].entries))

    for t in sos.triples:
        hx = cb(t.H, t.X)
        assert cn((hx[0] - 2.0 * t.X[0], hx[1] - 2.0 * t.X[1])) \
            < 1e-8 * cn(t.X)
        hy = cb(t.H, t.Y)
        assert cn((hy[0] + 2.0 * t.Y[0], hy[1] + 2.0 * t.Y[1])) \
            < 1e-8 * cn(t.Y)
        xy = cb(t.X, t.Y)
        assert cn((xy[0] - t.H[0], xy[1] - t.H[1])) < 1e-8 * cn(t.H)


def test_strongly_orthogonal_sums_are_not_roots(pool):
    s = pool("sphere", 2)
    st_ = ob.structure(s)
    sos = rt.cascade_strongly_orthogonal(s.theta_decomp, s.xi, seed=0)
    gammas = np.array(sos.gammas)
    if len(gammas) < 2:
        return
    covs = np.array([r.covector
                     for r in rt.compute_restricted_roots(
                         s.g_vee, sos.torus).roots])
    for i in range(len(gammas)):
        for j in range(i + 1, len(gammas)):
            for sign in (1.0, -1.0):
                cand = gammas[i] + sign * gammas[j]
                dist = np.min(np.linalg.norm(covs - cand, axis=1))
                assert dist > 1e-6, "cascade produced a non-orthogonal pair"


def test_box_boundary_is_excluded(pool):
    st_ = ob.structure(pool("sphere", 2))
    rr = st_.sigma_roots
    alpha = rr.roots[0].covector
    x = alpha / (alpha @ alpha)  # alpha(x) = 1 exactly
    assert not rt.box_contains(rr, x, 1.0)
    assert rt.box_contains(rr, 0.999999 * x, 1.0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.floats(0.1, 10.0))
def test_box_membership_is_scale_invariant(seed, t):
    s = _SPHERE[0]
    rr = ob.structure(s).sigma_roots
    rng = np.random.default_rng(seed)
    x = rng.normal(size=1)
    r = float(rng.uniform(0.2, 2.0))
    assert rt.box_contains(rr, x, r) == rt.box_contains(rr, t * x, t * r)


def test_rootless_flat_contains_everything(pool):
    # the circle has no isotropy roots at all
    st_ = ob.structure(pool("grassmann_real", 1, 1))
    assert st_.sigma_roots.roots == [] \
        or all(np.linalg.norm(r.covector) < 1e-9
               for r in st_.sigma_roots.roots)
    assert rt.box_contains(st_.sigma_roots, np.ones(st_.rank_n) * 1e6, 1.0)


def test_maximal_abelian_is_abelian_and_certified(pool):
    s = pool("quadric_real", 2, 2)
    sub = rt.Subspace(s.g_vee, s.l_basis, "l")
    a = rt.find_maximal_abelian(sub, seed=5)
    assert rt.rank_of(a) == 2
    for i in range(a.dim):
        for j in range(a.dim):
            x = a.lift(np.eye(a.dim)[i])
            y = a.lift(np.eye(a.dim)[j])
            assert np.abs(al.bracket(x, y).entries).max() < 1e-9


def test_roots_serialization_round_trip(pool):
    rr = ob.structure(pool("sphere", 2)).sigma_roots
    blob = rt.roots_to_jsonable(rr)
    assert blob["zero_multiplicity"] == rr.zero_multiplicity
    assert len(blob["roots"]) == len(rr.roots)


