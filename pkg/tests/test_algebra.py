"""Structure constants, Killing data and embeddings of the base families."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rspacelab import algebra as al

DIMS = {("so", 4): 6, ("so", 5): 10, ("su", 2): 3, ("su", 3): 8,
        ("u", 2): 4, ("sp", 1): 3, ("sp", 2): 10}


@pytest.mark.parametrize("family,n", sorted(DIMS))
def test_dimensions(family, n):
    assert al.build_algebra(family, n).dim == DIMS[(family, n)]


@pytest.mark.parametrize("family,n,factor", [
    ("so", 4, 2.0), ("so", 5, 3.0), ("so", 6, 4.0),
    ("su", 2, 2.0), ("su", 3, 3.0), ("su", 4, 4.0),
    ("sp", 1, 2.0), ("sp", 2, 3.0),
])
def test_killing_is_family_multiple_of_trace_form(family, n, factor):
    # basis is orthonormal for -tr, so B must be -factor times the identity
    g = al.build_algebra(family, n)
    assert np.abs(np.asarray(g.killing_matrix) + factor * np.eye(g.dim)).max() \
        < 1e-9


def test_killing_u_n_has_exactly_one_flat_direction():
    g = al.build_algebra("u", 3)
    ev = np.sort(np.linalg.eigvalsh(np.asarray(g.killing_matrix)))
    assert abs(ev[-1]) < 1e-9          # the center
    assert np.abs(ev[:-1] + 3.0).max() < 1e-9
    assert ev.max() < 1e-9             # negative semidefinite throughout


def test_basis_is_trace_orthonormal():
    g = al.build_algebra("su", 3)
    for i, x in enumerate(g.basis):
        for j, y in enumerate(g.basis):
            frob = float(np.sum(x.entries * y.entries))
            assert abs(frob - (i == j)) < 1e-12
            # the positive pairing is the Killing factor on the diagonal
            assert abs(al.pairing(g, x, y) - 3.0 * (i == j)) < 1e-9


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_bracket_identities(seed):
    g = al.build_algebra("so", 5)
    rng = np.random.default_rng(seed)
    x, y, z = (g.from_coords(rng.normal(size=g.dim)) for _ in range(3))
    a, b = rng.normal(size=2)

    anti = al.bracket(x, y).entries + al.bracket(y, x).entries
    assert np.abs(anti).max() < 1e-9

    lin = al.bracket(g.from_coords(a * g.coords(x) + b * g.coords(y)), z)
    want = a * al.bracket(x, z).entries + b * al.bracket(y, z).entries
    assert np.abs(lin.entries - want).max() < 1e-8

    jac = (al.bracket(x, al.bracket(y, z)).entries
           + al.bracket(y, al.bracket(z, x)).entries
           + al.bracket(z, al.bracket(x, y)).entries)
    assert np.abs(jac).max() < 1e-8


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_killing_is_symmetric_and_invariant(seed):
    g = al.build_algebra("su", 3)
    rng = np.random.default_rng(seed)
    x, y, z = (g.from_coords(rng.normal(size=g.dim)) for _ in range(3))
    assert abs(al.killing(g, x, y) - al.killing(g, y, x)) < 1e-9
    inv = al.killing(g, al.bracket(x, y), z) \
        + al.killing(g, y, al.bracket(x, z))
    assert abs(inv) < 1e-7


def test_ad_operator_matches_bracket():
    g = al.build_algebra("sp", 2)
    rng = np.random.default_rng(0)
    x = g.from_coords(rng.normal(size=g.dim))
    y = g.from_coords(rng.normal(size=g.dim))
    lhs = al.ad_operator(g, x) @ g.coords(y)
    assert np.abs(lhs - g.coords(al.bracket(x, y))).max() < 1e-9


def test_complex_embedding_is_an_algebra_map():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert np.allclose(al.embed_complex(a @ b),
                       al.embed_complex(a) @ al.embed_complex(b))
    assert np.allclose(al.embed_complex(a.conj().T), al.embed_complex(a).T)


def test_quaternion_block_multiplication_table():
    e = al.quaternion_block(1, 0, 0, 0)
    i = al.quaternion_block(0, 1, 0, 0)
    j = al.quaternion_block(0, 0, 1, 0)
    k = al.quaternion_block(0, 0, 0, 1)
    assert np.allclose(i @ i, -e) and np.allclose(j @ j, -e)
    assert np.allclose(i @ j, k) and np.allclose(j @ i, -k)
    assert np.allclose(j @ k, i) and np.allclose(k @ i, j)


def test_conjugate_is_a_bracket_flow():
    g = al.build_algebra("so", 4)
    rng = np.random.default_rng(2)
    x = g.from_coords(rng.normal(size=g.dim))
    h = g.from_coords(rng.normal(size=g.dim))
    t = 1e-6
    moved = al.conjugate(x, h, t)
    approx = x.entries + t * al.bracket(h, x).entries
    assert np.abs(moved.entries - approx).max() < 1e-10
    # exact flow property, not just the linearization
    two = al.conjugate(al.conjugate(x, h, 0.3), h, 0.4)
    assert np.abs(two.entries - al.conjugate(x, h, 0.7).entries).max() < 1e-9


def test_direct_sum_factors_commute():
    a = al.build_algebra("su", 2)
    b = al.build_algebra("so", 4)
    s = al.direct_sum(a, b)
    assert s.dim == a.dim + b.dim
    cross = al.bracket(s.basis[0], s.basis[a.dim])
    assert np.abs(cross.entries).max() < 1e-12


def test_cartan_decompose_grades_brackets():
    g = al.build_algebra("su", 3)
    # conjugation by a signature matrix: the s(u(1)+u(2)) splitting
    t = np.diag([-1.0, 1.0, 1.0])
    inv = al.involution_from_conjugation(g, al.embed_complex(t))
    dec = al.cartan_decompose(g, inv)
    assert dec.k_basis.shape[0] + dec.p_basis.shape[0] == g.dim
    k, p = dec.k_basis, dec.p_basis
    for rows, target in ((k, k), (p, k)):
        x = g.from_coords(rows[0])
        y = g.from_coords(rows[-1])
        out = g.coords(al.bracket(x, y))
        perp = out - target.T @ (target @ out)
        assert np.abs(perp).max() < 1e-9


def test_involution_validation():
    g = al.build_algebra("su", 2)
    with pytest.raises(al.NotAnInvolution):
        al.make_involution(g, 2.0 * np.eye(g.dim))
    rot = np.eye(g.dim)
    rot[0, 0] = -1.0  # sign flip of one basis vector is not an automorphism
    with pytest.raises(al.NotAnAutomorphism):
        al.make_involution(g, rot)


def test_family_and_size_guards():
    with pytest.raises(al.UnsupportedFamily):
        al.build_algebra("g2", 2)
    with pytest.raises(al.SizeOutOfRange):
        al.build_algebra("so", 60)


def test_subalgebra_rejects_non_closed_span():
    g = al.build_algebra("so", 4)
    rng = np.random.default_rng(3)
    rows = rng.normal(size=(2, g.dim))
    with pytest.raises(al.AlgebraMismatch):
        al.subalgebra(g, rows, "nonsense")


def test_elements_of_different_algebras_do_not_mix():
    a = al.build_algebra("su", 2)
    b = al.build_algebra("so", 4)
    with pytest.raises(al.AlgebraMismatch):
        al.bracket(a.basis[0], b.basis[0])
