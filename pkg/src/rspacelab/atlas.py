"""Catalogue of symmetric R-spaces realized as adjoint orbits.

Each entry fixes an ambient compact algebra g, a grading element xi with
ad_xi spectrum {0, +-i}, and an involution sigma with sigma(xi) = -xi.
The space N is the orbit of xi under the sigma-fixed subgroup K, and
theta = exp(pi ad_xi) cuts out the compact dual pair whose noncompact side
carries the complexified space N_C.

Group manifolds appear via the product trick (K x K through the diagonal),
and Hermitian spaces via the doubled ambient k + k with the swap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import algebra as al
from . import roots as rt
from .algebra import SizeOutOfRange  # re-exported for callers

_PI1 = ("trivial", "Z", "Z2")


class UnsupportedRow(ValueError):
    """Row exists in the catalogue but cannot be instantiated here."""


class RatioNotIntegral(RuntimeError):
    """rank(N_C) is not an integer multiple of rank(N)."""


@dataclass(frozen=True)
class RSpaceDescriptor:
    """Catalogue row: identity, parameters and tabulated invariants."""

    id: str
    params: tuple
    table_pi1: str
    table_ratio: int
    hermitian: bool
    table_row: str
    instantiable: bool = True

    def __post_init__(self):
        assert self.table_pi1 in _PI1
        assert self.table_ratio in (1, 2)

    @property
    def label(self) -> str:
        inner = ",".join(str(p) for p in self.params)
        return f"{self.id}({inner})"


@dataclass(frozen=True, eq=False)
class SpaceInstance:
    """A realized catalogue row.

    k/h/l/p_vee bases are orthonormal coordinate rows over g_vee:
    k is the sigma-fixed algebra, h its intersection with the theta-fixed
    algebra, l = k cap p_vee the tangent directions of N at xi.
    """

    descriptor: RSpaceDescriptor
    g_vee: al.LieAlgebraBasis
    theta: al.Involution
    sigma: al.Involution
    xi: al.AlgebraElement
    k_basis: np.ndarray
    h_basis: np.ndarray
    l_basis: np.ndarray
    p_vee_basis: np.ndarray
    theta_decomp: al.CartanDecomposition
    sigma_decomp: al.CartanDecomposition


def intersect_rows(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal rows spanning span(a) cap span(b)."""
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, a.shape[1]))
    # x = a^T u in span(b)  <=>  (1 - P_b) a^T u = 0
    m = a.T - b.T @ (b @ a.T)
    _, s, vt = np.linalg.svd(m, full_matrices=True)
    k = int(np.sum(s > tol * max(1.0, s[0] if len(s) else 0.0)))
    return vt[k:] @ a


# ---------------------------------------------------------------------------
# row builders: return (ambient algebra, sigma, xi)


def _block_j(n: int) -> np.ndarray:
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = -np.eye(n)
    j[n:, :n] = np.eye(n)
    return j


def _build_quadric(p: int, q: int):
    m = p + q + 2
    g = al.build_algebra("so", m)
    d = np.ones(m)
    d[p + 1:] = -1.0
    sigma = al.involution_from_conjugation(g, np.diag(d))
    xi_mat = np.zeros((m, m))
    xi_mat[0, p + 1] = -1.0
    xi_mat[p + 1, 0] = 1.0
    return g, sigma, g.element(xi_mat)


def _build_sphere(n: int):
    return _build_quadric(0, n)


def _grassmann_grading(p: int, q: int) -> np.ndarray:
    m = p + q
    d = np.concatenate([np.full(p, q / m), np.full(q, -p / m)])
    return np.diag(1j * d)


def _build_grassmann_real(p: int, q: int):
    m = p + q
    g = al.build_algebra("su", m)
    conj = np.kron(np.eye(m), np.diag([1.0, -1.0]))
    sigma = al.involution_from_conjugation(g, conj)
    xi = g.element(al.embed_complex(_grassmann_grading(p, q)))
    return g, sigma, xi


def _build_grassmann_quaternionic(p: int, q: int):
    m = p + q
    g = al.build_algebra("su", 2 * m)
    jmat = al.embed_complex(_block_j(m))
    conj = np.kron(np.eye(2 * m), np.diag([1.0, -1.0]))
    sigma = al.involution_from_conjugation(g, jmat @ conj)
    d0 = _grassmann_grading(p, q).diagonal()
    xi = g.element(al.embed_complex(np.diag(np.concatenate([d0, d0]))))
    return g, sigma, xi


def _build_unitary_group(n: int):
    g = al.build_algebra("su", 2 * n)
    sig_mat = al.embed_complex(np.diag(np.concatenate([np.ones(n), -np.ones(n)])))
    sigma = al.involution_from_conjugation(g, sig_mat)
    xi = g.element(al.embed_complex(0.5 * _block_j(n)))
    return g, sigma, xi


def _build_orthogonal_group(n: int):
    g = al.build_algebra("so", 2 * n)
    sigma = al.involution_from_conjugation(
        g, np.diag(np.concatenate([np.ones(n), -np.ones(n)])))
    xi = g.element(0.5 * _block_j(n))
    return g, sigma, xi


def _build_unitary_mod_symplectic(n: int):
    g = al.build_algebra("so", 4 * n)
    sigma = al.involution_from_conjugation(g, _block_j(2 * n))
    r = _block_j(n)
    xi_mat = np.zeros((4 * n, 4 * n))
    xi_mat[:2 * n, :2 * n] = 0.5 * r
    xi_mat[2 * n:, 2 * n:] = -0.5 * r
    return g, sigma, g.element(xi_mat)


def _build_symplectic_group(n: int):
    g = al.build_algebra("sp", 2 * n)
    z = np.zeros((2 * n, 2 * n))
    d = np.diag(np.concatenate([np.ones(n), -np.ones(n)]))
    sigma = al.involution_from_conjugation(g, al.embed_quaternion(d, z, z, z))
    xi = g.element(0.5 * al.embed_quaternion(_block_j(n), z, z, z))
    return g, sigma, xi


def _build_unitary_mod_orthogonal(n: int):
    g = al.build_algebra("sp", n)
    z = np.zeros((n, n))
    eye = np.eye(n)
    sigma = al.involution_from_conjugation(g, al.embed_quaternion(z, z, eye, z))
    xi = g.element(0.5 * al.embed_quaternion(z, eye, z, z))
    return g, sigma, xi


def _hermitian_row(factor: al.LieAlgebraBasis, z_mat: np.ndarray):
    g = al.direct_sum(factor, factor)
    sigma = al.swap_involution(g, factor.dim)
    sz = factor.size
    xi_mat = np.zeros((2 * sz, 2 * sz))
    xi_mat[:sz, :sz] = z_mat
    xi_mat[sz:, sz:] = -z_mat
    return g, sigma, g.element(xi_mat)


def _build_grassmann_complex_hermitian(p: int, q: int):
    factor = al.build_algebra("su", p + q)
    return _hermitian_row(factor, al.embed_complex(_grassmann_grading(p, q)))


def _build_quadric_complex_hermitian(n: int):
    factor = al.build_algebra("so", n + 2)
    z = np.zeros((n + 2, n + 2))
    z[0, 1] = -1.0
    z[1, 0] = 1.0
    return _hermitian_row(factor, z)


def _build_orthogonal_mod_unitary_hermitian(n: int):
    factor = al.build_algebra("so", 2 * n)
    return _hermitian_row(factor, 0.5 * _block_j(n))


def _build_symplectic_mod_unitary_hermitian(n: int):
    factor = al.build_algebra("sp", n)
    z = np.zeros((n, n))
    zx = 0.5 * al.embed_quaternion(z, np.eye(n), z, z)
    return _hermitian_row(factor, zx)


def _pi1_grassmann_real(p, q):
    return "Z" if (p, q) == (1, 1) else "Z2"


def _pi1_quadric(p, q):
    return "Z" if p == 1 else "Z2"


# id -> (builder, param check, pi1 rule, ratio, hermitian, row label)
_ROWS = {
    "grassmann_real": (_build_grassmann_real,
                       lambda p, q: 1 <= p <= q,
                       _pi1_grassmann_real, 1, False, "1"),
    "grassmann_quaternionic": (_build_grassmann_quaternionic,
                               lambda p, q: 1 <= p <= q,
                               lambda *a: "trivial", 2, False, "2"),
    "unitary_group": (_build_unitary_group, lambda n: n >= 2,
                      lambda *a: "Z", 1, False, "3"),
    "orthogonal_group": (_build_orthogonal_group, lambda n: n >= 3,
                         lambda *a: "Z2", 1, False, "4"),
    "unitary_mod_symplectic": (_build_unitary_mod_symplectic, lambda n: n >= 2,
                               lambda *a: "Z", 1, False, "5"),
    "symplectic_group": (_build_symplectic_group, lambda n: n >= 1,
                         lambda *a: "trivial", 2, False, "6"),
    "unitary_mod_orthogonal": (_build_unitary_mod_orthogonal, lambda n: n >= 2,
                               lambda *a: "Z", 1, False, "7"),
    "sphere": (_build_sphere, lambda n: n >= 2,
               lambda *a: "trivial", 2, False, "8a"),
    "quadric_real": (_build_quadric, lambda p, q: 1 <= p <= q,
                     _pi1_quadric, 1, False, "8bc"),
    "grassmann_complex_hermitian": (_build_grassmann_complex_hermitian,
                                    lambda p, q: 1 <= p <= q,
                                    lambda *a: "trivial", 2, True, "H1"),
    "orthogonal_mod_unitary_hermitian": (_build_orthogonal_mod_unitary_hermitian,
                                         lambda n: n >= 2,
                                         lambda *a: "trivial", 2, True, "H2"),
    "symplectic_mod_unitary_hermitian": (_build_symplectic_mod_unitary_hermitian,
                                         lambda n: n >= 1,
                                         lambda *a: "trivial", 2, True, "H3"),
    "quadric_complex_hermitian": (_build_quadric_complex_hermitian,
                                  lambda n: n >= 2,
                                  lambda *a: "trivial", 2, True, "H4"),
}

# exceptional rows: listed, never instantiated
_EXCEPTIONAL = [
    RSpaceDescriptor("quaternionic_grassmann_z2", (), "Z2", 1, False, "9", False),
    RSpaceDescriptor("octonionic_projective_plane", (), "trivial", 2, False, "10", False),
    RSpaceDescriptor("su8_mod_sp4_z2", (), "Z2", 1, False, "11", False),
    RSpaceDescriptor("circle_times_e6_mod_f4", (), "Z", 1, False, "12", False),
    RSpaceDescriptor("bioctonionic_projective_plane", (), "trivial", 2, True, "H5", False),
    RSpaceDescriptor("e7_mod_e6_circle", (), "trivial", 2, True, "H6", False),
]

_DEFAULT_SWEEP = [
    ("grassmann_real", (1, 1)),
    ("grassmann_real", (1, 2)),
    ("grassmann_real", (2, 2)),
    ("grassmann_quaternionic", (1, 1)),
    ("unitary_group", (2,)),
    ("unitary_group", (3,)),
    ("orthogonal_group", (3,)),
    ("orthogonal_group", (5,)),
    ("unitary_mod_symplectic", (2,)),
    ("symplectic_group", (1,)),
    ("symplectic_group", (2,)),
    ("unitary_mod_orthogonal", (2,)),
    ("unitary_mod_orthogonal", (3,)),
    ("sphere", (2,)),
    ("sphere", (3,)),
    ("sphere", (4,)),
    ("quadric_real", (1, 2)),
    ("quadric_real", (2, 2)),
    ("grassmann_complex_hermitian", (1, 1)),
    ("grassmann_complex_hermitian", (1, 2)),
    ("orthogonal_mod_unitary_hermitian", (3,)),
    ("symplectic_mod_unitary_hermitian", (1,)),
    ("quadric_complex_hermitian", (2,)),
]


# smallest healthy parameters per catalogue row
_DEFAULT_ROW_PARAMS = {
    "grassmann_real": (1, 2),
    "grassmann_quaternionic": (1, 1),
    "unitary_group": (2,),
    "orthogonal_group": (3,),
    "unitary_mod_symplectic": (2,),
    "symplectic_group": (1,),
    "unitary_mod_orthogonal": (2,),
    "sphere": (2,),
    "quadric_real": (1, 2),
    "grassmann_complex_hermitian": (1, 1),
    "orthogonal_mod_unitary_hermitian": (3,),
    "symplectic_mod_unitary_hermitian": (1,),
    "quadric_complex_hermitian": (2,),
}


def descriptor(row_id: str, *params: int) -> RSpaceDescriptor:
    if row_id not in _ROWS:
        raise UnsupportedRow(f"unknown catalogue row {row_id!r}")
    builder, check, pi1, ratio, herm, label = _ROWS[row_id]
    if not check(*params):
        raise UnsupportedRow(f"parameters {params} out of range for {row_id}")
    return RSpaceDescriptor(id=row_id, params=tuple(params),
                            table_pi1=pi1(*params), table_ratio=ratio,
                            hermitian=herm, table_row=label)


def list_entries() -> list:
    """Default desk-scale sweep plus the non-instantiable exceptional rows."""
    return [descriptor(rid, *p) for rid, p in _DEFAULT_SWEEP] + list(_EXCEPTIONAL)


def default_entries() -> list:
    """One instance per catalogue row at its default parameters."""
    rows = [descriptor(rid, *p) for rid, p in _DEFAULT_ROW_PARAMS.items()]
    return rows + list(_EXCEPTIONAL)


def instantiate(d: RSpaceDescriptor) -> SpaceInstance:
    """Realize a catalogue row, validating the defining structure.

    Checks: sigma(xi) = -xi, the spectrum of ad_xi is {0, +-i}, sigma and
    theta = exp(pi ad_xi) commute, and k splits as h + l.
    """
    if not d.instantiable:
        raise UnsupportedRow(f"{d.id} needs an exceptional ambient algebra")
    builder = _ROWS[d.id][0]
    g, sigma, xi = builder(*d.params)

    xc = g.coords(xi)
    if np.linalg.norm(sigma.apply_coords(xc) + xc) > 1e-9:
        raise UnsupportedRow(f"{d.id}: sigma does not reverse xi")

    adxi = al.ad_operator(g, xi)
    freqs = np.linalg.eigvalsh(1j * adxi)
    ok = np.all((np.abs(freqs) < 1e-9) | (np.abs(np.abs(freqs) - 1.0) < 1e-9))
    if not ok or np.abs(freqs).max() < 0.5:
        raise UnsupportedRow(f"{d.id}: ad_xi spectrum is not {{0, +-i}}")

    theta = al.make_involution(g, expm(np.pi * adxi))
    comm = theta.operator_matrix @ sigma.operator_matrix \
        - sigma.operator_matrix @ theta.operator_matrix
    assert np.abs(comm).max() < 1e-9

    tdec = al.cartan_decompose(g, theta)
    sdec = al.cartan_decompose(g, sigma)
    k = sdec.k_basis
    p_vee = tdec.p_basis
    l = intersect_rows(k, p_vee)
    h = intersect_rows(k, tdec.k_basis)
    assert l.shape[0] + h.shape[0] == k.shape[0]
    return SpaceInstance(descriptor=d, g_vee=g, theta=theta, sigma=sigma,
                         xi=xi, k_basis=k, h_basis=h, l_basis=l,
                         p_vee_basis=p_vee, theta_decomp=tdec,
                         sigma_decomp=sdec)


def rank_ratio(s: SpaceInstance, seed: int = 11) -> int:
    """rank(N_C) / rank(N), from maximal abelian subspaces in p and l."""
    rk_nc = rt.find_maximal_abelian(
        rt.Subspace(s.g_vee, s.p_vee_basis, "p_vee"), seed).dim
    rk_n = rt.find_maximal_abelian(
        rt.Subspace(s.g_vee, s.l_basis, "l"), seed + 1).dim
    if rk_nc % rk_n:
        raise RatioNotIntegral(f"{rk_nc} not a multiple of {rk_n}")
    return rk_nc // rk_n


def verify_table(entries=None) -> list:
    """Recompute the rank ratio per instantiable row against the catalogue.

    Returns one record per row; 'ok' also requires the ratio-2 rows to be
    exactly the simply connected ones.
    """
    out = []
    for d in entries or list_entries():
        if not d.instantiable:
            out.append({"space": d.label, "row": d.table_row,
                        "computed_ratio": None, "table_ratio": d.table_ratio,
                        "pi1": d.table_pi1, "ok": True, "skipped": True})
            continue
        s = instantiate(d)
        ratio = rank_ratio(s)
        ok = (ratio == d.table_ratio
              and (ratio == 2) == (d.table_pi1 == "trivial"))
        out.append({"space": d.label, "row": d.table_row,
                    "computed_ratio": ratio, "table_ratio": d.table_ratio,
                    "pi1": d.table_pi1, "ok": bool(ok), "skipped": False})
    return out


def sphere_model_matrices(n: int):
    """Quadric-chart matrices (S, C, D) for the sphere model.

    S is the split quadratic form on the chart coordinates
    (z - 1, sqrt(2) y, z + 1), D the diagonal form it is congruent to, and
    C the congruence with C^T S C = D, scaling only the corner plane.
    """
    s_mat = np.zeros((n + 2, n + 2))
    s_mat[0, n + 1] = 1.0
    s_mat[n + 1, 0] = 1.0
    s_mat[1:n + 1, 1:n + 1] = np.eye(n)
    d_mat = np.diag(np.concatenate([np.ones(n + 1), [-1.0]]))
    a = 1.0 / np.sqrt(2.0)
    c_mat = np.eye(n + 2)
    c_mat[0, 0] = a
    c_mat[n + 1, n + 1] = a
    c_mat[0, n + 1] = -a
    c_mat[n + 1, 0] = a
    return s_mat, c_mat, d_mat
