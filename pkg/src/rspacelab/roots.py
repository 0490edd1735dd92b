"""Restricted root systems, maximal abelian subspaces, sl2 cascades.

All subspaces are row matrices of coordinates over the ambient algebra's
trace-orthonormal basis.  Joint eigendata of a commuting family is computed
from one generic linear combination; ad operators are exactly antisymmetric
in these coordinates, so i*ad is Hermitian and eigh applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import (AlgebraElement, LieAlgebraBasis, CartanDecomposition,
                      ad_from_coords, AlgebraMismatch)

TOL_ROOT = 1e-6
TOL_SL2 = 1e-8


class MaximalityNotCertified(RuntimeError):
    """Centralizer refinement failed to stabilize on an abelian subspace."""


class ClusteringAmbiguous(RuntimeError):
    """Distinct root candidates sit too close to the merge tolerance."""


class NotHermitian(ValueError):
    """The provided grading element does not square to -1 on p."""


class CascadeStalled(RuntimeError):
    """Strongly orthogonal cascade ran out of roots prematurely."""


class RootSpaceEmpty(LookupError):
    """No eigenvectors attached to the requested root."""


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of an algebra: orthonormal coordinate rows."""

    alg: LieAlgebraBasis
    coords: np.ndarray
    tag: str = ""

    @property
    def dim(self) -> int:
        return self.coords.shape[0]


def k_side(dec: CartanDecomposition) -> Subspace:
    return Subspace(dec.alg, dec.k_basis, "k")


def p_side(dec: CartanDecomposition) -> Subspace:
    return Subspace(dec.alg, dec.p_basis, "p")


@dataclass(frozen=True, eq=False)
class AbelianSubspace:
    """Maximal abelian subspace of a side, with the seed that found it."""

    ambient: Subspace
    basis: np.ndarray  # rows, orthonormal for the trace form
    seed: int

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def coords_of(self, x) -> np.ndarray:
        """Coordinates of x (element or ambient-coords vector) in this basis."""
        v = self.ambient.alg.coords(x) if isinstance(x, AlgebraElement) \
            else np.asarray(x, float)
        out = self.basis @ v
        if np.linalg.norm(v - self.basis.T @ out) > 1e-7 * max(1.0, np.linalg.norm(v)):
            raise AlgebraMismatch("element is not in the abelian subspace")
        return out

    def lift(self, c: np.ndarray) -> AlgebraElement:
        return self.ambient.alg.from_coords(np.asarray(c, float) @ self.basis)


def _kernel_within(rows: np.ndarray, op: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Rows spanning {v in span(rows) : op v = 0}."""
    if rows.shape[0] == 0:
        return rows
    m = op @ rows.T
    _, s, vt = np.linalg.svd(m, full_matrices=True)
    scale = max(1.0, s[0] if len(s) else 0.0)
    null = vt[np.sum(s > tol * scale):]
    return null @ rows


def _gram_schmidt(rows_list: Sequence[np.ndarray], tol: float = 1e-9) -> np.ndarray:
    out = []
    for r in rows_list:
        v = np.array(r, float)
        for u in out:
            v -= (u @ v) * u
        nrm = np.linalg.norm(v)
        if nrm > tol:
            out.append(v / nrm)
    return np.array(out) if out else np.zeros((0, len(rows_list[0])))


def find_maximal_abelian(side: Subspace, seed: int,
                         must_contain: Sequence = (),
                         rounds: int = 10) -> AbelianSubspace:
    """Maximal abelian subspace of side, via centralizer refinement.

    Draws a generic element of the current candidate span and intersects
    with its kernel until the span stabilizes as abelian; certifies
    maximality by checking the centralizer of the result inside the full
    side has the same dimension.  Deterministic given the seed.

    Args:
        side: subspace to search inside (closed under no bracket assumption).
        seed: RNG seed for the generic draws.
        must_contain: elements (or coordinate vectors) the subspace must
            contain; they have to commute with each other.
        rounds: redraw budget before giving up.

    Raises:
        MaximalityNotCertified: refinement did not stabilize in budget.
    """
    alg = side.alg
    rng = np.random.default_rng(seed)
    mc = [alg.coords(m) if isinstance(m, AlgebraElement) else np.asarray(m, float)
          for m in must_contain]
    span = side.coords
    for m in mc:
        span = _kernel_within(span, ad_from_coords(alg, m))

    c = alg.structure_constants
    certified = False
    for _ in range(rounds):
        if span.shape[0] <= 1:
            certified = True
            break
        # pairwise bracket residual on the candidate span
        br = np.einsum("ai,bj,ijk->abk", span, span, c)
        if np.abs(br).max() < 1e-10:
            certified = True
            break
        x = rng.normal(size=span.shape[0]) @ span
        span = _kernel_within(span, ad_from_coords(alg, x))
    if not certified:
        raise MaximalityNotCertified(
            f"no abelian stabilization within {rounds} rounds")

    # maximality: centralizer of span inside side must equal span
    cent = side.coords
    for row in span:
        cent = _kernel_within(cent, ad_from_coords(alg, row))
    if cent.shape[0] != span.shape[0]:
        raise MaximalityNotCertified(
            f"centralizer dim {cent.shape[0]} vs span dim {span.shape[0]}")

    basis = _gram_schmidt(list(mc) + list(span))
    assert basis.shape[0] == span.shape[0]
    return AbelianSubspace(ambient=side, basis=basis, seed=seed)


def rank_of(a: AbelianSubspace) -> int:
    return a.dim


# ---------------------------------------------------------------------------
# joint eigendata and clustering


def _joint_eigen(alg: LieAlgebraBasis, rows: np.ndarray, seed: int,
                 attempts: int = 5):
    """Simultaneous eigendata of the commuting family {ad_h : h in rows}.

    Returns (alphas, vecs): alphas[m, j] is the frequency of ad_{rows[j]} on
    eigenvector column vecs[:, m], meaning ad_h v = i alpha(h) v.
    """
    ads = [ad_from_coords(alg, row) for row in rows]
    rng = np.random.default_rng(seed)
    last = None
    for _ in range(attempts):
        cvec = rng.normal(size=len(ads))
        m = sum(cv * a for cv, a in zip(cvec, ads))
        _, vecs = np.linalg.eigh(1j * m)
        alphas = np.empty((vecs.shape[1], len(ads)))
        residual = 0.0
        for j, a in enumerate(ads):
            av = a @ vecs
            alphas[:, j] = (np.conj(vecs) * av).sum(axis=0).imag
            residual = max(residual, np.abs(av - 1j * alphas[:, j] * vecs).max())
        if residual <= 1e-8:
            return alphas, vecs
        last = residual
    raise ClusteringAmbiguous(
        f"joint diagonalization residual {last:.2e} after {attempts} draws")


def _cluster_covectors(alphas: np.ndarray, tol: float = TOL_ROOT):
    """Group rows of alphas within L-inf tolerance; returns (centers, groups).

    Raises ClusteringAmbiguous when two distinct centers are closer than
    10x the merge tolerance, since then the grouping depends on tol.
    """
    order = np.lexsort(alphas.T[::-1])
    groups = []
    for idx in order:
        for g in groups:
            if np.abs(alphas[idx] - alphas[g[0]]).max() <= tol:
                g.append(idx)
                break
        else:
            groups.append([idx])
    centers = np.array([alphas[g].mean(axis=0) for g in groups])
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            d = np.abs(centers[i] - centers[j]).max()
            if d < 10 * tol:
                raise ClusteringAmbiguous(
                    f"root candidates separated by {d:.2e} < 10*tol")
    return centers, groups


@dataclass(frozen=True)
class Root:
    covector: np.ndarray
    multiplicity: int


@dataclass(frozen=True, eq=False)
class RestrictedRootSystem:
    subspace: AbelianSubspace
    roots: list
    zero_multiplicity: int

    @property
    def rank(self) -> int:
        return self.subspace.dim

    def evaluate(self, x) -> np.ndarray:
        """alpha(x) for every root, x in subspace coordinates or an element."""
        v = self.subspace.coords_of(x) if not isinstance(x, np.ndarray) \
            or x.shape != (self.rank,) else np.asarray(x, float)
        return np.array([r.covector @ v for r in self.roots])


def compute_restricted_roots(alg: LieAlgebraBasis,
                             a: AbelianSubspace) -> RestrictedRootSystem:
    """Joint ad spectrum of a's basis, clustered into restricted roots.

    Multiplicities count complex joint eigenvectors, so they sum (with the
    zero multiplicity) to the ambient real dimension, and
    -B(x, x) = sum over roots of mult * alpha(x)^2 holds exactly.
    """
    alphas, _ = _joint_eigen(alg, a.basis, seed=a.seed + 7919)
    centers, groups = _cluster_covectors(alphas)
    roots = []
    zero_mult = 0
    for center, g in zip(centers, groups):
        if np.abs(center).max() <= TOL_ROOT:
            zero_mult += len(g)
        else:
            roots.append(Root(covector=center, multiplicity=len(g)))
    # negation closure sanity: spectra of real operators are symmetric
    for r in roots:
        match = [s for s in roots
                 if np.abs(s.covector + r.covector).max() <= 10 * TOL_ROOT]
        assert match and match[0].multiplicity == r.multiplicity
    assert sum(r.multiplicity for r in roots) + zero_mult == alg.dim
    return RestrictedRootSystem(subspace=a, roots=roots,
                                zero_multiplicity=zero_mult)


def box_contains(roots: RestrictedRootSystem, x, r: float) -> bool:
    """Strict box test: max over roots of |alpha(x)| < r."""
    if not roots.roots:
        return True
    vals = roots.evaluate(x)
    return bool(np.abs(vals).max() < r)


def roots_to_jsonable(rs: RestrictedRootSystem) -> dict:
    return {
        "basis": [list(map(float, row)) for row in rs.subspace.basis],
        "seed": int(rs.subspace.seed),
        "zero_multiplicity": int(rs.zero_multiplicity),
        "roots": [{"coords": [float(c) for c in r.covector],
                   "mult": int(r.multiplicity)} for r in rs.roots],
    }


# ---------------------------------------------------------------------------
# complex root spaces and the strongly orthogonal cascade


@dataclass(frozen=True, eq=False)
class ComplexRootSpace:
    """A root of the full torus action with its complex eigenvectors.

    vectors holds coordinate columns v with ad_h v = i alpha(h) v for real
    h in the torus; for a maximal torus each nonzero space is a line.
    """

    covector: np.ndarray
    vectors: np.ndarray


def complex_root_spaces(alg: LieAlgebraBasis, t: AbelianSubspace):
    alphas, vecs = _joint_eigen(alg, t.basis, seed=t.seed + 104729)
    centers, groups = _cluster_covectors(alphas)
    out = []
    for center, g in zip(centers, groups):
        if np.abs(center).max() <= TOL_ROOT:
            continue
        out.append(ComplexRootSpace(covector=center, vectors=vecs[:, g]))
    return out


def _root_space(spaces, beta: np.ndarray) -> ComplexRootSpace:
    for s in spaces:
        if np.abs(s.covector - beta).max() <= 10 * TOL_ROOT:
            if s.vectors.shape[1] == 0:
                raise RootSpaceEmpty(f"root {beta} has no vectors")
            return s
    raise RootSpaceEmpty(f"root {beta} not present")


def _is_root(spaces, beta: np.ndarray) -> bool:
    return any(np.abs(s.covector - beta).max() <= 10 * TOL_ROOT for s in spaces)


@dataclass(frozen=True, eq=False)
class SL2Triple:
    """An sl2 with [H,X] = 2X, [H,Y] = -2Y, [X,Y] = H.

    Elements are complexified: stored as (real, imaginary) pairs of algebra
    elements.  real_span rows give the compact real form su(2) inside the
    ambient algebra, spanned by Re X, Im X, Im H.
    """

    H: tuple
    X: tuple
    Y: tuple
    root: np.ndarray
    real_span: np.ndarray


@dataclass(frozen=True, eq=False)
class StronglyOrthogonalSet:
    gammas: list
    triples: list
    torus: AbelianSubspace

    @property
    def count(self) -> int:
        return len(self.gammas)


def build_sl2_triple(alg: LieAlgebraBasis, t: AbelianSubspace,
                     spaces, beta: np.ndarray) -> SL2Triple:
    """Normalized sl2 through the root space of beta.

    With C = [E, conj E] one has [C, E] = kappa0 E for a real kappa0 (it is
    negative in the compact form); H = (2/kappa0) C and a balanced rescaling
    of E, conj E then satisfy the standard relations without touching beta.
    """
    sp = _root_space(spaces, beta)
    v = sp.vectors[:, 0]
    beta = np.array(beta, float)

    def as_matrix(coords_c):
        re = alg.from_coords(coords_c.real).entries
        im = alg.from_coords(coords_c.imag).entries
        return re + 1j * im

    e_mat = as_matrix(v)
    c_mat = e_mat @ np.conj(e_mat) - np.conj(e_mat) @ e_mat  # [E, conj E]
    assert np.abs(c_mat.real).max() < 1e-9  # C = i T0 with T0 real, in the torus
    t0_coords = t.coords_of(alg.coords(c_mat.imag))
    kappa0 = -float(beta @ t0_coords)
    if abs(kappa0) < 1e-12:
        raise RootSpaceEmpty("degenerate root vector, [C, E] = 0")

    s = np.sqrt(2.0 / abs(kappa0))
    x_mat = s * e_mat
    y_mat = np.sign(kappa0) * s * np.conj(e_mat)
    h_mat = (2.0 / kappa0) * c_mat

    def comm(a, b):
        return a @ b - b @ a

    assert np.abs(comm(h_mat, x_mat) - 2 * x_mat).max() < TOL_SL2
    assert np.abs(comm(h_mat, y_mat) + 2 * y_mat).max() < TOL_SL2
    assert np.abs(comm(x_mat, y_mat) - h_mat).max() < TOL_SL2

    def pack(m):
        return (alg.element(np.ascontiguousarray(m.real)),
                alg.element(np.ascontiguousarray(m.imag)))

    real_span = _gram_schmidt([
        alg.coords(np.ascontiguousarray(x_mat.real)),
        alg.coords(np.ascontiguousarray(x_mat.imag)),
        alg.coords(np.ascontiguousarray(h_mat.imag)),
    ])
    assert real_span.shape[0] == 3
    return SL2Triple(H=pack(h_mat), X=pack(x_mat), Y=pack(y_mat),
                     root=beta, real_span=real_span)


def cascade_strongly_orthogonal(dec: CartanDecomposition, z: AlgebraElement,
                                seed: int = 0) -> StronglyOrthogonalSet:
    """Strongly orthogonal noncompact positive roots, highest first.

    Needs a Hermitian pair: z central in k with ad_z^2 = -1 on p.  Roots are
    taken against a maximal torus of k through z; noncompact positive means
    the root evaluates to +1 on z.  At each step the highest remaining root
    (for a fixed generic functional) is kept and everything not strongly
    orthogonal to it is discarded.
    """
    alg = dec.alg
    adz = ad_from_coords(alg, alg.coords(z))
    p = dec.p_basis
    if np.abs((adz @ (adz @ p.T)) + p.T).max() > 1e-8:
        raise NotHermitian("ad_z^2 is not -identity on p")
    if dec.k_basis.shape[0] and np.abs(adz @ dec.k_basis.T).max() > 1e-8:
        raise NotHermitian("z is not central in k")

    t = find_maximal_abelian(k_side(dec), seed=seed + 31, must_contain=[z])
    spaces = complex_root_spaces(alg, t)
    z_t = t.coords_of(alg.coords(z))

    pool = []
    for s in spaces:
        val = float(s.covector @ z_t)
        if abs(val - 1.0) <= 1e-6:
            pool.append(s.covector)
    if not pool:
        raise CascadeStalled("no noncompact positive roots")

    rng = np.random.default_rng(seed + 57)
    func = rng.normal(size=t.dim)
    gammas = []
    guard = 0
    while pool:
        guard += 1
        if guard > alg.dim:
            raise CascadeStalled("cascade exceeded dimension bound")
        pool.sort(key=lambda b: -(func @ b))
        gamma = pool[0]
        gammas.append(gamma)
        pool = [b for b in pool[1:]
                if not _is_root(spaces, b + gamma)
                and not _is_root(spaces, b - gamma)
                and np.abs(b - gamma).max() > 10 * TOL_ROOT]

    triples = [build_sl2_triple(alg, t, spaces, g) for g in gammas]
    # pairwise strong orthogonality of the kept roots
    for i in range(len(gammas)):
        for j in range(i + 1, len(gammas)):
            assert not _is_root(spaces, gammas[i] + gammas[j])
            assert not _is_root(spaces, gammas[i] - gammas[j])
    return StronglyOrthogonalSet(gammas=[tri.root for tri in triples],
                                 triples=triples, torus=t)
