"""Compact classical Lie algebras as dense real matrix algebras.

Everything downstream works in coordinates over a fixed trace-orthonormal
basis per algebra, so structure constants, Killing forms and ad operators
are plain numpy arrays.  Complex and quaternionic families are realized by
real embeddings:

    a + bi          ->  [[a, -b], [b, a]]          (interleaved 2x2 blocks)
    a + bi + cj+ dk ->  4x4 left-multiplication L_q (interleaved 4x4 blocks)

so su(n) lands in so(2n) and sp(n) in so(4n), and every group element we
ever exponentiate is a real orthogonal matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import expm

TOL_ALG = 1e-10

# family -> inclusive size range keeping real matrices at most 24x24
_SIZE_RANGE = {"so": (2, 24), "su": (2, 12), "u": (1, 12), "sp": (1, 6)}


class UnsupportedFamily(ValueError):
    """Family label outside {so, su, u, sp}."""


class SizeOutOfRange(ValueError):
    """Requested size outside the supported desk-scale window."""


class AlgebraMismatch(ValueError):
    """Operands living in different algebras, or a matrix not in the span."""


class NotAnInvolution(ValueError):
    """Candidate operator does not square to the identity."""


class NotAnAutomorphism(ValueError):
    """Candidate operator does not respect the bracket."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(np.asarray(a, dtype=float))
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class AlgebraElement:
    """An element of a fixed algebra, stored as its real matrix."""

    algebra_id: str
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.algebra_id != other.algebra_id:
            raise AlgebraMismatch(f"{self.algebra_id} vs {other.algebra_id}")
        return AlgebraElement(self.algebra_id, self.entries + other.entries)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.algebra_id != other.algebra_id:
            raise AlgebraMismatch(f"{self.algebra_id} vs {other.algebra_id}")
        return AlgebraElement(self.algebra_id, self.entries - other.entries)

    def __mul__(self, t: float) -> "AlgebraElement":
        return AlgebraElement(self.algebra_id, self.entries * float(t))

    __rmul__ = __mul__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra_id, -self.entries)


@dataclass(frozen=True, eq=False)
class LieAlgebraBasis:
    """A trace-orthonormal basis with precomputed structure data.

    Attributes:
        family: one of "so", "su", "u", "sp", or a constructed tag such as
            "sum" / "sub" for direct sums and subalgebras.
        n: size parameter of the family (0 for constructed algebras).
        basis: list of AlgebraElement, orthonormal for <X,Y> = tr(X^T Y).
        structure_constants: c[i,j,k] with [b_i, b_j] = sum_k c[i,j,k] b_k.
        killing_matrix: B[i,j] = tr(ad_i ad_j) in this basis.
    """

    family: str
    n: int
    algebra_id: str
    basis: list
    structure_constants: np.ndarray
    killing_matrix: np.ndarray
    # dim x size^2 matrix of flattened basis elements, for fast coordinates
    _flat: np.ndarray = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.basis[0].entries.shape[0]

    def coords(self, x) -> np.ndarray:
        """Coordinates of an element (or raw matrix) in this basis."""
        m = x.entries if isinstance(x, AlgebraElement) else np.asarray(x, float)
        return self._flat @ m.ravel()

    def from_coords(self, v: np.ndarray) -> AlgebraElement:
        m = (np.asarray(v, float) @ self._flat).reshape(self.size, self.size)
        return AlgebraElement(self.algebra_id, m)

    def element(self, m: np.ndarray) -> AlgebraElement:
        """Wrap a matrix, checking it actually lies in the span."""
        v = self.coords(m)
        res = np.linalg.norm(self.from_coords(v).entries - m)
        if res > 1e-8 * max(1.0, np.linalg.norm(m)):
            raise AlgebraMismatch(
                f"matrix is not in {self.algebra_id} (residual {res:.2e})")
        return AlgebraElement(self.algebra_id, m)

    def random_element(self, rng: np.random.Generator, scale: float = 1.0) -> AlgebraElement:
        return self.from_coords(rng.normal(size=self.dim) * scale)


def _structure_data(mats: Sequence[np.ndarray], algebra_id: str, family: str,
                    n: int, check_closure: bool = True) -> LieAlgebraBasis:
    """Assemble a LieAlgebraBasis from trace-orthonormal matrices."""
    mats = [np.asarray(m, float) for m in mats]
    d = len(mats)
    sz = mats[0].shape[0]
    flat = np.stack([m.ravel() for m in mats])
    gram = flat @ flat.T
    assert np.allclose(gram, np.eye(d), atol=1e-12), "basis not orthonormal"

    stacked = np.stack(mats)
    # brackets[i,j] = [b_i, b_j]
    brackets = np.einsum("iab,jbc->ijac", stacked, stacked) - np.einsum(
        "jab,ibc->ijac", stacked, stacked)
    # c[i,j,k] = <[b_i,b_j], b_k>_F
    c = np.einsum("ijab,kab->ijk", brackets, stacked)
    if check_closure:
        recon = np.einsum("ijk,kab->ijab", c, stacked)
        res = np.abs(recon - brackets).max()
        if res > 1e-9:
            raise AlgebraMismatch(f"span not closed under bracket ({res:.2e})")
    killing = np.einsum("ikl,jlk->ij", c, c)
    elems = [AlgebraElement(algebra_id, m) for m in mats]
    return LieAlgebraBasis(family=family, n=n, algebra_id=algebra_id,
                           basis=elems, structure_constants=_frozen(c),
                           killing_matrix=_frozen(killing), _flat=_frozen(flat))


# ---------------------------------------------------------------------------
# real embeddings


def embed_complex(m: np.ndarray) -> np.ndarray:
    """Complex n x n -> real 2n x 2n, interleaving (re, im) per coordinate."""
    m = np.asarray(m, complex)
    n = m.shape[0]
    r = np.zeros((2 * n, 2 * n))
    r[0::2, 0::2] = m.real
    r[1::2, 1::2] = m.real
    r[0::2, 1::2] = -m.imag
    r[1::2, 0::2] = m.imag
    return r


def quaternion_block(a: float, b: float, c: float, d: float) -> np.ndarray:
    """Left multiplication by a + bi + cj + dk on R^4 = H."""
    return np.array([
        [a, -b, -c, -d],
        [b, a, -d, c],
        [c, d, a, -b],
        [d, -c, b, a],
    ], dtype=float)


def embed_quaternion(a, b, c, d) -> np.ndarray:
    """Quaternionic n x n with components (a,b,c,d) -> real 4n x 4n."""
    a, b, c, d = (np.asarray(x, float) for x in (a, b, c, d))
    n = a.shape[0]
    r = np.zeros((4 * n, 4 * n))
    for p in range(n):
        for q in range(n):
            r[4 * p:4 * p + 4, 4 * q:4 * q + 4] = quaternion_block(
                a[p, q], b[p, q], c[p, q], d[p, q])
    return r


def _traceless_diagonals(n: int) -> list:
    """Orthogonal basis of real traceless diagonals, d_k = (1,..,1,-k,0,..)."""
    out = []
    for k in range(1, n):
        d = np.zeros(n)
        d[:k] = 1.0
        d[k] = -k
        out.append(d / np.sqrt(k * (k + 1)))
    return out


def _so_matrices(n: int) -> list:
    mats = []
    for a in range(n):
        for b in range(a + 1, n):
            m = np.zeros((n, n))
            m[a, b] = 1.0
            m[b, a] = -1.0
            mats.append(m / np.sqrt(2.0))
    return mats


def _su_matrices(n: int) -> list:
    mats = []
    for a in range(n):
        for b in range(a + 1, n):
            x = np.zeros((n, n), complex)
            x[a, b] = 1.0
            x[b, a] = -1.0
            mats.append(x)
            y = np.zeros((n, n), complex)
            y[a, b] = 1.0j
            y[b, a] = 1.0j
            mats.append(y)
    for d in _traceless_diagonals(n):
        mats.append(np.diag(1.0j * d))
    out = []
    for m in mats:
        r = embed_complex(m)
        out.append(r / np.linalg.norm(r))
    return out


def _u_matrices(n: int) -> list:
    out = _su_matrices(n) if n >= 2 else []
    center = embed_complex(1.0j * np.eye(n))
    out.append(center / np.linalg.norm(center))
    return out


def _sp_matrices(n: int) -> list:
    z = np.zeros((n, n))

    def unit(a, b):
        e = np.zeros((n, n))
        e[a, b] = 1.0
        return e

    mats = []
    for a in range(n):
        for b in range(a + 1, n):
            asym = unit(a, b) - unit(b, a)
            sym = unit(a, b) + unit(b, a)
            mats.append(embed_quaternion(asym, z, z, z))
            mats.append(embed_quaternion(z, sym, z, z))
            mats.append(embed_quaternion(z, z, sym, z))
            mats.append(embed_quaternion(z, z, z, sym))
    for a in range(n):
        e = unit(a, a)
        mats.append(embed_quaternion(z, e, z, z))
        mats.append(embed_quaternion(z, z, e, z))
        mats.append(embed_quaternion(z, z, z, e))
    return [m / np.linalg.norm(m) for m in mats]


def build_algebra(family: str, n: int) -> LieAlgebraBasis:
    """Build so(n), su(n), u(n) or sp(n) over the real embedding."""
    if family not in _SIZE_RANGE:
        raise UnsupportedFamily(f"unknown family {family!r}")
    lo, hi = _SIZE_RANGE[family]
    if not (lo <= n <= hi):
        raise SizeOutOfRange(f"{family}({n}) outside [{lo}, {hi}]")
    mats = {"so": _so_matrices, "su": _su_matrices,
            "u": _u_matrices, "sp": _sp_matrices}[family](n)
    return _structure_data(mats, f"{family}({n})", family, n, check_closure=False)


def direct_sum(a: LieAlgebraBasis, b: LieAlgebraBasis) -> LieAlgebraBasis:
    """Block-diagonal sum; basis is a's block then b's block."""
    sa, sb = a.size, b.size
    mats = []
    for m in a.basis:
        blk = np.zeros((sa + sb, sa + sb))
        blk[:sa, :sa] = m.entries
        mats.append(blk)
    for m in b.basis:
        blk = np.zeros((sa + sb, sa + sb))
        blk[sa:, sa:] = m.entries
        mats.append(blk)
    return _structure_data(mats, f"sum({a.algebra_id},{b.algebra_id})",
                           "sum", 0, check_closure=False)


def subalgebra(alg: LieAlgebraBasis, span_coords: np.ndarray, tag: str) -> LieAlgebraBasis:
    """Subalgebra spanned by rows of span_coords (coordinates in alg).

    Rows are re-orthonormalized; the span must be bracket-closed.
    """
    v = np.asarray(span_coords, float)
    if np.linalg.matrix_rank(v, tol=1e-10) != v.shape[0]:
        raise AlgebraMismatch("subalgebra span rows are not independent")
    q = np.linalg.qr(v.T)[0].T
    mats = [alg.from_coords(row).entries for row in q]
    return _structure_data(mats, f"sub({alg.algebra_id}:{tag})", "sub", 0)


# ---------------------------------------------------------------------------
# bracket, Killing, ad


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.algebra_id != y.algebra_id:
        raise AlgebraMismatch(f"{x.algebra_id} vs {y.algebra_id}")
    m = x.entries @ y.entries - y.entries @ x.entries
    return AlgebraElement(x.algebra_id, m)


def killing(alg: LieAlgebraBasis, x: AlgebraElement, y: AlgebraElement) -> float:
    """B(x, y) = tr(ad_x ad_y), via the precomputed Killing matrix."""
    for e in (x, y):
        if e.algebra_id != alg.algebra_id:
            raise AlgebraMismatch(f"{e.algebra_id} vs {alg.algebra_id}")
    return float(alg.coords(x) @ alg.killing_matrix @ alg.coords(y))


def pairing(alg: LieAlgebraBasis, x: AlgebraElement, y: AlgebraElement) -> float:
    """The positive-definite form <x,y> = -B(x,y)."""
    return -killing(alg, x, y)


def ad_operator(alg: LieAlgebraBasis, x: AlgebraElement) -> np.ndarray:
    """Matrix of ad_x = [x, .] in the basis coordinates of alg."""
    xc = alg.coords(x)
    # [x, b_j] = sum_i x_i c[i,j,k] b_k
    return np.einsum("i,ijk->kj", xc, alg.structure_constants)


def ad_from_coords(alg: LieAlgebraBasis, xc: np.ndarray) -> np.ndarray:
    return np.einsum("i,ijk->kj", np.asarray(xc, float), alg.structure_constants)


def conjugate(x: AlgebraElement, generator: AlgebraElement, t: float = 1.0) -> AlgebraElement:
    """Ad(exp(t g)) x, computed in the matrix representation."""
    if x.algebra_id != generator.algebra_id:
        raise AlgebraMismatch(f"{x.algebra_id} vs {generator.algebra_id}")
    r = expm(t * generator.entries)
    # generators are antisymmetric here, so r is orthogonal and r^-1 = r^T
    return AlgebraElement(x.algebra_id, r @ x.entries @ r.T)


# ---------------------------------------------------------------------------
# involutions and Cartan decompositions


@dataclass(frozen=True, eq=False)
class Involution:
    """A linear involutive automorphism in basis coordinates.

    plus_space / minus_space hold orthonormal row bases of the +1 / -1
    eigenspaces; the operator is orthogonal and symmetric for every
    constructor in this module, so the split is an orthogonal one.
    """

    algebra_id: str
    operator_matrix: np.ndarray
    plus_space: np.ndarray
    minus_space: np.ndarray

    def apply_coords(self, v: np.ndarray) -> np.ndarray:
        return self.operator_matrix @ v


def make_involution(alg: LieAlgebraBasis, op: np.ndarray) -> Involution:
    """Validate and package an involution given by a coordinate matrix."""
    op = np.asarray(op, float)
    d = alg.dim
    if op.shape != (d, d):
        raise AlgebraMismatch(f"operator shape {op.shape} vs dim {d}")
    if np.abs(op @ op - np.eye(d)).max() > TOL_ALG:
        raise NotAnInvolution("operator squared is not the identity")
    # automorphism: op[b_i, b_j] = [op b_i, op b_j], checked on structure data
    c = alg.structure_constants
    lhs = np.einsum("ijk,lk->ijl", c, op)
    rhs = np.einsum("pi,qj,pql->ijl", op, op, c)
    if np.abs(lhs - rhs).max() > 1e-8:
        raise NotAnAutomorphism("operator does not respect the bracket")
    if np.abs(op - op.T).max() > 1e-9:
        raise NotAnAutomorphism("operator is expected to be symmetric "
                                "(orthogonal involution)")
    w, vecs = np.linalg.eigh(op)
    plus = vecs[:, w > 0].T
    minus = vecs[:, w < 0].T
    return Involution(alg.algebra_id, _frozen(op), _frozen(plus), _frozen(minus))


def involution_from_conjugation(alg: LieAlgebraBasis, t_mat: np.ndarray) -> Involution:
    """Involution X -> T X T^{-1} for an orthogonal matrix T with T^2 = ±1."""
    t_mat = np.asarray(t_mat, float)
    op = np.empty((alg.dim, alg.dim))
    ti = t_mat.T  # orthogonal
    for j, b in enumerate(alg.basis):
        op[:, j] = alg.coords(t_mat @ b.entries @ ti)
    return make_involution(alg, op)


def swap_involution(sum_alg: LieAlgebraBasis, split: int) -> Involution:
    """Involution of a direct sum exchanging the two (equal) summands.

    split is the dimension of the first summand; the two summand bases must
    be images of each other under exchanging the diagonal blocks.
    """
    d = sum_alg.dim
    if d != 2 * split:
        raise AlgebraMismatch("swap needs equal summands")
    op = np.zeros((d, d))
    op[:split, split:] = np.eye(split)
    op[split:, :split] = np.eye(split)
    return make_involution(sum_alg, op)


@dataclass(frozen=True, eq=False)
class CartanDecomposition:
    """Eigenspace split g = k + p of an involution, with bracket checks."""

    alg: LieAlgebraBasis
    involution: Involution
    k_basis: np.ndarray
    p_basis: np.ndarray


def cartan_decompose(alg: LieAlgebraBasis, inv: Involution) -> CartanDecomposition:
    if inv.algebra_id != alg.algebra_id:
        raise AlgebraMismatch(f"{inv.algebra_id} vs {alg.algebra_id}")
    k, p = inv.plus_space, inv.minus_space
    c = alg.structure_constants

    def residual(rows_a, rows_b, target_rows):
        # largest component of [a, b] outside span(target)
        if len(rows_a) == 0 or len(rows_b) == 0:
            return 0.0
        br = np.einsum("ai,bj,ijk->abk", rows_a, rows_b, c)
        proj = np.einsum("abk,tk,tl->abl", br, target_rows, target_rows)
        return float(np.abs(br - proj).max())

    checks = [
        residual(k, k, k),   # [k,k] in k
        residual(k, p, p),   # [k,p] in p
        residual(p, p, k),   # [p,p] in k
    ]
    if max(checks) > TOL_ALG:
        raise NotAnAutomorphism(
            f"eigenspace bracket inclusions fail ({max(checks):.2e})")
    return CartanDecomposition(alg=alg, involution=inv,
                               k_basis=_frozen(k), p_basis=_frozen(p))


def project_onto(rows: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Orthogonal projection of coordinate vector v onto span of rows."""
    return rows.T @ (rows @ v)
