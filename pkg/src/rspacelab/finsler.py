"""Schatten Finsler norms on the flat and their polytope unit balls.

For a flat direction a the operator ad_a preserves the isotropy-side
algebra k, and its singular values there are the restricted root values
|alpha(a)| with multiplicity.  The Schatten family F_p interpolates
between the spectral radius (p = inf), whose open unit ball is exactly
the root box, and the trace norm (p = 1).  F_2 restricted to the
complement of the common root kernel is a multiple of the calibrated
Riemannian norm; the multiple squared, divided by c_orbit, is the trace
form index of k inside the ambient algebra and is reported, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra as al
from . import orbit as ob
from . import roots as rt
from .atlas import SpaceInstance


class DegenerateNorm(RuntimeError):
    """Every flat direction is in the kernel of the norm."""


@dataclass(frozen=True, eq=False)
class FinslerNorm:
    """Schatten p-norm of ad_a on the isotropy algebra, a in flat coords."""

    space: SpaceInstance
    p: float

    def singular_values(self, u) -> np.ndarray:
        st = ob.structure(self.space)
        x = st.a_in_k.lift(np.asarray(u, float))
        adx = al.ad_operator(st.k_alg, x)
        return np.abs(np.linalg.eigvalsh(1j * adx))

    def __call__(self, u) -> float:
        sv = self.singular_values(u)
        if np.isinf(self.p):
            return float(sv.max())
        return float((sv ** self.p).sum() ** (1.0 / self.p))


def finsler_norm(s: SpaceInstance, p: float = np.inf) -> FinslerNorm:
    if not (p >= 1.0):
        raise ValueError(f"Schatten exponent must be >= 1, got {p}")
    return FinslerNorm(space=s, p=float(p))


def norm_kernel(s: SpaceInstance) -> np.ndarray:
    """Orthonormal rows spanning the common kernel of all restricted roots."""
    st = ob.structure(s)
    covs = [r.covector for r in st.sigma_roots.roots]
    if not covs:
        return np.eye(st.rank_n)
    m = np.array(covs)
    _, sv, vt = np.linalg.svd(m)
    keep = int(np.sum(sv > 1e-9 * sv[0]))
    return vt[keep:]


def unit_ball_vs_box(s: SpaceInstance, samples: int = 400,
                     seed: int = 0) -> dict:
    """Sampled equivalence of {F_inf < 1} with the open root box."""
    st = ob.structure(s)
    f = finsler_norm(s, np.inf)
    rng = np.random.default_rng(seed)
    agree = 0
    for _ in range(samples):
        u = rng.normal(size=st.rank_n)
        fu = f(u)
        if fu > 1e-12:
            # rescale to straddle the boundary
            u = u * (rng.uniform(0.3, 1.7) / fu)
        in_ball = f(u) < 1.0
        in_box = rt.box_contains(st.sigma_roots, u, 1.0)
        agree += in_ball == in_box
    return {"samples": samples, "agree": agree,
            "fraction": agree / samples}


def f2_vs_riemannian(s: SpaceInstance, samples: int = 200,
                     seed: int = 0) -> dict:
    """Ratio of F_2 to the calibrated Riemannian norm off the root kernel.

    The ratio squared equals c_orbit times the trace form index kappa of
    the isotropy algebra in the ambient one, so it is constant per row.
    """
    st = ob.structure(s)
    ker = norm_kernel(s)
    if ker.shape[0] == st.rank_n:
        raise DegenerateNorm(f"{s.descriptor.label}: all roots vanish")
    f2 = finsler_norm(s, 2.0)
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(samples):
        u = rng.normal(size=st.rank_n)
        u = u - ker.T @ (ker @ u)
        if np.linalg.norm(u) < 1e-6:
            continue
        x = st.a_flat.lift(u)
        riem = np.sqrt(ob.inner(s, x, x))
        ratios.append(f2(u) / riem)
    ratios = np.array(ratios)
    const = float(np.median(ratios))
    spread = float(ratios.max() - ratios.min()) / const
    return {"constant": const, "spread": spread,
            "kappa": const ** 2 / st.c_orbit, "samples": len(ratios)}


def norm_monotonicity(s: SpaceInstance, samples: int = 100, seed: int = 0,
                      ps: tuple = (1.0, 2.0, 4.0)) -> dict:
    """Worst violation of the Schatten chain F_inf <= F_p <= F_q <= F_1
    for p >= q, plus the trace-to-spectral multiplier on rank one rows."""
    st = ob.structure(s)
    exps = sorted(set(ps) | {1.0}) + [np.inf]
    norms = [finsler_norm(s, p) for p in exps]
    rng = np.random.default_rng(seed)
    worst = 0.0
    mult = None
    for _ in range(samples):
        u = rng.normal(size=st.rank_n)
        vals = [f(u) for f in norms]  # descending in the exponent
        for lo, hi in zip(vals[1:], vals[:-1]):
            worst = max(worst, lo - hi)
        if st.rank_n == 1 and vals[-1] > 1e-12:
            mult = vals[0] / vals[-1]  # F_1 / F_inf
    out = {"worst_violation": worst, "exponents": exps}
    if mult is not None:
        sv = norms[-1].singular_values(np.ones(1))
        nonzero = sv[sv > 1e-9 * max(sv.max(), 1.0)]
        out["rank1_multiplier"] = float(mult)
        out["rank1_nonzero_count"] = len(nonzero)
        # F_1 = count * F_inf only when one magnitude carries the spectrum
        out["rank1_single_magnitude"] = bool(
            nonzero.min() > (1.0 - 1e-9) * nonzero.max())
    return out
