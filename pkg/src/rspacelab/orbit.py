"""Adjoint-orbit geometry: KKS form, momentum maps, critical spectra.

The complexified space N_C is the full adjoint orbit of the grading
element xi; the compact real form N sits inside as the orbit of the
sigma-fixed group.  All inner products on the orbit side use the
calibrated pairing -B/c, where the scale c is the squared Killing length
of the projection of xi onto one cascade su(2); this makes the generator
of the orbit circle action a period-one Hamiltonian with area 4 pi on the
corresponding sphere.
"""

from __future__ import annotations

from dataclasses import dataclass
import weakref

import numpy as np
from scipy.linalg import expm

from . import algebra as al
from . import roots as rt
from .atlas import SpaceInstance, intersect_rows


class BaseMismatch(ValueError):
    """Tangents anchored at different orbit points."""


class NotOnRealForm(ValueError):
    """Operation requires a point (or velocity) on N, not just N_C."""


class NonConvergence(RuntimeError):
    """A descent restart missed the gradient certificate within budget."""


class FewerThanTwoClusters(RuntimeError):
    """Gap report needs at least two critical values."""


@dataclass(frozen=True, eq=False)
class OrbitPoint:
    """A point on the adjoint orbit of xi, with its construction log."""

    space: SpaceInstance
    value: al.AlgebraElement
    log: tuple = ()


@dataclass(frozen=True, eq=False)
class OrbitTangent:
    """Tangent [x, generator] at base; the generator is retained."""

    base: OrbitPoint
    generator: al.AlgebraElement
    vector: al.AlgebraElement


@dataclass(frozen=True, eq=False)
class FlatModelPoint:
    """Image of flat coordinates v under exp of the flat through xi."""

    space: SpaceInstance
    v: np.ndarray
    point: OrbitPoint


@dataclass(frozen=True, eq=False)
class CriticalCluster:
    representative: OrbitPoint
    value: float
    hessian_index: int
    population: int


# ---------------------------------------------------------------------------
# per-instance structure cache


@dataclass(frozen=True, eq=False)
class InstanceStructure:
    """Derived data shared by the orbit, capacity and Finsler layers."""

    sos: rt.StronglyOrthogonalSet
    c_orbit: float
    rank_nc: int
    rank_n: int
    ratio: int
    k_alg: al.LieAlgebraBasis
    a_flat: rt.AbelianSubspace       # maximal abelian in l, over g coords
    a_in_k: rt.AbelianSubspace       # same matrices, over k_alg coords
    sigma_roots: rt.RestrictedRootSystem   # roots of (k, a)
    abar: rt.AbelianSubspace         # maximal abelian in p_vee, contains a
    sigma_bar_roots: rt.RestrictedRootSystem  # roots of (g, abar)
    metric: np.ndarray               # -B/c on g coordinates
    metric_chol: np.ndarray


# keyed on instance identity; weak so cache entries die with their instance
_STRUCTURE_CACHE: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def structure(s: SpaceInstance, seed: int = 23) -> InstanceStructure:
    hit = _STRUCTURE_CACHE.get(s)
    if hit is not None:
        return hit
    g = s.g_vee
    sos = rt.cascade_strongly_orthogonal(s.theta_decomp, s.xi, seed=seed)

    # squared Killing length of the xi component in one cascade su(2);
    # every cascade root must give the same number
    bmat = g.killing_matrix
    xic = g.coords(s.xi)
    cs = []
    for tri in sos.triples:
        v = tri.real_span
        gram = v @ bmat @ v.T
        coeff = np.linalg.solve(gram, v @ bmat @ xic)
        cs.append(float(-coeff @ gram @ coeff))
    c_orbit = cs[0]
    assert max(cs) - min(cs) < 1e-8 * max(1.0, c_orbit)

    a_flat = rt.find_maximal_abelian(
        rt.Subspace(g, s.l_basis, "l"), seed=seed + 1)
    abar = rt.find_maximal_abelian(
        rt.Subspace(g, s.p_vee_basis, "p_vee"), seed=seed + 2,
        must_contain=[row for row in a_flat.basis])
    rank_n, rank_nc = a_flat.dim, abar.dim
    ratio = rank_nc // rank_n

    k_alg = al.subalgebra(g, s.k_basis, "k")
    # the same abelian subspace, in k coordinates
    a_rows_k = np.array([k_alg.coords(a_flat.lift(e).entries)
                         for e in np.eye(rank_n)])
    a_in_k = rt.AbelianSubspace(
        ambient=rt.Subspace(k_alg, np.eye(k_alg.dim), "k"),
        basis=a_rows_k, seed=a_flat.seed)
    sigma_roots = rt.compute_restricted_roots(k_alg, a_in_k)
    sigma_bar_roots = rt.compute_restricted_roots(g, abar)

    metric = -bmat / c_orbit
    chol = np.linalg.cholesky(metric)
    st = InstanceStructure(sos=sos, c_orbit=c_orbit, rank_nc=rank_nc,
                           rank_n=rank_n, ratio=ratio, k_alg=k_alg,
                           a_flat=a_flat, a_in_k=a_in_k,
                           sigma_roots=sigma_roots, abar=abar,
                           sigma_bar_roots=sigma_bar_roots,
                           metric=metric, metric_chol=chol)
    _STRUCTURE_CACHE[s] = st
    return st


def calibration(s: SpaceInstance) -> float:
    """The orbit scale c with metric -B/c."""
    return structure(s).c_orbit


def inner(s: SpaceInstance, x: al.AlgebraElement, y: al.AlgebraElement) -> float:
    return -al.killing(s.g_vee, x, y) / structure(s).c_orbit


# ---------------------------------------------------------------------------
# points and tangents


def base_point(s: SpaceInstance) -> OrbitPoint:
    return OrbitPoint(space=s, value=s.xi, log=())


def transport(pt: OrbitPoint, generator: al.AlgebraElement, t: float = 1.0) -> OrbitPoint:
    value = al.conjugate(pt.value, generator, t)
    return OrbitPoint(space=pt.space, value=value,
                      log=pt.log + ((generator, float(t)),))


def random_orbit_point(s: SpaceInstance, seed: int) -> OrbitPoint:
    rng = np.random.default_rng(seed)
    gen = s.g_vee.random_element(rng)
    return transport(base_point(s), gen, 1.0)


def make_tangent(pt: OrbitPoint, generator: al.AlgebraElement) -> OrbitTangent:
    return OrbitTangent(base=pt, generator=generator,
                        vector=al.bracket(pt.value, generator))


def certificate_residual(pt: OrbitPoint) -> float:
    """Spectral drift of ad at the point against ad_xi; conjugation invariant."""
    g = pt.space.g_vee
    w1 = np.linalg.eigvalsh(1j * al.ad_operator(g, pt.value))
    w0 = np.linalg.eigvalsh(1j * al.ad_operator(g, pt.space.xi))
    return float(np.abs(np.sort(w1) - np.sort(w0)).max())


def tangent_frame(pt: OrbitPoint, orthonormal_in_metric: bool = True) -> np.ndarray:
    """Orthonormal rows spanning the tangent space [x, g] at the point."""
    g = pt.space.g_vee
    adx = al.ad_operator(g, pt.value)
    u, sv, _ = np.linalg.svd(adx)
    rank = int(np.sum(sv > 1e-9 * sv[0]))
    rows = u[:, :rank].T
    if not orthonormal_in_metric:
        return rows
    gram = rows @ structure(pt.space).metric @ rows.T
    w, vecs = np.linalg.eigh(gram)
    return (vecs / np.sqrt(w)).T @ rows


# ---------------------------------------------------------------------------
# symplectic data


def _check_same_base(x: OrbitPoint, *tangents: OrbitTangent):
    for t in tangents:
        if t.base is not x and np.abs(t.base.value.entries - x.value.entries).max() > 1e-10:
            raise BaseMismatch("tangents are not anchored at the given point")


def kks(x: OrbitPoint, v: OrbitTangent, w: OrbitTangent) -> float:
    """Orbit two-form omega_x(v, w) = <x, [a, b]> for v = [x,a], w = [x,b]."""
    _check_same_base(x, v, w)
    s = x.space
    br = al.bracket(v.generator, w.generator)
    return inner(s, x.value, br)


def hamiltonian(a: OrbitPoint) -> float:
    """Pairing 2 pi B(xi, a)/c; minimal exactly at xi, steps of 4 pi."""
    s = a.space
    return 2.0 * np.pi * al.killing(s.g_vee, s.xi, a.value) / structure(s).c_orbit


def complex_structure_check(x: OrbitPoint) -> float:
    """Max residual of (ad_x)^2 = -1 on the tangent space at x."""
    g = x.space.g_vee
    adx = al.ad_operator(g, x.value)
    frame = tangent_frame(x, orthonormal_in_metric=False)
    res = adx @ (adx @ frame.T) + frame.T
    return float(np.abs(res).max())


def moment_tn(x: OrbitPoint, v: OrbitTangent) -> al.AlgebraElement:
    """Tangent-bundle momentum [x, v]; requires x and v on the real form."""
    _check_same_base(x, v)
    s = x.space
    xc = s.g_vee.coords(x.value)
    vc = s.g_vee.coords(v.vector)
    if np.linalg.norm(s.sigma.apply_coords(xc) + xc) > 1e-8 * max(1, np.linalg.norm(xc)):
        raise NotOnRealForm("point is not sigma-odd")
    if np.linalg.norm(s.sigma.apply_coords(vc) + vc) > 1e-8 * max(1, np.linalg.norm(vc)):
        raise NotOnRealForm("velocity is not sigma-odd")
    mu = al.bracket(x.value, v.vector)
    muc = s.g_vee.coords(mu)
    assert np.linalg.norm(muc - al.project_onto(s.k_basis, muc)) < 1e-8
    return mu


def canonical_one_form(x: OrbitPoint, v: OrbitTangent, w: OrbitTangent) -> float:
    """Tautological pairing <v, hor(w)> of the fiber velocity with the
    horizontal (sigma-odd) part of the test tangent."""
    _check_same_base(x, v, w)
    s = x.space
    wc = s.g_vee.coords(w.vector)
    hor = 0.5 * (wc - s.sigma.apply_coords(wc))
    return float(s.g_vee.coords(v.vector) @ structure(s).metric @ hor)


def moment_nc(a: OrbitPoint) -> al.AlgebraElement:
    """Momentum of the K action on the orbit: the k-component of the point."""
    s = a.space
    ac = s.g_vee.coords(a.value)
    kc = 0.5 * (ac + s.sigma.apply_coords(ac))
    return s.g_vee.from_coords(kc)


# ---------------------------------------------------------------------------
# flat model and cut locus


def flat_model(s: SpaceInstance, v) -> FlatModelPoint:
    """Exponential of the flat: point = Ad(exp([xi, v~])) xi for v in abar coords."""
    st = structure(s)
    v = np.asarray(v, float)
    vt = st.abar.lift(v)
    gen = al.bracket(s.xi, vt)
    return FlatModelPoint(space=s, v=v, point=transport(base_point(s), gen, 1.0))


def _flat_cut_distance(s: SpaceInstance, v: np.ndarray) -> float:
    """Distance of root values to the half-period shell pi/2 + pi Z."""
    st = structure(s)
    vals = np.array([r.covector @ v for r in st.sigma_bar_roots.roots])
    if len(vals) == 0:
        return np.inf
    m = np.mod(vals - np.pi / 2.0, np.pi)
    return float(np.minimum(m, np.pi - m).min())


def delta_contains(fp: FlatModelPoint, band: float = 1e-6) -> bool:
    """Whether the flat point lies on the cut set Delta, within band."""
    return _flat_cut_distance(fp.space, fp.v) < band


def _geometric_cut_indicator(model: str, s: SpaceInstance, fp: FlatModelPoint) -> float:
    """Scaled distance from the brute-force cut condition.

    For the circle model the cut set is where the point is sigma-fixed; for
    the product of two spheres it is where the two block components agree
    (antipode per factor, through the swap).
    """
    g = s.g_vee
    pc = g.coords(fp.point.value)
    scale = np.linalg.norm(pc)
    if model == "cp1":
        return float(np.linalg.norm(s.sigma.apply_coords(pc) - pc)) / scale
    if model == "cp1xcp1":
        m = fp.point.value.entries
        half = m.shape[0] // 2
        return float(np.linalg.norm(m[:half, :half] - m[half:, half:])) / scale
    raise ValueError(f"unknown cut model {model!r}")


def cut_locus_oracle_check(model: str, samples: int = 1000, seed: int = 5,
                           band: float = 1e-6) -> dict:
    """Compare delta_contains with an explicit cut-locus computation.

    Half the samples are constructed on the half-period shell (the predicate
    must fire and the brute-force cut condition must hold); half are drawn
    uniformly and kept only when safely off the shell (both must be false).
    """
    from . import atlas
    if model == "cp1":
        d = atlas.descriptor("grassmann_real", 1, 1)
    elif model == "cp1xcp1":
        d = atlas.descriptor("grassmann_complex_hermitian", 1, 1)
    else:
        raise ValueError(f"unknown cut model {model!r}")
    s = atlas.instantiate(d)
    st = structure(s)
    roots = [r.covector for r in st.sigma_bar_roots.roots]
    rng = np.random.default_rng(seed)
    scale = np.pi / max(np.linalg.norm(r) for r in roots)

    # the tangent-bundle image covers the flat only along the leading
    # rank(N) coordinates (the small flat sits first in abar), so the
    # equivalence with the brute-force cut condition is sampled there
    r_dim = st.rank_n
    live = [b for b in roots if np.linalg.norm(b[:r_dim]) > 1e-9]

    def pad(u):
        v = np.zeros(st.rank_nc)
        v[:r_dim] = u
        return v

    mism = 0
    skipped = 0
    tested = 0
    for i in range(samples):
        on_shell = i % 2 == 0
        if on_shell:
            beta = live[rng.integers(len(live))]
            u = rng.normal(size=r_dim) * scale * 0.3
            # slide along beta so that beta(v) sits exactly on the shell
            bsub = beta[:r_dim]
            target = np.pi / 2.0 + np.pi * rng.integers(-1, 1)
            u = u + (target - beta @ pad(u)) * bsub / (bsub @ bsub)
            v = pad(u)
            if _flat_cut_distance(s, v) > band / 10.0:
                skipped += 1  # another root moved it off its own shell
                continue
        else:
            v = pad(rng.normal(size=r_dim) * scale)
            if _flat_cut_distance(s, v) < 1e-4:
                skipped += 1
                continue
        fp = flat_model(s, v)
        pred = delta_contains(fp, band)
        geo = _geometric_cut_indicator(model, s, fp)
        oracle = geo < 1e-6 if on_shell else geo > 1e-6
        tested += 1
        if pred != on_shell or not oracle:
            mism += 1
    return {"model": model, "samples": samples, "tested": tested,
            "skipped": skipped, "mismatches": mism}


# ---------------------------------------------------------------------------
# momentum image against the box


def moment_image_spectrum_check(s: SpaceInstance, samples: int = 1000,
                                seed: int = 17) -> dict:
    """Spectral membership test for the tangent momentum image.

    Samples (x, v) = k . (xi, [X, xi]) with X in the flat; the momentum is
    then k . X, and membership in the adjoint sweep of the open box of
    radius r = rank ratio is read off the imaginary spectrum of ad on k.
    Interior samples must land inside, exterior samples outside, and the
    spectral radius must reproduce max |alpha(X)| exactly.
    """
    st = structure(s)
    g = s.g_vee
    rng = np.random.default_rng(seed)
    r = float(st.ratio)
    covs = np.array([root.covector for root in st.sigma_roots.roots])
    if covs.size == 0:
        raise NotOnRealForm("flat carries no roots; box test is vacuous")

    xi_pt = base_point(s)
    n_int = samples // 2
    report = {"interior_pass": 0, "interior_total": 0,
              "exterior_pass": 0, "exterior_total": 0,
              "max_spectral_mismatch": 0.0}
    for i in range(samples):
        interior = i < n_int
        u = rng.normal(size=st.rank_n)
        m = np.abs(covs @ u).max()
        if m < 1e-9:
            continue
        t = rng.uniform(0.1, 0.95) if interior else rng.uniform(1.05, 2.0)
        x_coords = u * (t * r / m)
        x_lift = st.a_flat.lift(x_coords)

        k_gen = g.from_coords(rng.normal(size=s.k_basis.shape[0]) @ s.k_basis)
        x_pt = transport(xi_pt, k_gen, 1.0)
        v0 = al.bracket(x_lift, s.xi)
        rmat = expm(k_gen.entries)
        v_vec = g.element(rmat @ v0.entries @ rmat.T)
        tangent = OrbitTangent(base=x_pt, generator=al.conjugate(
            -1.0 * x_lift, k_gen, 1.0), vector=v_vec)

        mu = moment_tn(x_pt, tangent)
        mu_k = st.k_alg.coords(mu.entries)
        lam = float(np.abs(np.linalg.eigvalsh(
            1j * rt.ad_from_coords(st.k_alg, mu_k))).max())
        target = float(np.abs(covs @ x_coords).max())
        report["max_spectral_mismatch"] = max(
            report["max_spectral_mismatch"], abs(lam - target))
        inside = lam < r
        if interior:
            report["interior_total"] += 1
            report["interior_pass"] += int(inside)
        else:
            report["exterior_total"] += 1
            report["exterior_pass"] += int(not inside)
    return report


# ---------------------------------------------------------------------------
# critical points of the orbit Hamiltonian


def _merit_and_grad(s: SpaceInstance, a_coords: np.ndarray):
    """Merit |[xi, a]|^2 in the calibrated metric, and its chart gradient."""
    g = s.g_vee
    st = structure(s)
    adxi = al.ad_operator(g, s.xi)
    r = adxi @ a_coords
    w = adxi.T @ (st.metric @ r)
    ada = rt.ad_from_coords(g, a_coords)
    grad = -2.0 * (ada.T @ w)
    return float(r @ st.metric @ r), grad


def _descend(s: SpaceInstance, pt: OrbitPoint, max_iter: int = 10000) -> OrbitPoint:
    """Armijo descent on the merit, then Gauss-Newton polish."""
    g = s.g_vee
    st = structure(s)
    adxi = al.ad_operator(g, s.xi)
    a = g.coords(pt.value)
    val, grad = _merit_and_grad(s, a)
    scale = max(1.0, -al.killing(g, s.xi, s.xi))
    eta = 0.1
    it = 0
    while val > 1e-22 * scale and np.linalg.norm(grad) > 1e-12 * scale:
        it += 1
        if it > max_iter:
            raise NonConvergence(f"descent exceeded {max_iter} iterations")
        step = -grad / max(np.linalg.norm(grad), 1e-30)
        gen = g.from_coords(step)
        decr = np.linalg.norm(grad)
        accepted = False
        for _ in range(40):
            cand = al.conjugate(g.from_coords(a), gen, eta)
            cval, cgrad = _merit_and_grad(s, g.coords(cand))
            if cval <= val - 0.3 * eta * decr:
                a, val, grad = g.coords(cand), cval, cgrad
                eta = min(eta * 2.0, 1.0)
                accepted = True
                break
            eta *= 0.5
        if not accepted:
            break  # stationary for the merit; polish decides
        if it > 500:
            break

    # Gauss-Newton on the residual r(u) = ad_xi Ad(e^U) a in the metric
    lmat = st.metric_chol
    for _ in range(60):
        r = adxi @ a
        if np.linalg.norm(r) < 1e-15 * np.sqrt(scale):
            break
        # d/du_i Ad(e^U) a = [b_i, a]; columns indexed by i
        jac = adxi @ np.einsum("ijk,j->ki", s.g_vee.structure_constants, a)
        u, *_ = np.linalg.lstsq(lmat.T @ jac, -(lmat.T @ r), rcond=None)
        step = g.from_coords(u)
        nrm = np.linalg.norm(u)
        if nrm > 0.5:
            step = step * (0.5 / nrm)
        a = g.coords(al.conjugate(g.from_coords(a), step, 1.0))
    return OrbitPoint(space=s, value=g.from_coords(a), log=pt.log)


def riemannian_gradient_norm(pt: OrbitPoint) -> float:
    """Norm of grad H at the point, over a metric-orthonormal tangent frame."""
    s = pt.space
    st = structure(s)
    frame = tangent_frame(pt)
    xc = s.g_vee.coords(s.xi)
    # dH(v) = 2 pi B(xi, v)/c = -2 pi <xi, v>
    comps = 2.0 * np.pi * (frame @ (s.g_vee.killing_matrix @ xc)) / st.c_orbit
    return float(np.linalg.norm(comps))


def _hessian_index(pt: OrbitPoint, h: float = 1e-4) -> int:
    """Morse index of H at a critical point, by central differences in a chart."""
    s = pt.space
    g = s.g_vee
    frame = tangent_frame(pt)
    d = frame.shape[0]

    def f(u):
        gen = g.from_coords(u @ frame)
        return hamiltonian(transport(pt, gen, 1.0))

    hess = np.empty((d, d))
    f0 = f(np.zeros(d))
    for i in range(d):
        ei = np.zeros(d)
        ei[i] = h
        fpp = f(ei)
        fmm = f(-ei)
        hess[i, i] = (fpp - 2 * f0 + fmm) / h**2
        for j in range(i + 1, d):
            ej = np.zeros(d)
            ej[j] = h
            val = (f(ei + ej) - f(ei - ej) - f(-ei + ej) + f(-ei - ej)) / (4 * h**2)
            hess[i, j] = hess[j, i] = val
    w = np.linalg.eigvalsh(hess)
    return int(np.sum(w < -1e-5))


def find_critical_points(s: SpaceInstance, restarts: int = 50,
                         seed: int = 0) -> list:
    """Critical clusters of the orbit Hamiltonian, sorted by value.

    Each restart flows a random orbit point to the critical set (descent on
    the squared bracket merit with a Gauss-Newton polish), certifies the
    Riemannian gradient of H below 1e-7, and clusters by critical value.
    """
    clusters: list[list] = []
    values: list[float] = []
    pts = [base_point(s)] + [random_orbit_point(s, seed + 1000 + i)
                             for i in range(restarts - 1)]
    for pt in pts:
        crit = _descend(s, pt)
        gn = riemannian_gradient_norm(crit)
        if gn > 1e-7:
            raise NonConvergence(f"certificate failed, grad norm {gn:.2e}")
        values.append(hamiltonian(crit))
        clusters.append(crit)

    vals = np.array(values)
    spread = max(vals.max() - vals.min(), 1.0)
    order = np.argsort(vals)
    groups = []
    for idx in order:
        if groups and vals[idx] - vals[groups[-1][0]] <= 1e-4 * spread:
            groups[-1].append(idx)
        else:
            groups.append([idx])
    out = []
    for grp in groups:
        rep = clusters[grp[0]]
        out.append(CriticalCluster(
            representative=rep,
            value=float(np.mean([vals[i] for i in grp])),
            hessian_index=_hessian_index(rep),
            population=len(grp)))
    return out


def critical_gap_report(s: SpaceInstance, clusters=None, restarts: int = 50,
                        seed: int = 0) -> dict:
    """Gaps of the critical value ladder: total and lowest step."""
    clusters = clusters or find_critical_points(s, restarts=restarts, seed=seed)
    if len(clusters) < 2:
        raise FewerThanTwoClusters(f"found {len(clusters)} critical values")
    vals = sorted(c.value for c in clusters)
    return {"values": vals,
            "max_gap": vals[-1] - vals[0],
            "smin_gap": vals[1] - vals[0],
            "indices": [c.hessian_index for c in
                        sorted(clusters, key=lambda c: c.value)],
            "populations": [c.population for c in
                            sorted(clusters, key=lambda c: c.value)]}


def weyl_critical_values(s: SpaceInstance) -> list:
    """Frozen enumeration of critical values via root reflections.

    The critical set of the pairing meets the torus in the reflection orbit
    of xi, so the values can be generated without any optimization; used to
    cross-check the descent pipeline.
    """
    st = structure(s)
    g = s.g_vee
    t = st.sos.torus
    gt = -(t.basis @ g.killing_matrix @ t.basis.T)
    spaces = rt.complex_root_spaces(g, t)
    xi_t = t.coords_of(g.coords(s.xi))
    seen = [xi_t]
    queue = [xi_t]
    while queue:
        x = queue.pop()
        for sp in spaces:
            beta = sp.covector
            bvec = np.linalg.solve(gt, beta)
            y = x - (2.0 * (beta @ x) / (beta @ bvec)) * bvec
            if all(np.linalg.norm(y - z) > 1e-8 for z in seen):
                seen.append(y)
                queue.append(y)
    vals = sorted(2.0 * np.pi * float(-(xi_t @ gt @ w)) / st.c_orbit
                  for w in seen)
    out = [vals[0]]
    for v in vals[1:]:
        if v - out[-1] > 1e-6:
            out.append(v)
    return out


def flow_closure_residual(s: SpaceInstance, pt: OrbitPoint) -> float:
    """Residual of the period-one circle action generated by xi."""
    moved = al.conjugate(pt.value, s.xi, 2.0 * np.pi)
    return float(np.abs(moved.entries - pt.value.entries).max())
