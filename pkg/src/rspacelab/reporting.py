"""Invariant suites and deterministic report rendering.

Each suite re-derives a batch of structural facts on a handful of catalogue
rows and emits flat check records {id, claim, status, computed, expected,
tolerance}.  Rendering is pure: the same master seed always produces the
same bytes, so reports can be diffed across machines.  Per-suite seeds are
the master seed plus a fixed offset, which keeps suites independent of the
order they run in.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from . import __version__
from . import algebra as al
from . import atlas
from . import capacity as cap
from . import finsler as fin
from . import orbit as ob
from . import roots as rt


class UnknownSuite(ValueError):
    """Suite name outside the published set."""


SUITE_NAMES = ("algebra", "roots", "orbit", "delta", "critical",
               "capacity", "finsler")

# master seed -> per-suite stream; offsets fixed so partial runs reproduce
SUITE_OFFSETS = {"algebra": 11, "roots": 23, "orbit": 37, "delta": 41,
                 "critical": 53, "capacity": 67, "finsler": 79}

DEFAULT_TOL = {
    "alg": 1e-10,       # exact algebraic identities
    "killing": 1e-9,    # Killing spectrum vs family multiple
    "j2": 1e-7,         # J^2 + id on orbit tangents
    "form": 1e-9,       # orbit two-form identities
    "sl2": 1e-8,        # bracket relations of cascade triples
    "gap_rel": 1e-3,    # optimizer-found level gaps, relative
    "cap_rel": 1e-6,    # capacity formulas, relative
    "sys_abs": 1e-6,    # pinned systoles, absolute
    "band": 1e-6,       # shell thickness for the cut predicate
    "spread": 1e-8,     # Schatten-2 vs metric, relative spread
    "mono": 1e-10,      # Schatten exponent monotonicity
}

# default rows per suite; small enough that a full run stays interactive
_STRUCTURAL_SPACES = [("sphere", (2,)), ("quadric_real", (1, 2)),
                      ("unitary_group", (2,)), ("grassmann_real", (1, 2)),
                      ("grassmann_complex_hermitian", (1, 1))]
_CRITICAL_SPACES = [("grassmann_real", (1, 1)),
                    ("grassmann_complex_hermitian", (1, 1))]
_DELTA_MODELS = ["cp1", "cp1xcp1"]
_ORACLE_ROWS = {"sphere", "quadric_real"}

# rows with a closed-form shortest period (verified against the scan oracle)
_SYS_PINS = {
    "sphere": lambda *p: 2.0 * np.pi,
    "quadric_real": lambda *p: np.sqrt(2.0) * np.pi,
    "grassmann_real": lambda p, q: np.pi if p == 1 else None,
    "unitary_group": lambda n: 2.0 * np.pi,
}

_KILLING_FACTOR = {"so": lambda n: n - 2, "su": lambda n: n,
                   "sp": lambda n: n + 1}


def _native(v):
    """Recursively coerce numpy scalars/arrays for json emission."""
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer, int)) and not isinstance(v, bool):
        return int(v)
    if isinstance(v, np.ndarray):
        return [_native(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_native(x) for x in v]
    return v


def _check(cid, claim, ok, computed, expected, tol):
    return {"id": cid, "claim": claim, "status": "pass" if ok else "fail",
            "computed": _native(computed), "expected": _native(expected),
            "tolerance": float(tol)}


class InstancePool:
    """Shared instantiation cache so suites reuse orbit structure."""

    def __init__(self):
        self._live = {}

    def get(self, rid, params):
        key = (rid, tuple(params))
        if key not in self._live:
            self._live[key] = atlas.instantiate(atlas.descriptor(rid, *params))
        return self._live[key]


def _norm(x: al.AlgebraElement) -> float:
    return float(np.linalg.norm(x.entries))


# cascade triples are complexified, stored as (real, imaginary) pairs
def _cbracket(a, b):
    return (al.bracket(a[0], b[0]) - al.bracket(a[1], b[1]),
            al.bracket(a[0], b[1]) + al.bracket(a[1], b[0]))


def _cnorm(a) -> float:
    return float(np.hypot(np.linalg.norm(a[0].entries),
                          np.linalg.norm(a[1].entries)))


def _cdiff(a, b, scale):
    return (a[0] - scale * b[0], a[1] - scale * b[1])


def _grading_residual(g, rows_a, rows_b, target_rows):
    """max component of [a_i, b_j] outside span(target) over basis pairs."""
    c = np.asarray(g.structure_constants)
    bk = np.einsum("ia,jb,abm->ijm", rows_a, rows_b, c)
    perp = bk - np.einsum("ijm,rm,rs->ijs", bk, target_rows, target_rows)
    return float(np.abs(perp).max())


def suite_algebra(pool, spaces, seed, tol):
    checks = []
    for rid, params in spaces:
        s = pool.get(rid, params)
        g = s.g_vee
        lab = s.descriptor.label
        c = np.asarray(g.structure_constants)

        jac = (np.einsum("ijm,mkl->ijkl", c, c)
               + np.einsum("jkm,mil->ijkl", c, c)
               + np.einsum("kim,mjl->ijkl", c, c))
        checks.append(_check(
            f"algebra.jacobi[{lab}]",
            "structure constants satisfy the Jacobi identity",
            np.abs(jac).max() <= tol["alg"], float(np.abs(jac).max()),
            0.0, tol["alg"]))

        ev = np.linalg.eigvalsh(np.asarray(g.killing_matrix))
        if g.family in _KILLING_FACTOR:
            f = float(_KILLING_FACTOR[g.family](g.n))
            res = float(np.abs(ev + f).max())
            claim = "Killing form is the family multiple of the trace form"
        else:
            # doubled simple factor: still a negative scalar form
            res = float(max(ev.max() - ev.min(), max(ev.max(), 0.0)))
            claim = "Killing form is a negative scalar on the doubled factor"
        checks.append(_check(
            f"algebra.killing[{lab}]", claim, res <= tol["killing"],
            res, 0.0, tol["killing"]))

        for name, dec in (("order2", s.theta_decomp), ("real", s.sigma_decomp)):
            k, p = dec.k_basis, dec.p_basis
            res = max(_grading_residual(g, k, k, k),
                      _grading_residual(g, k, p, p),
                      _grading_residual(g, p, p, k))
            checks.append(_check(
                f"algebra.grading.{name}[{lab}]",
                "brackets respect the +/-1 eigenspace splitting",
                res <= tol["alg"], res, 0.0, tol["alg"]))
    return checks


def suite_roots(pool, spaces, seed, tol):
    checks = []
    for rid, params in spaces:
        s = pool.get(rid, params)
        lab = s.descriptor.label
        st = ob.structure(s)

        total = sum(r.multiplicity for r in st.sigma_roots.roots)
        total += st.sigma_roots.zero_multiplicity
        checks.append(_check(
            f"roots.count[{lab}]",
            "root multiplicities and the zero space fill the algebra",
            total == st.k_alg.dim, int(total), int(st.k_alg.dim), 0.0))

        covs = [r.covector for r in st.sigma_roots.roots]
        worst = 0.0
        for a in covs:
            best = min(float(np.linalg.norm(a + b)) for b in covs)
            worst = max(worst, best)
        checks.append(_check(
            f"roots.pairing[{lab}]",
            "covectors occur in opposite pairs",
            worst <= 1e-8, worst, 0.0, 1e-8))

        sos = rt.cascade_strongly_orthogonal(s.theta_decomp, s.xi, seed=seed)
        checks.append(_check(
            f"roots.cascade.count[{lab}]",
            "strongly orthogonal family has one member per complex rank",
            len(sos.gammas) == st.rank_nc, len(sos.gammas),
            int(st.rank_nc), 0.0))

        res = 0.0
        for t in sos.triples:
            res = max(res,
                      _cnorm(_cdiff(_cbracket(t.H, t.X), t.X, 2.0))
                      / _cnorm(t.X),
                      _cnorm(_cdiff(_cbracket(t.H, t.Y), t.Y, -2.0))
                      / _cnorm(t.Y),
                      _cnorm(_cdiff(_cbracket(t.X, t.Y), t.H, 1.0))
                      / _cnorm(t.H))
        checks.append(_check(
            f"roots.sl2[{lab}]",
            "cascade triples satisfy the standard bracket relations",
            res <= tol["sl2"], res, 0.0, tol["sl2"]))
    return checks


def _form_matrix(x, frame):
    g = x.space.g_vee
    tans = [ob.make_tangent(x, g.from_coords(row)) for row in frame]
    m = np.zeros((len(tans), len(tans)))
    for i, v in enumerate(tans):
        for j, w in enumerate(tans):
            if i < j:
                m[i, j] = ob.kks(x, v, w)
                m[j, i] = ob.kks(x, w, v)
    return m, tans


def suite_orbit(pool, spaces, seed, tol):
    checks = []
    for k, (rid, params) in enumerate(spaces):
        s = pool.get(rid, params)
        lab = s.descriptor.label
        g = s.g_vee
        x = ob.random_orbit_point(s, seed + 100 * k)

        checks.append(_check(
            f"orbit.certificate[{lab}]",
            "sample points stay on the orbit",
            ob.certificate_residual(x) <= 1e-9,
            ob.certificate_residual(x), 0.0, 1e-9))

        checks.append(_check(
            f"orbit.complex_structure[{lab}]",
            "the squared tangent rotation is minus the identity",
            ob.complex_structure_check(x) <= tol["j2"],
            ob.complex_structure_check(x), 0.0, tol["j2"]))

        frame = ob.tangent_frame(x)
        omega, tans = _form_matrix(x, frame)
        anti = float(np.abs(omega + omega.T).max())
        sv = np.linalg.svd(omega, compute_uv=False)
        checks.append(_check(
            f"orbit.form.antisymmetric[{lab}]",
            "the orbit two-form changes sign under swap",
            anti <= tol["form"], anti, 0.0, tol["form"]))
        checks.append(_check(
            f"orbit.form.nondegenerate[{lab}]",
            "the orbit two-form has no kernel on the tangent space",
            sv.min() > 1e-9 * max(1.0, sv.max()), float(sv.min()),
            "positive", 1e-9))

        rng = np.random.default_rng(seed + 100 * k + 1)
        eta = g.from_coords(rng.normal(size=g.dim) * 0.3)
        y = ob.transport(x, eta, 1.0)
        v, w = tans[0], tans[1]
        moved = ob.kks(y,
                       ob.make_tangent(y, al.conjugate(v.generator, eta, 1.0)),
                       ob.make_tangent(y, al.conjugate(w.generator, eta, 1.0)))
        drift = abs(moved - ob.kks(x, v, w))
        checks.append(_check(
            f"orbit.form.invariant[{lab}]",
            "the orbit two-form is preserved by the group flow",
            drift <= tol["form"], drift, 0.0, tol["form"]))

        base = ob.base_point(s)
        h0 = ob.hamiltonian(base)
        hs = [ob.hamiltonian(ob.random_orbit_point(s, seed + 100 * k + 2 + j))
              for j in range(40)]
        checks.append(_check(
            f"orbit.height_minimum[{lab}]",
            "the height function is minimized at the distinguished point",
            min(hs) >= h0 - 1e-9, float(min(hs) - h0), "nonnegative", 1e-9))

        mi = ob.moment_image_spectrum_check(s, samples=200,
                                            seed=seed + 100 * k + 3)
        ok = (mi["interior_pass"] == mi["interior_total"]
              and mi["exterior_pass"] == mi["exterior_total"])
        checks.append(_check(
            f"orbit.moment_membership[{lab}]",
            "spectral membership separates image interior from exterior",
            ok,
            [mi["interior_pass"], mi["exterior_pass"]],
            [mi["interior_total"], mi["exterior_total"]], 0.0))
    return checks


def suite_delta(pool, models, seed, tol, samples=400):
    checks = []
    for model in models:
        r = ob.cut_locus_oracle_check(model, samples=samples, seed=seed,
                                      band=tol["band"])
        checks.append(_check(
            f"delta.oracle[{model}]",
            "flat shell predicate matches the brute-force cut condition",
            r["mismatches"] == 0 and r["tested"] > 0,
            r["mismatches"], 0, tol["band"]))
    return checks


def suite_critical(pool, spaces, seed, tol, restarts=50):
    checks = []
    for rid, params in spaces:
        s = pool.get(rid, params)
        lab = s.descriptor.label
        st = ob.structure(s)
        rep = ob.critical_gap_report(s, restarts=restarts, seed=seed)

        want = 4.0 * np.pi * st.rank_nc
        checks.append(_check(
            f"critical.spread[{lab}]",
            "total level spread is 4 pi per unit of complex rank",
            abs(rep["max_gap"] - want) <= tol["gap_rel"] * want,
            rep["max_gap"], want, tol["gap_rel"]))

        checks.append(_check(
            f"critical.step[{lab}]",
            "the lowest nonzero level sits 4 pi above the bottom",
            abs(rep["smin_gap"] - 4.0 * np.pi) <= tol["gap_rel"] * 4.0 * np.pi,
            rep["smin_gap"], 4.0 * np.pi, tol["gap_rel"]))

        checks.append(_check(
            f"critical.indices[{lab}]",
            "all descent indices are even",
            all(i % 2 == 0 for i in rep["indices"]),
            list(rep["indices"]), "even", 0.0))
    return checks


def suite_capacity(pool, spaces, seed, tol):
    checks = []
    for rid, params in spaces:
        s = pool.get(rid, params)
        lab = s.descriptor.label
        sd = cap.systole_details(s, seed=seed)
        sys_flat = sd["systole"]

        pin = _SYS_PINS.get(rid, lambda *p: None)(*params)
        if pin is not None:
            checks.append(_check(
                f"capacity.systole[{lab}]",
                "flat frequency systole matches the closed form",
                abs(sys_flat - pin) <= tol["sys_abs"], sys_flat, pin,
                tol["sys_abs"]))

        if rid in _ORACLE_ROWS:
            scan = cap.systole_scan_oracle(s, np.asarray(sd["direction"]))
            checks.append(_check(
                f"capacity.scan_oracle[{lab}]",
                "period-scan recurrence confirms the flat systole",
                abs(scan - sys_flat) <= 1e-6 * sys_flat, scan, sys_flat,
                1e-6))

        r = cap.capacities_U(s, sys_flat=sys_flat, seed=seed)
        cross = r.extras["cross_check_normalized"]
        checks.append(_check(
            f"capacity.normalized[{lab}]",
            "rank ratio times the normalized branch equals 4 pi",
            abs(cross - 4.0 * np.pi) <= tol["cap_rel"] * 4.0 * np.pi,
            cross, 4.0 * np.pi, tol["cap_rel"]))

        ratio = r.extras["rank_ratio"]
        want = sys_flat * (2.0 if ratio == 1 else 1.0)
        both = (abs(r.c_G - want) <= tol["cap_rel"] * want
                and abs(r.c_HZ - want) <= tol["cap_rel"] * want)
        checks.append(_check(
            f"capacity.dichotomy[{lab}]",
            "unit-bundle capacities collapse to the systole dichotomy",
            both, [r.c_G, r.c_HZ], want, tol["cap_rel"]))

        d = cap.chz_disc(s, sys_flat=sys_flat, seed=seed)
        if d.case_tag != "disc_unknown":
            factor = {"disc_simply_connected": 1.0, "disc_rp": 2.0,
                      "disc_quadric": np.sqrt(2.0)}[d.case_tag]
            dw = factor * sys_flat
            checks.append(_check(
                f"capacity.disc[{lab}]",
                "disc capacity follows the fundamental-group dispatch",
                abs(d.c_HZ - dw) <= tol["cap_rel"] * dw, d.c_HZ, dw,
                tol["cap_rel"]))

        if s.descriptor.hermitian:
            h = cap.capacity_hermitian_ambient(s, restarts=30, seed=seed)
            st = ob.structure(s)
            want = [4.0 * np.pi, 4.0 * np.pi * st.rank_nc]
            ok = (abs(h.c_G - want[0]) <= tol["gap_rel"] * want[0]
                  and abs(h.c_HZ - want[1]) <= tol["gap_rel"] * want[1])
            checks.append(_check(
                f"capacity.ambient[{lab}]",
                "ambient orbit capacities come from the level ladder",
                ok, [h.c_G, h.c_HZ], want, tol["gap_rel"]))
    return checks


def suite_finsler(pool, spaces, seed, tol):
    checks = []
    for rid, params in spaces:
        s = pool.get(rid, params)
        lab = s.descriptor.label
        st = ob.structure(s)

        ub = fin.unit_ball_vs_box(s, samples=400, seed=seed)
        checks.append(_check(
            f"finsler.box[{lab}]",
            "the spectral-radius unit ball is the open root box",
            ub["fraction"] == 1.0, ub["fraction"], 1.0, 0.0))

        if fin.norm_kernel(s).shape[0] < st.rank_n:
            f2 = fin.f2_vs_riemannian(s, samples=120, seed=seed)
            checks.append(_check(
                f"finsler.quadratic[{lab}]",
                "the Schatten-2 norm is a constant multiple of the metric",
                f2["spread"] <= tol["spread"], f2["spread"], 0.0,
                tol["spread"]))

        mo = fin.norm_monotonicity(s, samples=80, seed=seed)
        checks.append(_check(
            f"finsler.monotone[{lab}]",
            "Schatten norms decrease as the exponent grows",
            mo["worst_violation"] <= tol["mono"], mo["worst_violation"],
            0.0, tol["mono"]))

        if st.rank_n == 1 and mo.get("rank1_single_magnitude"):
            checks.append(_check(
                f"finsler.trace_multiple[{lab}]",
                "on one-dimensional flats the trace norm is an integer "
                "multiple of the spectral radius",
                abs(mo["rank1_multiplier"] - mo["rank1_nonzero_count"])
                <= 1e-9,
                mo["rank1_multiplier"], mo["rank1_nonzero_count"], 1e-9))
    return checks


_SUITES = {
    "algebra": (suite_algebra, _STRUCTURAL_SPACES),
    "roots": (suite_roots, _STRUCTURAL_SPACES),
    "orbit": (suite_orbit, _STRUCTURAL_SPACES),
    "delta": (suite_delta, _DELTA_MODELS),
    "critical": (suite_critical, _CRITICAL_SPACES),
    "capacity": (suite_capacity, _STRUCTURAL_SPACES),
    "finsler": (suite_finsler, _STRUCTURAL_SPACES),
}


def _filtered(defaults, space, params):
    if space is None:
        return defaults
    if defaults is _DELTA_MODELS:
        return [m for m in defaults if m == space]
    if params is not None:
        return [(space, tuple(params))] if space in atlas._ROWS else []
    return [(rid, p) for rid, p in defaults if rid == space]


def run_suites(names, seed, space=None, params=None, tol=None) -> dict:
    """Run the named suites and assemble the report dictionary."""
    for n in names:
        if n not in _SUITES:
            raise UnknownSuite(f"unknown suite {n!r}")
    tol = {**DEFAULT_TOL, **(tol or {})}
    pool = InstancePool()
    checks = []
    for n in SUITE_NAMES:
        if n not in names:
            continue
        fn, defaults = _SUITES[n]
        members = _filtered(defaults, space, params)
        checks.extend(fn(pool, members, seed + SUITE_OFFSETS[n], tol))
    return {"meta": {"version": __version__, "seed": int(seed)},
            "checks": checks}


def all_passed(report: dict) -> bool:
    return all(c["status"] == "pass" for c in report["checks"])


# --- rendering ---------------------------------------------------------

def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def report_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["version", "seed", "id", "claim", "status", "computed",
                "expected", "tolerance"])
    meta = report["meta"]
    for c in report["checks"]:
        w.writerow([meta["version"], meta["seed"], c["id"], c["claim"],
                    c["status"], json.dumps(c["computed"]),
                    json.dumps(c["expected"]), c["tolerance"]])
    return buf.getvalue()


def report_text(report: dict) -> str:
    lines = []
    for c in report["checks"]:
        lines.append(f"{c['status'].upper():4s} {c['id']}  "
                     f"computed={c['computed']} expected={c['expected']} "
                     f"tol={c['tolerance']:g}")
    n = len(report["checks"])
    good = sum(c["status"] == "pass" for c in report["checks"])
    lines.append(f"{good}/{n} checks passed (seed {report['meta']['seed']})")
    return "\n".join(lines) + "\n"


# --- capacity summary table --------------------------------------------

def capacity_table(entries=None, seed: int = 0) -> list:
    """One row per instantiable catalogue entry with the headline numbers."""
    rows = []
    for d in entries if entries is not None else atlas.list_entries():
        if not d.instantiable:
            continue
        s = atlas.instantiate(d)
        sd = cap.systole_details(s, seed=seed)
        r = cap.capacities_U(s, sys_flat=sd["systole"], seed=seed)
        disc = cap.chz_disc(s, sys_flat=sd["systole"], seed=seed)
        rows.append({"space": d.label,
                     "sys": float(sd["systole"]),
                     "ratio": int(r.extras["rank_ratio"]),
                     "c_G_U1": float(r.c_G),
                     "c_HZ_U1": float(r.c_HZ),
                     "c_HZ_D1": disc.c_HZ if isinstance(disc.c_HZ, str)
                     else float(disc.c_HZ)})
    return rows


def table_json(rows: list) -> str:
    return json.dumps({"rows": rows}, sort_keys=True, indent=2) + "\n"


def table_csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = ["space", "sys", "ratio", "c_G_U1", "c_HZ_U1", "c_HZ_D1"]
    w.writerow(cols)
    for r in rows:
        w.writerow([r[c] for c in cols])
    return buf.getvalue()


def _pi_units(v) -> str:
    if isinstance(v, str):
        return v
    return f"{v / np.pi:.6f}*pi"


def table_text(rows: list) -> str:
    header = (f"{'space':36s} {'sys':>14s} {'ratio':>5s} "
              f"{'c_G(U1)':>14s} {'c_HZ(U1)':>14s} {'c_HZ(D1)':>14s}")
    lines = [header, "-" * len(header)]
    for r in rows:
        lines.append(f"{r['space']:36s} {_pi_units(r['sys']):>14s} "
                     f"{r['ratio']:5d} {_pi_units(r['c_G_U1']):>14s} "
                     f"{_pi_units(r['c_HZ_U1']):>14s} "
                     f"{_pi_units(r['c_HZ_D1']):>14s}")
    return "\n".join(lines) + "\n"
