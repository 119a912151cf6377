"""The package's own acceptance battery: 12 checks, one line each.

Each criterion is a function of a shared context and returns pass/fail plus
a human-readable detail string.  The same battery backs `critpair selftest`
and the acceptance test module, so the CLI and the test suite can never
disagree about what "working" means.

Statistical thresholds were calibrated by pilot runs over several master
seeds and then frozen together with the seeds below; they are generous
enough that a re-run with a fresh seed passes with high probability, but
they would catch a wrong normalization or a broken limit law outright.
"""

from __future__ import annotations

import math
import os
import tempfile
import time
from dataclasses import dataclass

import numpy as np

from . import ensembles, pairing, rootfind, stats, transforms
from .config import ExperimentConfig
from .experiments import (
    run_clt_experiment,
    run_conjecture_experiment,
    run_cst_check,
    run_pairing_experiment,
)
from .poly import RootFormPoly, differentiate_coeffs, expand_from_roots
from .rng import SeededRng

SEED_ORACLE = 811
SEED_HULL = 822
SEED_UNIQUE = 555
SEED_PAIR_CLT = 844
SEED_NEAR = 866
SEED_LOG_CLT = 877
SEED_CST = 888
SEED_NU = 899
SEED_CHI = 910
SEED_ENSEMBLE = 921
SEED_REPRO = 932


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float

    @property
    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        return (
            f"criterion {self.number:2d} {mark} {self.name}: "
            f"{self.detail} [{self.seconds:.1f}s]"
        )


def _disk_sample(rng: SeededRng, count: int) -> np.ndarray:
    u = rng.uniforms(2 * count)
    return np.sqrt(u[0::2]) * np.exp(2j * np.pi * u[1::2])


def _hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def crit_oracle_equivalence(ctx: dict):
    """Aberth-from-roots critical points vs companion-matrix eigenvalues."""
    rng = SeededRng(SEED_ORACLE)
    t0 = time.monotonic()
    worst = 0.0
    for _ in range(100):
        deg = 2 + int(rng.uniform() * 29)
        p = RootFormPoly(_disk_sample(rng, deg))
        crits = rootfind.critical_points_all(p).points
        oracle = rootfind.companion_oracle_roots(
            differentiate_coeffs(expand_from_roots(p))
        )
        worst = max(worst, _hausdorff(crits, oracle))
    elapsed = time.monotonic() - t0
    ok = worst <= 1e-8 and elapsed < 10.0
    return ok, f"max matched distance {worst:.2e} (<=1e-08), {elapsed:.2f}s (<10s)"


def crit_hull_vieta(ctx: dict):
    """Every critical point in the zero hull; critical sum obeys Vieta."""
    rng = SeededRng(SEED_HULL)
    worst_gap_rel = 0.0
    worst_vieta = 0.0
    for i in range(100):
        deg = 500 if i == 0 else 2 + int(rng.uniform() * 498)
        zeros = _disk_sample(rng, deg)
        crits = rootfind.critical_points_all(RootFormPoly(zeros)).points
        hull = rootfind.convex_hull(zeros)
        diam = 0.0
        hx = np.array([complex(x, y) for x, y in hull])
        if hx.size >= 2:
            diam = float(np.abs(hx[:, None] - hx[None, :]).max())
        for c in crits:
            gap = rootfind.hull_gap(hull, complex(c))
            if diam > 0:
                worst_gap_rel = max(worst_gap_rel, gap / diam)
        target = (deg - 1) / deg * complex(np.sum(zeros))
        err = abs(complex(np.sum(crits)) - target) / max(1.0, abs(target))
        worst_vieta = max(worst_vieta, err)
    ok = worst_gap_rel <= 1e-9 and worst_vieta <= 1e-8
    return ok, (
        f"max hull escape {worst_gap_rel:.2e}·diameter (<=1e-09), "
        f"max Vieta error {worst_vieta:.2e} (<=1e-08)"
    )


def crit_uniqueness(ctx: dict):
    """Winding count finds exactly one critical point near the planted zero."""
    t0 = time.monotonic()
    cfg = ExperimentConfig(
        experiment="pair",
        n=500,
        trials=300,
        u0_re=0.5,
        r_exponent=0.75,
        master_seed=SEED_UNIQUE,
        output_dir=os.path.join(ctx["out_dir"], "crit03"),
    ).validate()
    res = run_pairing_experiment(cfg)
    elapsed = time.monotonic() - t0
    freq = res["summary_map"]["uniqueness_freq"]
    ok = freq >= 0.95 and elapsed < 60.0
    return ok, f"uniqueness frequency {freq:.3f} (>=0.95), {elapsed:.1f}s (<60s)"


def _pair_clt_run(ctx: dict) -> dict:
    if "pair_clt" not in ctx:
        cfg = ExperimentConfig(
            experiment="pair",
            n=5000,
            trials=1000,
            u0_re=0.5,
            r_exponent=0.75,
            R_grid=[0.5, 1.0, 1.5],
            master_seed=SEED_PAIR_CLT,
            threads=ctx.get("threads", 1),
            output_dir=os.path.join(ctx["out_dir"], "crit04"),
        ).validate()
        t0 = time.monotonic()
        ctx["pair_clt"] = run_pairing_experiment(cfg)
        ctx["pair_clt_seconds"] = time.monotonic() - t0
    return ctx["pair_clt"]


# Component-variance window for the paired statistic at n = 5000, frozen
# from a three-seed pilot (observed 0.69..0.79).  The variance of the
# limiting components is 1/2, approached like (log n + c)/log n, so at
# this n the bulk sits near 0.72; the window still rejects any factor-2
# scale error, whose variance would land near 0.37 or 1.5.
PAIR_VAR_WINDOW = (0.45, 1.00)


def crit_pair_clt(ctx: dict):
    """Standardized pairing fluctuation matches the complex-Gaussian limit."""
    res = _pair_clt_run(ctx)
    elapsed = ctx["pair_clt_seconds"]
    s = res["summary_map"]
    lo, hi = PAIR_VAR_WINDOW
    mean_abs = math.hypot(s["stat_mean_re"], s["stat_mean_im"])
    ok = (
        mean_abs <= 0.1
        and lo <= s["stat_var_re"] <= hi
        and lo <= s["stat_var_im"] <= hi
        and abs(s["stat_corr_re_im"]) <= 0.15
        and s["stat_ks_sqrt2_re"] <= 0.10
        and elapsed < 300.0
    )
    return ok, (
        f"|mean| {mean_abs:.3f} (<=0.1), vars ({s['stat_var_re']:.3f},"
        f" {s['stat_var_im']:.3f}) (in [{lo},{hi}]), |corr|"
        f" {abs(s['stat_corr_re_im']):.3f} (<=0.15), KS"
        f" {s['stat_ks_sqrt2_re']:.3f} (<=0.10), {elapsed:.0f}s (<300s)"
    )


def crit_confidence_disk(ctx: dict):
    """Miss rates of the shrinking confidence disks follow the Gaussian tail.

    The miss event for radius factor R is exactly |statistic| > R, so the
    rates are scored against exp(-R^2 / s2) at the run's own fitted total
    variance s2, which converges to 1 from above like (log n + c)/log n.
    At n = 5000 the fitted s2 is near 1.5, and a pilot put the empirical
    rates within 0.032 of that prediction; the asymptotic exp(-R^2) values
    are reported alongside for reference.
    """
    res = _pair_clt_run(ctx)
    s = res["summary_map"]
    s2 = s["stat_var_re"] + s["stat_var_im"]
    details = [f"fitted total var {s2:.3f}"]
    ok = s2 > 0
    rates = []
    for i, R in enumerate((0.5, 1.0, 1.5)):
        rate = s[f"miss_rate_R{i}"]
        rates.append(rate)
        predicted = math.exp(-R * R / s2)
        limit = math.exp(-R * R)
        ok = ok and abs(rate - predicted) <= 0.07
        details.append(f"R={R:g}: {rate:.3f} vs {predicted:.3f} (limit {limit:.4f})")
    ok = ok and all(a > b for a, b in zip(rates, rates[1:]))
    return ok, "; ".join(details) + " (+/-0.07, decreasing in R)"


def crit_nearest_zero(ctx: dict):
    """Rescaled distance to the closest zero follows its limit law."""
    rng_master = SEED_NEAR
    n, trials = 2000, 1000
    u0 = 0.5 + 0.0j
    zeros_per_trial = []
    for t in range(trials):
        rng = SeededRng.for_trial(rng_master, t)
        zeros_per_trial.append(_disk_sample(rng, n))
    rows = stats.nearest_zero_law(zeros_per_trial, u0, 1.0 / math.pi, [0.5, 1.0])
    ok = True
    details = []
    for r, emp, theo in rows:
        ok = ok and abs(emp - theo) <= 0.05
        details.append(f"r={r:g}: {emp:.3f} vs {theo:.4f}")
    return ok, "; ".join(details) + " (+/-0.05)"


# Window for the median-based component variances at n = 2000, frozen from
# a three-seed pilot (observed 0.65..0.83).  Plain sample variance is the
# wrong yardstick here: a zero landing within 1/(n sqrt(log n)) of the
# evaluation point gives the statistic a 1/x^2 tail, so its second moment
# grows with the sample instead of settling at the limit value 0.5.  The
# MAD scale tracks the Gaussian bulk, which at this n is inflated to about
# 0.5 (log n + c)/log n ~ 0.7.  A factor-2 scale error would put the
# robust variances near 0.35 or 1.4, outside the window either way.
CLT_VAR_WINDOW = (0.45, 1.05)


def crit_log_derivative_clt(ctx: dict):
    """Averaged log-derivative near the origin has the predicted Gaussian shape."""
    cfg = ExperimentConfig(
        experiment="clt",
        n=2000,
        trials=1000,
        master_seed=SEED_LOG_CLT,
        output_dir=os.path.join(ctx["out_dir"], "crit07"),
    ).validate()
    res = run_clt_experiment(cfg)
    s = res["summary_map"]
    lo, hi = CLT_VAR_WINDOW
    ok = (
        lo <= s["stat_robust_var_re"] <= hi
        and lo <= s["stat_robust_var_im"] <= hi
        and abs(s["stat_robust_corr"]) <= 0.15
    )
    return ok, (
        f"robust vars ({s['stat_robust_var_re']:.3f}, {s['stat_robust_var_im']:.3f}) "
        f"(in [{lo},{hi}]), |robust corr| {abs(s['stat_robust_corr']):.3f} (<=0.15)"
    )


def crit_transform_suite(ctx: dict):
    """Closed forms, radial tables, Monte Carlo, and the log-Lipschitz bound agree."""
    cfg = ExperimentConfig(
        experiment="cst-check",
        master_seed=SEED_CST,
        output_dir=os.path.join(ctx["out_dir"], "crit08"),
    ).validate()
    res = run_cst_check(cfg)
    s = res["summary_map"]
    ok = bool(s["cst_pass"])
    return ok, (
        f"table errs ({s['uniform_table_max_err']:.1e},"
        f" {s['gaussian_table_max_err']:.1e}) (<=1e-03), Lipschitz max"
        f" ({s['uniform_lipschitz_max']:.2f}, {s['gaussian_lipschitz_max']:.2f})"
        f" (<=10), MoM pass {int(s['mom_pass_z0.5'])}&{int(s['mom_pass_z2'])}"
    )


def crit_inverse_gap_cloud(ctx: dict):
    """Pooled normalized inverse gaps fill the unit disk uniformly."""
    cfg = ExperimentConfig(
        experiment="conjecture",
        ensemble="iid",
        n=500,
        trials=10,
        master_seed=SEED_NU,
        output_dir=os.path.join(ctx["out_dir"], "crit09"),
    ).validate()
    res = run_conjecture_experiment(cfg)
    s = res["summary_map"]
    ks = s.get("nu_radial_ks", float("nan"))
    frac = s.get("nu_frac_within_1.15", float("nan"))
    ok = ks <= 0.1 and frac >= 0.95
    return ok, f"radial KS {ks:.3f} (<=0.1), frac |atom|<=1.15 {frac:.3f} (>=0.95)"


def crit_fluctuation_cloud(ctx: dict):
    """Single-trial standardized fluctuations: ECDF artifact plus descriptive KS."""
    out = os.path.join(ctx["out_dir"], "crit10")
    cfg = ExperimentConfig(
        experiment="conjecture",
        ensemble="iid",
        n=500,
        trials=1,
        exclusion_radius=0.1,
        master_seed=SEED_CHI,
        output_dir=out,
    ).validate()
    res = run_conjecture_experiment(cfg)
    s = res["summary_map"]
    ecdf_path = os.path.join(out, "ecdf.csv")
    have_artifact = os.path.exists(ecdf_path)
    count = s.get("chi_count", 0)
    ks = s.get("chi_ks_sqrt2_re", float("nan"))
    ok = have_artifact and count > 0 and math.isfinite(ks)
    return ok, (
        f"ECDF artifact written ({count} atoms), descriptive KS {ks:.3f} "
        "(reported, no threshold: atoms within one trial are dependent)"
    )


def crit_ensemble_sanity(ctx: dict):
    """Ginibre and Weyl generators: spectral identities and circular-law radius."""
    # same stream layout as the ginibre sampler: one block, u1/u2 interleaved
    rng = SeededRng.for_trial(SEED_ENSEMBLE, 0)
    m = 200
    u = rng.uniforms(2 * m * m)
    entries = np.asarray(
        ensembles.complex_normal_from_uniforms(u[0::2], u[1::2], 1.0)
    ).reshape(m, m)
    zeros_g = ensembles.ginibre_zeros_from_matrix(entries).zeros
    trace_err = abs(np.sum(zeros_g) * math.sqrt(m) - np.trace(entries))
    trace_tol = 1e-8 * m * float(np.abs(entries).max())
    frac_g = float(np.mean(np.abs(zeros_g) <= 1.1))

    spec = ensembles.EnsembleSpec(kind="weyl", n=100, seed=SEED_ENSEMBLE)
    zeros_w = ensembles.weyl_zeros(spec, SeededRng.for_trial(SEED_ENSEMBLE, 1)).zeros
    frac_w = float(np.mean(np.abs(zeros_w) <= 1.1))

    for name, kind, n in (("ginibre", "ginibre", 200), ("weyl", "weyl", 100)):
        cfg = ExperimentConfig(
            experiment="conjecture",
            ensemble=kind,
            n=n,
            trials=1,
            master_seed=SEED_ENSEMBLE,
            output_dir=os.path.join(ctx["out_dir"], f"crit11_{name}"),
        ).validate()
        run_conjecture_experiment(cfg)
        if not os.path.exists(
            os.path.join(ctx["out_dir"], f"crit11_{name}", "atoms.csv")
        ):
            return False, f"atoms.csv missing for {name}"

    ok = trace_err <= trace_tol and frac_g >= 0.97 and frac_w >= 0.95
    return ok, (
        f"trace drift {trace_err:.2e} (tol {trace_tol:.2e}), Ginibre frac"
        f" {frac_g:.3f} (>=0.97), Weyl frac {frac_w:.3f} (>=0.95), atom CSVs written"
    )


def crit_reproducibility(ctx: dict):
    """Identical CSV bytes from 1-thread and 4-thread runs of two experiments."""
    outputs = []
    for threads in (1, 4):
        out_p = os.path.join(ctx["out_dir"], f"crit12_pair_t{threads}")
        cfg = ExperimentConfig(
            experiment="pair",
            n=400,
            trials=40,
            master_seed=SEED_REPRO,
            threads=threads,
            output_dir=out_p,
        ).validate()
        run_pairing_experiment(cfg)
        out_c = os.path.join(ctx["out_dir"], f"crit12_conj_t{threads}")
        cfg2 = ExperimentConfig(
            experiment="conjecture",
            ensemble="iid",
            n=120,
            trials=4,
            master_seed=SEED_REPRO,
            threads=threads,
            output_dir=out_c,
        ).validate()
        run_conjecture_experiment(cfg2)
        blobs = {}
        for sub, fname in (
            (out_p, "trials.csv"),
            (out_p, "summary.csv"),
            (out_c, "trials.csv"),
            (out_c, "atoms.csv"),
            (out_c, "summary.csv"),
        ):
            with open(os.path.join(sub, fname), "rb") as fh:
                blobs[(os.path.basename(sub).rsplit("_t", 1)[0], fname)] = fh.read()
        outputs.append(blobs)
    same = outputs[0] == outputs[1]
    n_files = len(outputs[0])
    return same, (
        f"{n_files} CSV files byte-identical across thread counts"
        if same
        else "CSV bytes differ between thread counts"
    )


CRITERIA = [
    (1, "root-finder oracle equivalence", crit_oracle_equivalence),
    (2, "hull containment and Vieta sum", crit_hull_vieta),
    (3, "uniqueness frequency in the local disk", crit_uniqueness),
    (4, "pairing fluctuation CLT", crit_pair_clt),
    (5, "confidence-disk coverage", crit_confidence_disk),
    (6, "nearest-zero law", crit_nearest_zero),
    (7, "averaged log-derivative CLT", crit_log_derivative_clt),
    (8, "transform cross-validation suite", crit_transform_suite),
    (9, "inverse-gap cloud uniformity", crit_inverse_gap_cloud),
    (10, "fluctuation-cloud artifact", crit_fluctuation_cloud),
    (11, "ensemble generation sanity", crit_ensemble_sanity),
    (12, "bit-reproducible outputs", crit_reproducibility),
]


def run_criterion(number: int, ctx: dict) -> CriterionResult:
    for num, name, fn in CRITERIA:
        if num == number:
            t0 = time.monotonic()
            ok, detail = fn(ctx)
            return CriterionResult(num, name, ok, detail, time.monotonic() - t0)
    raise ValueError(f"no criterion {number}")


def run_all(out_dir: str | None = None, echo=print) -> list[CriterionResult]:
    """Run the full battery in order, echoing one line per criterion."""
    if out_dir is None:
        out_dir = tempfile.mkdtemp(prefix="critpair-selftest-")
    ctx: dict = {"out_dir": out_dir}
    os.makedirs(out_dir, exist_ok=True)
    results = []
    for num, _name, _fn in CRITERIA:
        result = run_criterion(num, ctx)
        results.append(result)
        if echo is not None:
            echo(result.line)
    return results
