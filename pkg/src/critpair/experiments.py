"""Experiment protocols: seeded trials, a bounded worker pool, CSV emission.

Four protocols. `pair` localizes the critical point next to a planted zero
u0 and scores the CLT statistic plus confidence-disk coverage; `clt` scores
the averaged log-derivative statistic near the origin; `conjecture` pairs
every zero of an ensemble polynomial with its nearest critical point and
emits the nu/chi atom clouds; `cst-check` cross-validates the transform
implementations against each other.

Trials are independent work units keyed by index.  Trial t draws its own
substream from (master_seed, t), results are sorted by index before
emission, and floats are printed at 17 significant digits, so output bytes
depend only on the config, never on the thread count.
"""

from __future__ import annotations

import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import ensembles, pairing, rootfind, stats, transforms
from .cdf_table import (
    gaussian_table,
    load_table_csv,
    uniform_disk_table,
)
from .config import ExperimentConfig
from .errors import (
    ConfigError,
    ContourTooClose,
    LeftTrustRegion,
    NoConvergence,
    NonIntegerWinding,
    NotConverged,
    PoleHit,
)
from .poly import RootFormPoly
from .rng import SeededRng, trial_seed

SEED_RULE = (
    "trial_state = splitmix64_finalizer(master_seed XOR "
    "trial_index * 0x9E3779B97F4A7C15)"
)

NAN = float("nan")


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    return str(value)


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_summary(path: str, pairs: list[tuple[str, object]]) -> None:
    _write_csv(path, ["metric", "value"], [[k, v] for k, v in pairs])


def _package_version() -> str:
    try:
        from importlib.metadata import version

        return version("critpair")
    except Exception:
        return "unknown"


def _write_manifest(out_dir: str, cfg: ExperimentConfig, wall: float) -> None:
    manifest = {
        "config": cfg.to_dict(),
        "version": _package_version(),
        "python": sys.version.split()[0],
        "numpy": np.__version__,
        "wall_time_s": round(wall, 3),
        "seed_rule": SEED_RULE,
    }
    with open(
        os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8"
    ) as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _run_trials(trials: int, threads: int, fn) -> list:
    if trials == 0:
        return []
    if threads <= 1:
        return [fn(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(trials)))


def resolve_law(cfg: ExperimentConfig):
    """Zero-law triple (transform, density, table) for the configured density."""
    if cfg.density == "uniform_disk":
        return transforms.cst_uniform_disk, transforms.density_uniform_disk, None
    if cfg.density == "gaussian":
        return transforms.cst_gaussian, transforms.density_gaussian, None
    table = load_table_csv(cfg.radial_cdf_path)
    return (
        lambda z: transforms.cst_radial(table, z),
        lambda z: table.density_at(abs(z)),
        table,
    )


def _ensemble_spec(cfg: ExperimentConfig, table) -> ensembles.EnsembleSpec:
    return ensembles.EnsembleSpec(
        kind=cfg.ensemble,
        n=cfg.n,
        density=cfg.density,
        table=table,
        coeff_law=cfg.coeff_law,
        seed=cfg.master_seed,
    )


def run_pairing_experiment(cfg: ExperimentConfig) -> dict:
    """Localization, CLT statistic, and disk coverage at a planted zero u0.

    Each trial plants u0 among n random zeros, runs the local Newton solve
    from the predicted location u0 - 1/(n f(u0)), certifies uniqueness by a
    winding count over the boundary of the radius n^(-r_exponent) disk, and
    scores miss/hit for each confidence radius in R_grid.
    """
    if cfg.ensemble != "iid":
        raise ConfigError("pairing experiment requires the iid ensemble")
    started = time.monotonic()
    transform, density, table = resolve_law(cfg)
    n = cfg.n
    u0 = cfg.u0
    f0 = complex(transform(u0))
    p0 = float(density(u0))
    if f0 == 0:
        raise ConfigError("transform vanishes at u0; localization undefined")
    if not p0 > 0:
        raise ConfigError("density vanishes at u0; CLT scale undefined")
    r_n = float(n) ** (-cfg.r_exponent)
    predicted = pairing.predicted_critical(u0, f0, n)
    disk_scale = math.sqrt(math.pi * p0 * math.log(n)) / (
        float(n) ** 1.5 * abs(f0) ** 2
    )
    radii = [disk_scale * R for R in cfg.R_grid]
    spec = _ensemble_spec(cfg, table)

    def one_trial(idx: int):
        rng = SeededRng.for_trial(cfg.master_seed, idx)
        sampled = ensembles.sample_iid_zero_poly(spec, rng).zeros
        p = RootFormPoly(np.concatenate([[u0], sampled]))
        near_scaled = math.sqrt(n) * float(np.min(np.abs(sampled - u0)))
        found = 1
        zeta = complex(NAN, NAN)
        try:
            zeta, _ = rootfind.newton_local_critical(
                p, predicted, trust_radius=r_n
            )
        except (NotConverged, LeftTrustRegion, PoleHit):
            found = 0
        try:
            count = rootfind.count_critical_in_disk(p, u0, r_n)
        except (ContourTooClose, NonIntegerWinding):
            count = -1
        if found:
            stat = pairing.standardized_statistic(
                u0, zeta, f0, p0, n, square_mode="modulus"
            )
            stat_f2 = pairing.standardized_statistic(
                u0, zeta, f0, p0, n, square_mode="analytic"
            )
            misses = [1 if abs(zeta - predicted) > r else 0 for r in radii]
        else:
            stat = complex(NAN, NAN)
            stat_f2 = complex(NAN, NAN)
            misses = [1] * len(radii)
        return (
            idx,
            trial_seed(cfg.master_seed, idx),
            found,
            count,
            zeta,
            stat,
            misses,
            stat_f2,
            near_scaled,
        )

    results = _run_trials(cfg.trials, cfg.threads, one_trial)

    header = [
        "trial",
        "seed",
        "found",
        "count_in_disk",
        "zeta_re",
        "zeta_im",
        "stat_re",
        "stat_im",
    ]
    header += [f"miss_R{i}" for i in range(len(cfg.R_grid))]
    header += ["stat_f2_re", "stat_f2_im", "near_zero_scaled"]
    rows = []
    for idx, seed, found, count, zeta, stat, misses, stat_f2, near in results:
        rows.append(
            [idx, seed, found, count, zeta.real, zeta.imag, stat.real, stat.imag]
            + misses
            + [stat_f2.real, stat_f2.imag, near]
        )

    counts = np.array([r[3] for r in results], dtype=int)
    found_mask = np.array([r[2] for r in results], dtype=bool)
    zetas = np.array([r[4] for r in results], dtype=np.complex128)
    stats_mod = np.array([r[5] for r in results], dtype=np.complex128)
    stats_f2 = np.array([r[7] for r in results], dtype=np.complex128)
    near_scaled = np.array([r[8] for r in results], dtype=float)

    pairs: list[tuple[str, object]] = [
        ("experiment", "pair"),
        ("trials", cfg.trials),
        ("n", n),
        ("uniqueness_freq", float(np.mean(counts == 1)) if len(rows) else NAN),
        ("newton_found_freq", float(np.mean(found_mask)) if len(rows) else NAN),
    ]
    # The limit law describes the certified unique critical point, so the
    # moment fit conditions on the winding count.  Trials where a random
    # zero crowds u0 fail that certificate and carry the heavy 1/f-hat tail
    # that would otherwise swamp the variance without changing the limit.
    certified = found_mask & (counts == 1) if len(rows) else found_mask
    good = stats_mod[certified] if len(rows) else np.empty(0, np.complex128)
    pairs.append(("stat_sample_size", int(good.size)))
    if good.size >= 2:
        fit = stats.fit_complex_gaussian(good)
        ks = stats.ks_distance(
            math.sqrt(2.0) * good.real, stats.standard_normal_cdf
        )
        pairs += [
            ("stat_mean_re", fit.mean.real),
            ("stat_mean_im", fit.mean.imag),
            ("stat_var_re", fit.var_re),
            ("stat_var_im", fit.var_im),
            ("stat_corr_re_im", fit.corr_re_im),
            ("stat_ks_sqrt2_re", ks),
        ]
        rvar_re, rvar_im = stats.robust_component_variances(good)
        pairs += [
            ("stat_robust_var_re", rvar_re),
            ("stat_robust_var_im", rvar_im),
            ("stat_robust_corr", stats.robust_corr(good)),
        ]
    for i, (R, radius) in enumerate(zip(cfg.R_grid, radii)):
        if len(rows):
            miss = stats.coverage_miss_rate(
                zetas, [predicted] * len(rows), [radius] * len(rows)
            )
        else:
            miss = NAN
        pairs += [
            (f"miss_rate_R{i}", miss),
            (f"miss_target_R{i}", math.exp(-R * R)),
        ]
    if len(rows):
        for R in cfg.R_grid:
            pairs.append(
                (f"near_zero_freq_r{_fmt(float(R))}", float(np.mean(near_scaled <= R)))
            )
            pairs.append(
                (
                    f"near_zero_target_r{_fmt(float(R))}",
                    -math.expm1(-p0 * math.pi * R * R),
                )
            )

    os.makedirs(cfg.output_dir, exist_ok=True)
    _write_csv(os.path.join(cfg.output_dir, "trials.csv"), header, rows)
    _write_summary(os.path.join(cfg.output_dir, "summary.csv"), pairs)
    _write_manifest(cfg.output_dir, cfg, time.monotonic() - started)
    return {
        "header": header,
        "rows": rows,
        "summary": pairs,
        "summary_map": dict(pairs),
        "counts": counts,
        "found": found_mask,
        "zetas": zetas,
        "stats": stats_mod,
        "stats_f2": stats_f2,
        "near_scaled": near_scaled,
        "predicted": predicted,
        "radii": radii,
    }


def run_clt_experiment(cfg: ExperimentConfig) -> dict:
    """Averaged log-derivative statistic at z_n = n^(-z_exponent)."""
    if cfg.ensemble != "iid":
        raise ConfigError("clt experiment requires the iid ensemble")
    started = time.monotonic()
    transform, density, table = resolve_law(cfg)
    n = cfg.n
    z_val = complex(float(n) ** (-cfg.z_exponent), 0.0)
    f0 = complex(transform(0.0 + 0.0j))
    p_origin = float(density(0.0 + 0.0j))
    spec = _ensemble_spec(cfg, table)

    def one_trial(idx: int):
        rng = SeededRng.for_trial(cfg.master_seed, idx)
        zeros = ensembles.sample_iid_zero_poly(spec, rng).zeros
        try:
            stat = pairing.clt_statistic(zeros, z_val, f0, n)
        except PoleHit:
            stat = complex(NAN, NAN)
        return (idx, trial_seed(cfg.master_seed, idx), stat)

    results = _run_trials(cfg.trials, cfg.threads, one_trial)
    header = ["trial", "seed", "stat_re", "stat_im"]
    rows = [[idx, seed, s.real, s.imag] for idx, seed, s in results]
    sample = np.array([s for _, _, s in results], dtype=np.complex128)
    finite = sample[np.isfinite(sample)]

    pairs: list[tuple[str, object]] = [
        ("experiment", "clt"),
        ("trials", cfg.trials),
        ("n", n),
        ("z_re", z_val.real),
        ("target_component_var", math.pi * p_origin / 2.0),
    ]
    if finite.size >= 2:
        fit = stats.fit_complex_gaussian(finite)
        # Untruncated moments of this statistic are heavy-tailed at any
        # finite n, so the summary carries median-based scales alongside.
        rvar_re, rvar_im = stats.robust_component_variances(finite)
        pairs += [
            ("stat_mean_re", fit.mean.real),
            ("stat_mean_im", fit.mean.imag),
            ("stat_var_re", fit.var_re),
            ("stat_var_im", fit.var_im),
            ("stat_corr_re_im", fit.corr_re_im),
            ("stat_robust_var_re", rvar_re),
            ("stat_robust_var_im", rvar_im),
            ("stat_robust_corr", stats.robust_corr(finite)),
        ]

    os.makedirs(cfg.output_dir, exist_ok=True)
    _write_csv(os.path.join(cfg.output_dir, "trials.csv"), header, rows)
    _write_summary(os.path.join(cfg.output_dir, "summary.csv"), pairs)
    _write_manifest(cfg.output_dir, cfg, time.monotonic() - started)
    return {
        "header": header,
        "rows": rows,
        "summary": pairs,
        "summary_map": dict(pairs),
        "sample": sample,
    }


def _conjecture_zero_law(cfg: ExperimentConfig, table):
    # chi atoms need the transform/density of the zero law; Weyl and
    # characteristic-polynomial zeros follow the circular law, so the
    # uniform-disk pair stands in for them
    if cfg.ensemble == "iid":
        transform, density, _ = resolve_law(cfg)
        return transform, density
    return transforms.cst_uniform_disk, transforms.density_uniform_disk


def run_conjecture_experiment(cfg: ExperimentConfig) -> dict:
    """Pair all zeros with nearest critical points; emit atom clouds.

    nu atoms 1/(n(Z - zeta)) are emitted for every matched zero of every
    ensemble.  chi atoms (the standardized fluctuations) are emitted with
    the (n/log n)^chi_norm_exponent normalization; only the iid ensemble has
    a proven limit for them, so elsewhere they are data, not pass/fail.
    """
    started = time.monotonic()
    _, _, table = resolve_law(cfg)
    transform, density = _conjecture_zero_law(cfg, table)
    spec = _ensemble_spec(cfg, table)
    n = cfg.n

    def one_trial(idx: int):
        rng = SeededRng.for_trial(cfg.master_seed, idx)
        try:
            if cfg.ensemble == "iid":
                zeros = ensembles.sample_iid_zero_poly(spec, rng).zeros
            elif cfg.ensemble == "weyl":
                zeros = ensembles.weyl_zeros(spec, rng, cfg.weyl_max_degree).zeros
            else:
                zeros = ensembles.sample_ginibre_zeros(spec, rng).zeros
        except (NoConvergence, NotConverged):
            return (idx, trial_seed(cfg.master_seed, idx), None, NAN, NAN)
        n_pair = zeros.size
        try:
            report = rootfind.critical_points_all(RootFormPoly(zeros))
            crits = report.points
        except NotConverged:
            records = pairing.match_failed_records(zeros, n_pair)
            return (idx, trial_seed(cfg.master_seed, idx), records, NAN, NAN)
        records = pairing.pair_nearest(zeros, crits, n_pair)
        pairing.fill_d_stats(
            records, transform, density, n_pair, cfg.exclusion_radius
        )
        if cfg.chi_norm_exponent != 0.5:
            adjust = (n_pair / math.log(n_pair)) ** (cfg.chi_norm_exponent - 0.5)
            for rec in records:
                if rec.d_stat is not None:
                    rec.d_stat *= adjust
        dists = np.array([rec.distance for rec in records])
        spacing = pairing.nearest_neighbor_distances(zeros)
        return (
            idx,
            trial_seed(cfg.master_seed, idx),
            records,
            float(np.median(dists)),
            float(np.median(spacing)),
        )

    results = _run_trials(cfg.trials, cfg.threads, one_trial)

    trial_rows = []
    atom_rows = []
    nu_all: list[complex] = []
    chi_all: list[complex] = []
    pair_dists: list[float] = []
    spacings: list[float] = []
    failed_trials = 0
    for idx, seed, records, med_dist, med_space in results:
        if records is None:
            trial_rows.append([idx, seed, "zero_gen_failed", 0, NAN, NAN])
            atom_rows.append([idx, -1, "nu", NAN, NAN, pairing.STATUS_MATCH_FAILED])
            failed_trials += 1
            continue
        matched = any(r.status != pairing.STATUS_MATCH_FAILED for r in records)
        status = "ok" if matched else "crit_failed"
        if not matched:
            failed_trials += 1
        trial_rows.append(
            [idx, seed, status, len(records), med_dist, med_space]
        )
        if matched:
            pair_dists.append(med_dist)
            spacings.append(med_space)
        for k, rec in enumerate(records):
            atom_rows.append(
                [idx, k, "nu", rec.nu_atom.real, rec.nu_atom.imag, rec.status]
            )
            if rec.status != pairing.STATUS_MATCH_FAILED:
                nu_all.append(rec.nu_atom)
            if rec.d_stat is not None:
                atom_rows.append(
                    [idx, k, "chi", rec.d_stat.real, rec.d_stat.imag, rec.status]
                )
                if abs(rec.zero) > cfg.exclusion_radius:
                    chi_all.append(rec.d_stat)

    pairs: list[tuple[str, object]] = [
        ("experiment", "conjecture"),
        ("ensemble", cfg.ensemble),
        ("trials", cfg.trials),
        ("n", n),
        ("failed_trials", failed_trials),
        ("nu_count", len(nu_all)),
        ("chi_count", len(chi_all)),
    ]
    nu_arr = np.asarray(nu_all, dtype=np.complex128)
    nu_finite = nu_arr[np.isfinite(nu_arr)]
    if nu_finite.size:
        radial_ks, angular_chi2, frac_inside = stats.disk_uniformity(nu_finite)
        pairs += [
            ("nu_radial_ks", radial_ks),
            ("nu_angular_chi2", angular_chi2),
            ("nu_frac_inside", frac_inside),
            ("nu_frac_within_1.15", float(np.mean(np.abs(nu_finite) <= 1.15))),
        ]
    chi_arr = np.asarray(chi_all, dtype=np.complex128)
    chi_finite = chi_arr[np.isfinite(chi_arr)]
    ecdf_rows = []
    if chi_finite.size >= 2:
        fit = stats.fit_complex_gaussian(chi_finite)
        xs = np.sort(math.sqrt(2.0) * chi_finite.real)
        ks = stats.ks_distance(xs, stats.standard_normal_cdf)
        pairs += [
            ("chi_mean_re", fit.mean.real),
            ("chi_mean_im", fit.mean.imag),
            ("chi_var_re", fit.var_re),
            ("chi_var_im", fit.var_im),
            ("chi_corr_re_im", fit.corr_re_im),
            ("chi_ks_sqrt2_re", ks),
        ]
        m = xs.size
        for i, x in enumerate(xs):
            ecdf_rows.append(
                [float(x), (i + 1) / m, stats.standard_normal_cdf(float(x))]
            )
    if pair_dists:
        med_pair = float(np.median(pair_dists))
        med_space = float(np.median(spacings))
        pairs += [
            ("median_pair_distance", med_pair),
            ("median_zero_spacing", med_space),
            (
                "spacing_to_pair_ratio",
                med_space / med_pair if med_pair > 0 else NAN,
            ),
        ]

    os.makedirs(cfg.output_dir, exist_ok=True)
    _write_csv(
        os.path.join(cfg.output_dir, "trials.csv"),
        ["trial", "seed", "status", "n_zeros", "median_pair_dist", "median_spacing"],
        trial_rows,
    )
    _write_csv(
        os.path.join(cfg.output_dir, "atoms.csv"),
        ["trial", "k", "kind", "re", "im", "status"],
        atom_rows,
    )
    if ecdf_rows:
        _write_csv(
            os.path.join(cfg.output_dir, "ecdf.csv"),
            ["x", "ecdf", "normal_cdf"],
            ecdf_rows,
        )
    _write_summary(os.path.join(cfg.output_dir, "summary.csv"), pairs)
    _write_manifest(cfg.output_dir, cfg, time.monotonic() - started)
    return {
        "summary": pairs,
        "summary_map": dict(pairs),
        "nu_atoms": nu_arr,
        "chi_atoms": chi_arr,
        "trial_rows": trial_rows,
        "atom_rows": atom_rows,
    }


def _law_grid_error(closed, table, radii, angle: float) -> float:
    worst = 0.0
    for r in radii:
        z = r * complex(math.cos(angle), math.sin(angle))
        worst = max(worst, abs(closed(z) - transforms.cst_radial(table, z)))
    return worst


def _lipschitz_sweep(closed, radii) -> float:
    worst = 0.0
    for r in radii:
        for angle in (0.0, 1.1, 2.7, 4.2):
            z = r * complex(math.cos(angle), math.sin(angle))
            worst = max(worst, transforms.log_lipschitz_ratio(closed, z))
    return worst


def run_cst_check(cfg: ExperimentConfig) -> dict:
    """Cross-validate transform implementations: closed form, table, Monte Carlo."""
    started = time.monotonic()
    u_table = uniform_disk_table()
    g_table = gaussian_table()
    grid_u = np.linspace(0.05, 2.5, 50)
    grid_g = np.linspace(0.05, 4.5, 50)
    err_u = _law_grid_error(transforms.cst_uniform_disk, u_table, grid_u, 0.3)
    err_g = _law_grid_error(transforms.cst_gaussian, g_table, grid_g, 0.3)

    lip_radii = np.geomspace(2e-6, 0.499, 40)
    lip_u = _lipschitz_sweep(transforms.cst_uniform_disk, lip_radii)
    lip_g = _lipschitz_sweep(transforms.cst_gaussian, lip_radii)

    def disk_sampler(rng: SeededRng, count: int) -> np.ndarray:
        u = rng.uniforms(2 * count)
        return np.sqrt(u[0::2]) * np.exp(2j * np.pi * u[1::2])

    mom_rows = []
    mom_ok = True
    rng = SeededRng.for_trial(cfg.master_seed, 0)
    for z in (0.5 + 0.0j, 2.0 + 0.0j):
        est = transforms.cst_monte_carlo(disk_sampler, z, rng)
        target = transforms.cst_uniform_disk(z)
        err = abs(est.estimate - target)
        ok = err <= 5.0 * est.spread
        mom_ok = mom_ok and ok
        mom_rows += [
            (f"mom_err_z{_fmt(z.real)}", err),
            (f"mom_spread_z{_fmt(z.real)}", est.spread),
            (f"mom_pass_z{_fmt(z.real)}", int(ok)),
        ]

    table_ok = err_u <= 1e-3 and err_g <= 1e-3
    lip_ok = lip_u <= 10.0 and lip_g <= 10.0
    pairs: list[tuple[str, object]] = [
        ("experiment", "cst-check"),
        ("uniform_table_max_err", err_u),
        ("gaussian_table_max_err", err_g),
        ("table_pass", int(table_ok)),
        ("uniform_lipschitz_max", lip_u),
        ("gaussian_lipschitz_max", lip_g),
        ("lipschitz_pass", int(lip_ok)),
        ("gaussian_closed_at_1", abs(transforms.cst_gaussian(1.0 + 0.0j))),
    ]
    pairs += mom_rows
    pairs.append(("cst_pass", int(table_ok and lip_ok and mom_ok)))

    os.makedirs(cfg.output_dir, exist_ok=True)
    _write_summary(os.path.join(cfg.output_dir, "summary.csv"), pairs)
    _write_manifest(cfg.output_dir, cfg, time.monotonic() - started)
    return {"summary": pairs, "summary_map": dict(pairs)}
