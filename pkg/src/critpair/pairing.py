"""Zero-to-critical-point matching and the statistics built on the pairs.

Each zero Z of a degree-n polynomial sits at distance ~ 1/n from a critical
point zeta, far below the ~ 1/sqrt(n) spacing between zeros, so nearest-
neighbor matching is unambiguous at moderate n.  This module produces the
matched records and derives from them the normalized inverse gap 1/(n(Z -
zeta)), the standardized fluctuation statistic, and the averaged log-
derivative statistic evaluated near the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptySample, PoleHit, ZeroDensity, ZeroTransform
from .poly import indexed_sum

STATUS_OK = "ok"
STATUS_EXCLUDED = "excluded_near_origin"
STATUS_MATCH_FAILED = "match_failed"

# brute force builds a zeros x crits distance block; beyond this many entries
# the grid path is cheaper
_GRID_CUTOFF = 1 << 22


@dataclass
class PairingRecord:
    """One zero, its nearest critical point, and the derived statistics."""

    zero: complex
    zeta: complex
    distance: float
    nu_atom: complex
    d_stat: complex | None = None
    status: str = STATUS_OK


def _nu_atom(zero: complex, zeta: complex, n: int) -> complex:
    gap = n * (zero - zeta)
    if gap == 0:
        return complex(math.inf, 0.0)
    return 1.0 / gap


def _records_from_match(zeros, crits, idx, dist, n):
    out = []
    for k in range(zeros.size):
        z = complex(zeros[k])
        zeta = complex(crits[idx[k]])
        out.append(PairingRecord(z, zeta, float(dist[k]), _nu_atom(z, zeta, n)))
    return out


def _pair_brute(zeros: np.ndarray, crits: np.ndarray):
    idx = np.empty(zeros.size, dtype=np.intp)
    dist = np.empty(zeros.size)
    chunk = max(1, _GRID_CUTOFF // max(1, crits.size))
    for lo in range(0, zeros.size, chunk):
        hi = min(lo + chunk, zeros.size)
        d = np.abs(zeros[lo:hi, None] - crits[None, :])
        idx[lo:hi] = np.argmin(d, axis=1)
        dist[lo:hi] = d[np.arange(hi - lo), idx[lo:hi]]
    return idx, dist


def _pair_grid(zeros: np.ndarray, crits: np.ndarray):
    """Uniform-cell accelerator; matches the brute path bit for bit.

    Distances are computed with the same complex abs as the brute path and
    ties resolve to the lowest candidate index, so the only difference is
    which candidates get examined.  Ring expansion stops only once every
    unexamined cell is provably farther than the current best, with ties
    still in play treated as unresolved.
    """
    m = crits.size
    xs, ys = crits.real, crits.imag
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    span = max(x1 - x0, y1 - y0)
    if span == 0.0:
        return _pair_brute(zeros, crits)
    ncell = max(1, int(math.sqrt(m)))
    h = span / ncell
    cx = np.minimum((xs - x0) / h, ncell - 1).astype(np.intp)
    cy = np.minimum((ys - y0) / h, ncell - 1).astype(np.intp)
    buckets: dict[tuple[int, int], list[int]] = {}
    for j in range(m):
        buckets.setdefault((int(cx[j]), int(cy[j])), []).append(j)
    buckets_arr = {key: np.asarray(val, dtype=np.intp) for key, val in buckets.items()}

    idx_out = np.empty(zeros.size, dtype=np.intp)
    dist_out = np.empty(zeros.size)
    max_ring = ncell + 1
    for k in range(zeros.size):
        z = zeros[k]
        zx = min(max(int((z.real - x0) / h), 0), ncell - 1)
        zy = min(max(int((z.imag - y0) / h), 0), ncell - 1)
        best_d = math.inf
        best_i = -1
        ring = 0
        while True:
            cells = []
            if ring == 0:
                cells.append((zx, zy))
            else:
                for dx in range(-ring, ring + 1):
                    cells.append((zx + dx, zy - ring))
                    cells.append((zx + dx, zy + ring))
                for dy in range(-ring + 1, ring):
                    cells.append((zx - ring, zy + dy))
                    cells.append((zx + ring, zy + dy))
            cand: list[np.ndarray] = []
            for cell in cells:
                got = buckets_arr.get(cell)
                if got is not None:
                    cand.append(got)
            if cand:
                ids = np.concatenate(cand)
                ids.sort()
                d = np.abs(z - crits[ids])
                j = int(np.argmin(d))
                if d[j] < best_d or (d[j] == best_d and ids[j] < best_i):
                    best_d = float(d[j])
                    best_i = int(ids[j])
            # cells at ring+1 hold points no closer than ring*h; a tie at
            # exactly ring*h could still steal the match via a lower index
            if best_i >= 0 and best_d < ring * h:
                break
            ring += 1
            if ring > max_ring and best_i >= 0:
                break
        idx_out[k] = best_i
        dist_out[k] = best_d
    return idx_out, dist_out


def pair_nearest(
    zeros, crits, n: int, use_grid: bool | None = None
) -> list[PairingRecord]:
    """Match every zero to its globally nearest critical point.

    Ties break to the lowest critical-point index; several zeros may share
    one critical point.  The grid accelerator kicks in automatically on
    large inputs and returns matches identical to brute force.
    """
    zeros = np.asarray(zeros, dtype=np.complex128).ravel()
    crits = np.asarray(crits, dtype=np.complex128).ravel()
    if crits.size == 0:
        raise EmptySample("no critical points to match against")
    if use_grid is None:
        use_grid = zeros.size * crits.size > _GRID_CUTOFF
    if use_grid:
        idx, dist = _pair_grid(zeros, crits)
    else:
        idx, dist = _pair_brute(zeros, crits)
    return _records_from_match(zeros, crits, idx, dist, n)


def nearest_neighbor_distances(points) -> np.ndarray:
    """Distance from each point to its nearest distinct neighbor."""
    pts = np.asarray(points, dtype=np.complex128).ravel()
    if pts.size < 2:
        raise EmptySample("need at least 2 points for neighbor distances")
    out = np.empty(pts.size)
    chunk = max(1, _GRID_CUTOFF // pts.size)
    for lo in range(0, pts.size, chunk):
        hi = min(lo + chunk, pts.size)
        d = np.abs(pts[lo:hi, None] - pts[None, :])
        d[np.arange(hi - lo), np.arange(lo, hi)] = np.inf
        out[lo:hi] = d.min(axis=1)
    return out


def match_failed_records(zeros, n: int) -> list[PairingRecord]:
    """Placeholder records for a trial whose critical points never converged."""
    out = []
    for z in np.asarray(zeros, dtype=np.complex128).ravel():
        out.append(
            PairingRecord(
                complex(z),
                complex(math.nan, math.nan),
                math.nan,
                complex(math.nan, math.nan),
                status=STATUS_MATCH_FAILED,
            )
        )
    return out


def predicted_critical(z: complex, f_at_z: complex, n: int) -> complex:
    """First-order location of the critical point paired with the zero at z.

    z - 1/(n f(z)): the pull of the other n - 1 zeros, summarized by the
    transform, displaces the critical point by 1/(n f) from its zero.
    """
    f_at_z = complex(f_at_z)
    if f_at_z == 0:
        raise ZeroTransform("transform vanishes at the zero; no prediction")
    return complex(z) - 1.0 / (n * f_at_z)


def standardized_statistic(
    z: complex,
    zeta: complex,
    f_at_z: complex,
    p_at_z: float,
    n: int,
    square_mode: str = "modulus",
) -> complex:
    """Fluctuation of the paired critical point on its CLT scale.

    (pref/sqrt(pi p)) * sqrt(n/log n) * (n(zeta - z) + 1/f), where pref is
    f(z)^2 (square_mode "analytic") or |f(z)|^2 ("modulus").  The two differ
    by a unit rotation, so the limit law N_C(0,1) and the modulus of the
    output do not depend on the choice.
    """
    f_at_z = complex(f_at_z)
    if f_at_z == 0:
        raise ZeroTransform("transform vanishes; statistic undefined")
    if not p_at_z > 0:
        raise ZeroDensity("density must be positive at the zero")
    if n < 3:
        raise ValueError("need n >= 3 so log n > 0")
    if square_mode == "modulus":
        pref = abs(f_at_z) ** 2
    elif square_mode == "analytic":
        pref = f_at_z * f_at_z
    else:
        raise ValueError(f"unknown square_mode {square_mode!r}")
    scale = pref / math.sqrt(math.pi * p_at_z) * math.sqrt(n / math.log(n))
    return scale * (n * (complex(zeta) - complex(z)) + 1.0 / f_at_z)


def fill_d_stats(
    records: list[PairingRecord],
    transform,
    density,
    n: int,
    exclusion_radius: float,
    square_mode: str = "modulus",
) -> list[PairingRecord]:
    """Populate d_stat on matched records, excluding zeros near the origin.

    For radially symmetric laws the transform vanishes at 0, so 1/f blows up
    for zeros close to the origin; those records get ExcludedNearOrigin
    instead of a statistic.  Records are mutated in place and returned.
    """
    for rec in records:
        if rec.status == STATUS_MATCH_FAILED:
            continue
        if abs(rec.zero) <= exclusion_radius:
            rec.status = STATUS_EXCLUDED
            continue
        f = complex(transform(rec.zero))
        p = float(density(rec.zero))
        if f == 0 or not p > 0:
            rec.status = STATUS_EXCLUDED
            continue
        rec.d_stat = standardized_statistic(
            rec.zero, rec.zeta, f, p, n, square_mode=square_mode
        )
    return records


def chi_atoms(
    records: list[PairingRecord], exclusion_radius: float
) -> list[complex]:
    """Standardized statistics of cleanly matched zeros away from the origin."""
    out = []
    for rec in records:
        if rec.status != STATUS_OK or rec.d_stat is None:
            continue
        if abs(rec.zero) > exclusion_radius:
            out.append(rec.d_stat)
    return out


def nu_atoms(records: list[PairingRecord]) -> list[complex]:
    """Normalized inverse pairing gaps of all successfully matched zeros."""
    return [
        rec.nu_atom for rec in records if rec.status != STATUS_MATCH_FAILED
    ]


def clt_statistic(zeros, z_n: complex, f0: complex, n: int) -> complex:
    """Centered, normalized log-derivative sum near the origin.

    (1/sqrt(n log n)) * sum_k (1/(z_n - xi_k) - f0).  Terms are summed in
    index order so the result is independent of execution layout.
    """
    if n < 3:
        raise ValueError("need n >= 3 so log n > 0")
    zeros = np.asarray(zeros, dtype=np.complex128).ravel()
    diffs = complex(z_n) - zeros
    if np.any(diffs == 0):
        raise PoleHit("evaluation point coincides with a zero")
    terms = 1.0 / diffs - complex(f0)
    return complex(indexed_sum(terms) / math.sqrt(n * math.log(n)))
