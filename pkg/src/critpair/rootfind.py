"""Critical point location: Aberth-Ehrlich, local Newton, and disk counts.

Everything here works on the log-derivative h(z) = p'(z)/p(z) rather than on
expanded coefficients of p'.  For a root-form polynomial h is a sum of simple
poles, cheap to evaluate at any degree, and the zeros of h away from the
poles are exactly the critical points of p.  In particular the Newton
correction for p' can be assembled from h alone:

    p''/p' = h + h'/h   so   p'/p'' = h / (h' + h^2).

The simultaneous Aberth-Ehrlich iteration repels approximations from each
other, which in practice finds all m-1 critical points of a degree-m
polynomial in a few dozen sweeps.  A single Newton refinement with a trust
radius serves the localization experiments, where an excellent seed for the
one interesting critical point is known in advance.

The disk counter integrates h'/h around a circle with the trapezoid rule
(spectrally accurate on periodic integrands) and adds back the enclosed pole
count, certifying how many critical points a disk contains.  The companion
matrix route through the QR eigensolver exists as an independent oracle for
cross-checking the Aberth path at small degree; the two share no code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import eig
from .errors import (
    ContourTooClose,
    DegreeTooLarge,
    DuplicateZeros,
    LeftTrustRegion,
    NonIntegerWinding,
    NotConverged,
    PoleHit,
)
from .poly import (
    CoeffFormPoly,
    RootFormPoly,
    indexed_sum,
    log_derivative,
    log_derivative_pair_many,
    log_derivative_prime,
)

# Zeros closer than this are treated as a multiple zero and rejected.
DUPLICATE_EPS = 1e-12

# Relative |h| residual bound certified for converged points.
RESIDUAL_BOUND = 1e-6

_CHUNK = 1024


@dataclass
class RootFindReport:
    """Result of a simultaneous root search."""

    points: np.ndarray
    iterations: int
    max_residual: float
    converged_flags: np.ndarray

    @property
    def all_converged(self) -> bool:
        return bool(np.all(self.converged_flags))


def _has_duplicate_pair(points: np.ndarray, threshold: float) -> bool:
    """True if some pair is within threshold.  Sort-and-scan, no n^2 matrix."""
    if points.size < 2:
        return False
    order = np.lexsort((points.imag, points.real))
    pts = points[order]
    re = pts.real
    for i in range(pts.size - 1):
        j = i + 1
        while j < pts.size and re[j] - re[i] <= threshold:
            if abs(pts[i] - pts[j]) <= threshold:
                return True
            j += 1
    return False


def _pairwise_repulsion(pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """sum_{j != i} 1/(z_i - z_j) and distance to the nearest other point."""
    m = pts.size
    rep = np.empty(m, dtype=np.complex128)
    near = np.empty(m)
    for start in range(0, m, _CHUNK):
        stop = min(start + _CHUNK, m)
        diff = pts[start:stop, None] - pts[None, :]
        rows = np.arange(start, stop)
        diff[rows - start, rows] = np.inf
        dist = np.abs(diff)
        near[start:stop] = dist.min(axis=1)
        with np.errstate(divide="ignore"):
            rep[start:stop] = np.sum(1.0 / diff, axis=1)
    return rep, near


def _aberth_sweeps(
    zeros: np.ndarray, pts: np.ndarray, tol: float, max_iter: int
) -> tuple[np.ndarray, int, np.ndarray]:
    """Jacobi-style Aberth-Ehrlich sweeps for the roots of p' given p's zeros."""
    pts = pts.copy()
    converged = np.zeros(pts.size, dtype=bool)
    it = 0
    for it in range(1, max_iter + 1):
        h, hp = log_derivative_pair_many(zeros, pts)
        w = h / (hp + h * h)
        rep, near = _pairwise_repulsion(pts)
        denom = 1.0 - w * rep
        with np.errstate(divide="ignore", invalid="ignore"):
            step = w / denom
        # a vanishing Aberth denominator falls back to the plain Newton step
        bad = ~np.isfinite(step)
        if np.any(bad):
            step[bad] = w[bad]
        limit = 0.5 * near
        mag = np.abs(step)
        over = mag > limit
        if np.any(over):
            step[over] *= limit[over] / mag[over]
        pts = pts - step
        # a clamped step never certifies convergence: two approximations
        # collapsing onto one simple root take microscopic mutually-clamped
        # steps, and the repelled one must keep moving until its own
        # unclamped correction is small
        converged = (np.abs(step) <= tol * (1.0 + np.abs(pts))) & ~over
        if np.all(converged):
            break
    return pts, it, converged


def _relative_residuals(zeros: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """|h| at each point divided by sum |1/(z - zero)|, chunked."""
    out = np.empty(pts.size)
    for start in range(0, pts.size, _CHUNK):
        stop = min(start + _CHUNK, pts.size)
        d = pts[start:stop, None] - zeros[None, :]
        inv = 1.0 / d
        out[start:stop] = np.abs(indexed_sum(inv, axis=1)) / np.sum(
            np.abs(inv), axis=1
        )
    return out


def _spec_seeds(zeros: np.ndarray) -> np.ndarray:
    """Per-zero seeds z_k - 1/(m h_k), clamped like iteration steps.

    Each zero predicts a nearby critical point at distance ~1/(m h_k) where
    h_k is the log-derivative of the remaining factors at that zero.  Only
    m-1 critical points exist, so the first m-1 zeros supply seeds.
    """
    m = zeros.size
    base = zeros[: m - 1]
    idx = np.arange(m - 1)
    hhat = np.empty(m - 1, dtype=np.complex128)
    near = np.empty(m - 1)
    for start in range(0, m - 1, _CHUNK):
        stop = min(start + _CHUNK, m - 1)
        diff = base[start:stop, None] - zeros[None, :]
        rows = np.arange(start, stop)
        diff[rows - start, rows] = np.inf
        near[start:stop] = np.abs(diff).min(axis=1)
        with np.errstate(divide="ignore"):
            hhat[start:stop] = np.sum(1.0 / diff, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        offset = -1.0 / (m * hhat)
    limit = 0.5 * near
    bad = ~np.isfinite(offset)
    offset[bad] = limit[bad]
    mag = np.abs(offset)
    over = mag > limit
    offset[over] *= limit[over] / mag[over]
    seeds = base + offset
    # seeds are generically distinct; separate the rare collision
    for _ in range(4):
        if not _has_duplicate_pair(seeds, 1e-14 * max(1.0, float(np.max(np.abs(seeds))))):
            break
        seeds = seeds + limit * 1e-6 * np.exp(0.376j * idx)
    return seeds


def _circle_seeds(zeros: np.ndarray) -> np.ndarray:
    """Fallback start: equiangular circle of radius 1.2 max|zero|, rotated."""
    m = zeros.size
    r = 1.2 * float(np.max(np.abs(zeros)))
    if r == 0.0:
        r = 1.0
    k = np.arange(m - 1)
    return r * np.exp(1j * (2.0 * np.pi * k / (m - 1) + 0.376))


def critical_points_all(
    p: RootFormPoly, tol: float = 1e-12, max_iter: int = 400
) -> RootFindReport:
    """All m-1 critical points of a degree-m root-form polynomial.

    Runs Aberth-Ehrlich from the per-zero seeds; on failure restarts once
    from the fallback circle.  Raises NotConverged (carrying the best report)
    if both passes leave unconverged points.  Zeros closer than 1e-12 are
    rejected up front: a multiple zero is its own critical point and the
    simple-pole form of h breaks down.

    The sweep budget covers the slow mode: a surplus approximation walking
    across the cloud toward the one unclaimed critical point moves at most
    half its distance to the nearest neighbour per sweep, so dense clouds
    need a few hundred sweeps, not a few dozen.
    """
    if p.degree < 2:
        raise ValueError("need degree >= 2 for critical points")
    zeros = p.zeros
    if _has_duplicate_pair(zeros, DUPLICATE_EPS):
        raise DuplicateZeros(f"zeros closer than {DUPLICATE_EPS}")

    total_iters = 0
    best: RootFindReport | None = None
    for attempt, seed_fn in enumerate((_spec_seeds, _circle_seeds)):
        try:
            pts, iters, flags = _aberth_sweeps(zeros, seed_fn(zeros), tol, max_iter)
        except PoleHit:
            total_iters += max_iter
            continue
        total_iters += iters
        residuals = _relative_residuals(zeros, pts)
        report = RootFindReport(
            points=pts,
            iterations=total_iters,
            max_residual=float(residuals.max()) if residuals.size else 0.0,
            converged_flags=flags,
        )
        if report.all_converged:
            return report
        if best is None or flags.sum() > best.converged_flags.sum():
            best = report
    raise NotConverged(
        f"Aberth left {int((~best.converged_flags).sum()) if best else 'all'} "
        f"point(s) unconverged after {total_iters} sweeps",
        report=best,
    )


def newton_local_critical(
    p: RootFormPoly,
    seed: complex,
    trust_radius: float,
    tol: float = 1e-12,
    max_iter: int = 60,
) -> tuple[complex, int]:
    """Newton iteration on h from a seed, confined to a disk around it.

    Steps larger than half the distance to the nearest zero are clamped so
    the iterate cannot jump across a pole of h.  An iterate leaving the
    trust disk raises LeftTrustRegion: in the localization experiments that
    means the seed's critical point is not where the theory put it, which
    the caller records as a failed trial.
    """
    if trust_radius <= 0:
        raise ValueError("trust_radius must be positive")
    z = complex(seed)
    for it in range(1, max_iter + 1):
        h = log_derivative(p, z)
        if h == 0:
            return z, it
        hp = log_derivative_prime(p, z)
        step = h / hp
        if not np.isfinite(step.real) or not np.isfinite(step.imag):
            raise NotConverged("Newton step not finite")
        nearest = float(np.min(np.abs(z - p.zeros)))
        limit = 0.5 * nearest
        if abs(step) > limit:
            step *= limit / abs(step)
        z = z - step
        if abs(z - seed) > trust_radius:
            raise LeftTrustRegion(
                f"iterate left trust disk of radius {trust_radius:g} at sweep {it}"
            )
        if abs(step) <= tol * (1.0 + abs(z)):
            return z, it
    raise NotConverged(f"Newton did not converge in {max_iter} iterations")


def count_critical_in_disk(
    p: RootFormPoly, center: complex, radius: float, nodes: int = 512
) -> int:
    """Number of critical points in an open disk, by the argument principle.

    (1/2 pi i) contour-integral of h'/h counts zeros minus poles of h inside
    the circle; adding back the enclosed zeros of p (the poles of h) leaves
    the critical point count.  The trapezoid rule on the circle converges
    spectrally, so 512 nodes resolve anything not pathologically close to
    the contour; the node count is doubled once before giving up.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if p.degree < 1:
        raise ValueError("need degree >= 1")
    zeros = p.zeros
    ring_gap = np.abs(np.abs(zeros - center) - radius)
    if np.min(ring_gap) <= 1e-6 * radius:
        raise ContourTooClose("a zero lies within 1e-6 radius of the contour")
    poles_inside = int(np.sum(np.abs(zeros - center) < radius))

    for n_nodes in (nodes, 2 * nodes):
        t = 2.0 * np.pi * np.arange(n_nodes) / n_nodes
        offsets = radius * np.exp(1j * t)
        ring = center + offsets
        h = np.empty(n_nodes, dtype=np.complex128)
        hp = np.empty(n_nodes, dtype=np.complex128)
        scale = np.empty(n_nodes)
        block = max(1, 2_000_000 // max(1, zeros.size))
        for start in range(0, n_nodes, block):
            stop = min(start + block, n_nodes)
            d = ring[start:stop, None] - zeros[None, :]
            inv = 1.0 / d
            h[start:stop] = indexed_sum(inv, axis=1)
            hp[start:stop] = -indexed_sum(inv * inv, axis=1)
            scale[start:stop] = np.sum(np.abs(inv), axis=1)
        if np.min(np.abs(h) / scale) <= 1e-9:
            raise ContourTooClose("h vanishes on the contour nodes")
        winding = np.mean((hp / h) * offsets)
        total = winding + poles_inside
        count = int(round(total.real))
        if abs(total - count) <= 0.1 and count >= 0:
            return count
    raise NonIntegerWinding(
        f"winding residual {abs(total - count):.3g} after doubling nodes"
    )


def aberth_roots_coeffs(
    p: CoeffFormPoly, tol: float = 1e-12, max_iter: int = 1000
) -> RootFindReport:
    """All roots of a coefficient-form polynomial by Aberth-Ehrlich.

    Horner with shared rescaling supplies the Newton correction p/p', so the
    enormous dynamic range of e.g. Weyl coefficients never overflows.  The
    start is an equiangular circle at the Fujiwara root bound; contracting
    from that circle onto an interior root cloud is the slow phase and sets
    the sweep budget (300 to 500 sweeps at degree 250, seed dependent).
    """
    from .poly import horner_pair_many

    m = p.degree
    if m < 1:
        raise ValueError("need degree >= 1")
    coeffs = p.coeffs
    if m == 1:
        root = np.asarray([-coeffs[0] / coeffs[1]])
        return RootFindReport(root, 0, 0.0, np.ones(1, dtype=bool))

    # Fujiwara bound: 2 max_k |c_{m-k}/c_m|^(1/k)
    lead = np.abs(coeffs[-1])
    rest = np.abs(coeffs[:-1])
    k = np.arange(m, 0, -1)
    with np.errstate(divide="ignore"):
        bound = 2.0 * np.max((rest / lead) ** (1.0 / k))
    if not np.isfinite(bound) or bound == 0.0:
        bound = 1.0
    ang = np.arange(m)
    pts = bound * np.exp(1j * (2.0 * np.pi * ang / m + 0.376))

    converged = np.zeros(m, dtype=bool)
    it = 0
    for it in range(1, max_iter + 1):
        pv, dv, _ = horner_pair_many(coeffs, pts)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = pv / dv
        w[pv == 0.0] = 0.0
        rep, near = _pairwise_repulsion(pts)
        denom = 1.0 - w * rep
        with np.errstate(divide="ignore", invalid="ignore"):
            step = w / denom
        bad = ~np.isfinite(step)
        if np.any(bad):
            step[bad] = w[bad]
        limit = 0.5 * near
        mag = np.abs(step)
        over = mag > limit
        if np.any(over):
            step[over] *= limit[over] / mag[over]
        pts = pts - step
        # same rule as the root-form sweeps: clamped steps do not converge
        converged = (np.abs(step) <= tol * (1.0 + np.abs(pts))) & ~over
        if np.all(converged):
            break
    pv, dv, _ = horner_pair_many(coeffs, pts)
    denomsc = np.abs(dv) * (1.0 + np.abs(pts))
    resid = np.where(denomsc > 0, np.abs(pv) / np.maximum(denomsc, 1e-300), 0.0)
    report = RootFindReport(pts, it, float(np.max(resid)), converged)
    if not report.all_converged:
        raise NotConverged(
            f"coefficient Aberth left {int((~converged).sum())} roots unconverged",
            report=report,
        )
    return report


def companion_oracle_roots(p: CoeffFormPoly) -> np.ndarray:
    """Roots via the companion matrix and the QR eigensolver.

    Independent cross-check for the Aberth paths; capped at degree 64 where
    coefficient expansion and the dense eigensolve are both trustworthy.
    """
    if p.degree > 64:
        raise DegreeTooLarge(f"companion oracle capped at degree 64, got {p.degree}")
    if p.degree < 1:
        raise ValueError("need degree >= 1")
    monic = p.coeffs / p.coeffs[-1]
    m = p.degree
    comp = np.zeros((m, m), dtype=np.complex128)
    if m > 1:
        comp[1:, :-1][np.diag_indices(m - 1)] = 1.0
    comp[:, -1] = -monic[:-1]
    return eigen_qr(comp)


def eigen_qr(matrix: np.ndarray, max_sweeps: int | None = None) -> np.ndarray:
    """Eigenvalues of a complex square matrix (dimension at most 1024)."""
    a = np.asarray(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if a.shape[0] > 1024:
        raise ValueError("eigen_qr capped at dimension 1024")
    return eig.eigenvalues(a, max_sweeps=max_sweeps)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: np.ndarray) -> list[tuple[float, float]]:
    """CCW convex hull vertices via monotone chain; may degenerate to 1 or 2."""
    pts = np.asarray(points, dtype=np.complex128)
    if pts.size == 0:
        raise ValueError("need at least one point")
    uniq = sorted(set(zip(pts.real.tolist(), pts.imag.tolist())))
    if len(uniq) == 1:
        return uniq
    lower: list[tuple[float, float]] = []
    for pt in uniq:
        while len(lower) > 1 and _cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    upper: list[tuple[float, float]] = []
    for pt in reversed(uniq):
        while len(upper) > 1 and _cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        hull = [uniq[0], uniq[-1]]
    return hull


def hull_gap(hull: list[tuple[float, float]], q: complex) -> float:
    """Distance from q to the hull: 0 inside, boundary distance outside."""
    qx, qy = q.real, q.imag
    if len(hull) == 1:
        return math.hypot(qx - hull[0][0], qy - hull[0][1])
    if len(hull) >= 3:
        if all(
            _cross(hull[i], hull[(i + 1) % len(hull)], (qx, qy)) >= 0
            for i in range(len(hull))
        ):
            return 0.0
    # outside (or flat hull): distance to the nearest boundary segment
    best = np.inf
    npts = len(hull)
    segs = range(npts) if npts >= 3 else range(npts - 1)
    for i in segs:
        ax, ay = hull[i]
        bx, by = hull[(i + 1) % npts]
        vx, vy = bx - ax, by - ay
        vv = vx * vx + vy * vy
        if vv == 0.0:
            t = 0.0
        else:
            t = max(0.0, min(1.0, ((qx - ax) * vx + (qy - ay) * vy) / vv))
        dx, dy = qx - (ax + t * vx), qy - (ay + t * vy)
        best = min(best, math.hypot(dx, dy))
    return float(best)


def convex_hull_contains(points: np.ndarray, q: complex, slack: float) -> bool:
    """Is q within `slack` of the convex hull of the given points?

    Gauss-Lucas certification: critical points must lie in the hull of the
    zeros, and the slack absorbs roundoff at the hull boundary.  Handles
    degenerate hulls (single point, collinear zeros) by distance to the
    point or segment.
    """
    return hull_gap(convex_hull(points), q) <= slack
