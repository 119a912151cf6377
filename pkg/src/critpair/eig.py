"""Dense nonsymmetric eigenvalues: Hessenberg reduction plus shifted QR.

The pipeline is the classical one.  A single diagonal balancing sweep evens
out row and column norms with exact powers of two, Householder reflections
reduce the matrix to upper Hessenberg form, and an explicit single-shift QR
iteration with Wilkinson shifts deflates eigenvalues off the bottom of the
active block.  Shifts are complex scalars, which is what makes single (rather
than double) shifts sufficient for general complex matrices.

Only eigenvalues are needed anywhere in this package, so rotations are not
accumulated and the off-diagonal coupling blocks of deflated submatrices are
left alone: the spectrum of a block triangular matrix is the union of the
diagonal blocks' spectra.

A stagnating block gets an exceptional shift every 12 sweeps; the total sweep
budget is 30 per matrix dimension, after which NoConvergence is raised.  The
caller-facing entry point also verifies sum(eigenvalues) against the trace,
which a backward-stable reduction must preserve to roundoff.
"""

from __future__ import annotations

import numpy as np

from .errors import NoConvergence

_EPS = np.finfo(np.float64).eps


def balance_once(a: np.ndarray) -> np.ndarray:
    """One diagonal similarity sweep with power-of-two scale factors.

    For each row/column pair the scale is chosen to equate the 1-norms of
    the off-diagonal row and column.  Powers of two keep the similarity
    exact in floating point.  One sweep is deliberate: full iterative
    balancing is out of scope and unnecessary for the matrices seen here.
    """
    a = np.array(a, dtype=np.complex128, copy=True)
    m = a.shape[0]
    for i in range(m):
        r = np.sum(np.abs(a[i, :])) - abs(a[i, i])
        c = np.sum(np.abs(a[:, i])) - abs(a[i, i])
        if r == 0.0 or c == 0.0:
            continue
        # f ~ sqrt(r/c) rounded to a power of two
        f = 2.0 ** round(0.5 * np.log2(r / c))
        if f != 1.0 and np.isfinite(f):
            a[:, i] *= f
            a[i, :] /= f
    return a


def hessenberg_reduce(a: np.ndarray) -> np.ndarray:
    """Unitary similarity to upper Hessenberg form via Householder reflectors."""
    h = np.array(a, dtype=np.complex128, copy=True)
    m = h.shape[0]
    for k in range(m - 2):
        x = h[k + 1 :, k]
        norm_x = np.linalg.norm(x)
        if norm_x == 0.0:
            continue
        # reflect x onto alpha * e1 with alpha chosen to avoid cancellation
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0 + 0.0j
        alpha = -phase * norm_x
        v = x.copy()
        v[0] -= alpha
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            continue
        v /= vnorm
        # apply I - 2 v v* from the left, then from the right
        h[k + 1 :, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1 :, k:])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v.conj())
        h[k + 1, k] = alpha
        h[k + 2 :, k] = 0.0
    return h


def _wilkinson_shift(h: np.ndarray, hi: int) -> complex:
    """Eigenvalue of the trailing 2x2 closest to the corner entry."""
    a = h[hi - 1, hi - 1]
    b = h[hi - 1, hi]
    c = h[hi, hi - 1]
    d = h[hi, hi]
    tr2 = 0.5 * (a + d)
    disc = np.sqrt(tr2 * tr2 - (a * d - b * c))
    lam1 = tr2 + disc
    lam2 = tr2 - disc
    return lam1 if abs(lam1 - d) <= abs(lam2 - d) else lam2


def _qr_sweep(h: np.ndarray, lo: int, hi: int, shift: complex) -> None:
    """One explicit shifted QR step on the active block h[lo:hi+1, lo:hi+1].

    Givens rotations zero the subdiagonal of (H - shift I); applying them
    from the right afterwards completes the similarity RQ + shift I.
    """
    b = hi - lo + 1
    cs = np.empty(b - 1)
    sn = np.empty(b - 1, dtype=np.complex128)
    h[np.arange(lo, hi + 1), np.arange(lo, hi + 1)] -= shift
    for i in range(lo, hi):
        # rotation on rows i, i+1 annihilating h[i+1, i]
        f, g = h[i, i], h[i + 1, i]
        r = np.hypot(abs(f), abs(g))
        if r == 0.0:
            cs[i - lo] = 1.0
            sn[i - lo] = 0.0
            continue
        c = abs(f) / r
        fs = f / abs(f) if f != 0 else 1.0 + 0.0j
        s = fs * np.conj(g) / r
        cs[i - lo] = c
        sn[i - lo] = s
        row_i = h[i, i : hi + 1].copy()
        row_j = h[i + 1, i : hi + 1]
        h[i, i : hi + 1] = c * row_i + s * row_j
        h[i + 1, i : hi + 1] = -np.conj(s) * row_i + c * row_j
    for i in range(lo, hi):
        c = cs[i - lo]
        s = sn[i - lo]
        # columns i, i+1 of the triangular factor are nonzero down to row i+1
        col_i = h[lo : i + 2, i].copy()
        col_j = h[lo : i + 2, i + 1]
        h[lo : i + 2, i] = c * col_i + np.conj(s) * col_j
        h[lo : i + 2, i + 1] = -s * col_i + c * col_j
    h[np.arange(lo, hi + 1), np.arange(lo, hi + 1)] += shift


def qr_eigenvalues(hess: np.ndarray, max_sweeps: int | None = None) -> np.ndarray:
    """Eigenvalues of an upper Hessenberg matrix by shifted QR with deflation."""
    h = np.array(hess, dtype=np.complex128, copy=True)
    m = h.shape[0]
    if m == 0:
        return np.empty(0, dtype=np.complex128)
    if max_sweeps is None:
        max_sweeps = 30 * m
    eigs = np.empty(m, dtype=np.complex128)
    hi = m - 1
    sweeps = 0
    since_deflation = 0
    hnorm = np.max(np.abs(h)) if m else 0.0
    while hi >= 0:
        if hi == 0:
            eigs[0] = h[0, 0]
            break
        # deflate negligible subdiagonals at the bottom of the active part
        deflated = False
        while hi > 0:
            tol = _EPS * (abs(h[hi - 1, hi - 1]) + abs(h[hi, hi]))
            if tol == 0.0:
                tol = _EPS * hnorm
            if abs(h[hi, hi - 1]) <= tol:
                h[hi, hi - 1] = 0.0
                eigs[hi] = h[hi, hi]
                hi -= 1
                deflated = True
            else:
                break
        if deflated:
            since_deflation = 0
            continue
        if hi == 0:
            continue
        # find the top of the unreduced block containing hi
        lo = hi
        while lo > 0:
            tol = _EPS * (abs(h[lo - 1, lo - 1]) + abs(h[lo, lo]))
            if tol == 0.0:
                tol = _EPS * hnorm
            if abs(h[lo, lo - 1]) <= tol:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if sweeps >= max_sweeps:
            raise NoConvergence(
                f"QR iteration exceeded {max_sweeps} sweeps at block size {hi - lo + 1}"
            )
        if since_deflation > 0 and since_deflation % 12 == 0:
            # exceptional shift breaks the rare shift cycle
            shift = h[hi, hi] + 1.5 * abs(h[hi, hi - 1])
        else:
            shift = _wilkinson_shift(h, hi)
        _qr_sweep(h, lo, hi, shift)
        sweeps += 1
        since_deflation += 1
    return eigs


def eigenvalues(a: np.ndarray, max_sweeps: int | None = None) -> np.ndarray:
    """Eigenvalues of a general complex square matrix.

    Balancing (one sweep), Hessenberg reduction, shifted QR.  The result is
    checked against the trace: |sum(lambda) - tr(A)| must not exceed
    1e-8 * m * max|A_ij|, which any backward-stable run satisfies with a
    margin of several orders of magnitude.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    m = a.shape[0]
    if m == 0:
        return np.empty(0, dtype=np.complex128)
    if m == 1:
        return a.ravel().copy()
    h = hessenberg_reduce(balance_once(a))
    eigs = qr_eigenvalues(h, max_sweeps=max_sweeps)
    scale = np.max(np.abs(a))
    if scale > 0:
        drift = abs(np.sum(eigs) - np.trace(a))
        if drift > 1e-8 * m * scale:
            raise NoConvergence(
                f"trace check failed: |sum(eig) - tr| = {drift:.3e} "
                f"exceeds {1e-8 * m * scale:.3e}"
            )
    return eigs
