"""Batch integer kernels over O_K for the large sweeps.

Elements are coordinate pairs (a, b) meaning a + b·gen, held in int64
arrays.  Each kernel has a numba version and a pure-numpy version with the
same signature; ``BACKEND`` names the one the public functions dispatch to.
Set ``TWISTDERIV_PURE_NUMPY=1`` to force numpy.  Inputs must be small enough
that no intermediate product leaves int64 (callers keep coordinates ≲ 10⁴
and |d| ≲ 10⁴).
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

USE_NUMBA = njit is not None and os.environ.get("TWISTDERIV_PURE_NUMPY", "") not in ("1", "true", "yes")
BACKEND = "numba" if USE_NUMBA else "numpy"

_CHUNK = 512


def _ring_params(d: int) -> tuple[int, int]:
    """(is_omega, c) where gen² = c (SQRT) or gen² = gen + c (OMEGA)."""
    if d % 4 == 1:
        return 1, (d - 1) // 4
    return 0, d


# --- numpy ---------------------------------------------------------------


def _mul_np(is_omega, c, a1, b1, a2, b2):
    bb = b1 * b2
    return a1 * a2 + c * bb, a1 * b2 + b1 * a2 + is_omega * bb


def _conj_np(is_omega, a, b):
    return a + is_omega * b, -b


def leibniz_batch_numpy(d, s_conj, t_conj, alpha, beta, xa, xb, ya, yb):
    """Per sample, whether D(xy) = D(x)τ(y) + σ(x)D(y) with D(gen) = α + β·gen."""
    is_omega, c = _ring_params(d)
    xa, xb, ya, yb = (np.asarray(v, dtype=np.int64) for v in (xa, xb, ya, yb))
    pa, pb = _mul_np(is_omega, c, xa, xb, ya, yb)
    lhs_a, lhs_b = pb * alpha, pb * beta
    ta, tb = _conj_np(is_omega, ya, yb) if t_conj else (ya, yb)
    sa, sb = _conj_np(is_omega, xa, xb) if s_conj else (xa, xb)
    r1a, r1b = _mul_np(is_omega, c, xb * alpha, xb * beta, ta, tb)
    r2a, r2b = _mul_np(is_omega, c, sa, sb, yb * alpha, yb * beta)
    return (lhs_a == r1a + r2a) & (lhs_b == r1b + r2b)


def inner_search_numpy(d, ca, cb, alphas, betas, bound):
    """For each target (α, β), the first w = (a, b), |a|,|b| ≤ bound, with w·(ca + cb·gen) = target.

    Candidates are scanned in row-major order of (a, b) from (-bound, -bound).
    """
    is_omega, c = _ring_params(d)
    grid = np.arange(-bound, bound + 1, dtype=np.int64)
    wa = np.repeat(grid, grid.size)
    wb = np.tile(grid, grid.size)
    ia, ib = _mul_np(is_omega, c, wa, wb, np.int64(ca), np.int64(cb))
    alphas = np.asarray(alphas, dtype=np.int64)
    betas = np.asarray(betas, dtype=np.int64)
    n = alphas.size
    found = np.zeros(n, dtype=np.bool_)
    out_a = np.zeros(n, dtype=np.int64)
    out_b = np.zeros(n, dtype=np.int64)
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        hit = (ia[None, :] == alphas[lo:hi, None]) & (ib[None, :] == betas[lo:hi, None])
        any_hit = hit.any(axis=1)
        first = hit.argmax(axis=1)
        found[lo:hi] = any_hit
        out_a[lo:hi] = np.where(any_hit, wa[first], 0)
        out_b[lo:hi] = np.where(any_hit, wb[first], 0)
    return found, out_a, out_b


# --- numba ---------------------------------------------------------------

if njit is not None:

    @njit(cache=True)
    def _leibniz_nb(is_omega, c, s_conj, t_conj, alpha, beta, xa, xb, ya, yb):
        n = xa.shape[0]
        out = np.empty(n, dtype=np.bool_)
        for k in range(n):
            x0, x1, y0, y1 = xa[k], xb[k], ya[k], yb[k]
            bb = x1 * y1
            p1 = x0 * y1 + x1 * y0 + is_omega * bb
            lhs0 = p1 * alpha
            lhs1 = p1 * beta
            if t_conj:
                t0, t1 = y0 + is_omega * y1, -y1
            else:
                t0, t1 = y0, y1
            if s_conj:
                s0, s1 = x0 + is_omega * x1, -x1
            else:
                s0, s1 = x0, x1
            # D(x)·τ(y) with D(x) = x1·(α, β)
            u0, u1 = x1 * alpha, x1 * beta
            r0 = u0 * t0 + c * u1 * t1
            r1 = u0 * t1 + u1 * t0 + is_omega * u1 * t1
            # σ(x)·D(y) with D(y) = y1·(α, β)
            v0, v1 = y1 * alpha, y1 * beta
            r0 += s0 * v0 + c * s1 * v1
            r1 += s0 * v1 + s1 * v0 + is_omega * s1 * v1
            out[k] = lhs0 == r0 and lhs1 == r1
        return out

    @njit(cache=True)
    def _inner_search_nb(is_omega, c, ca, cb, alphas, betas, bound):
        n = alphas.shape[0]
        found = np.zeros(n, dtype=np.bool_)
        out_a = np.zeros(n, dtype=np.int64)
        out_b = np.zeros(n, dtype=np.int64)
        for k in range(n):
            ta, tb = alphas[k], betas[k]
            for a in range(-bound, bound + 1):
                done = False
                for b in range(-bound, bound + 1):
                    bb = b * cb
                    ia = a * ca + c * bb
                    ib = a * cb + b * ca + is_omega * bb
                    if ia == ta and ib == tb:
                        found[k] = True
                        out_a[k] = a
                        out_b[k] = b
                        done = True
                        break
                if done:
                    break
        return found, out_a, out_b


def leibniz_batch_numba(d, s_conj, t_conj, alpha, beta, xa, xb, ya, yb):
    is_omega, c = _ring_params(d)
    arrs = [np.ascontiguousarray(v, dtype=np.int64) for v in (xa, xb, ya, yb)]
    return _leibniz_nb(
        np.int64(is_omega), np.int64(c), bool(s_conj), bool(t_conj), np.int64(alpha), np.int64(beta), *arrs
    )


def inner_search_numba(d, ca, cb, alphas, betas, bound):
    is_omega, c = _ring_params(d)
    return _inner_search_nb(
        np.int64(is_omega),
        np.int64(c),
        np.int64(ca),
        np.int64(cb),
        np.ascontiguousarray(alphas, dtype=np.int64),
        np.ascontiguousarray(betas, dtype=np.int64),
        int(bound),
    )


if USE_NUMBA:
    leibniz_batch = leibniz_batch_numba
    inner_search = inner_search_numba
else:
    leibniz_batch = leibniz_batch_numpy
    inner_search = inner_search_numpy
