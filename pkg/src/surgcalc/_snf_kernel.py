"""Compiled int64 Smith normal form for small matrices.

Mirrors the big-integer routine in :mod:`surgcalc.linalg` operation for
operation, so both produce identical ``D``, ``U`` and ``V``.  Any intermediate
entry reaching ``LIMIT`` aborts with ``ok = False`` and the caller falls back
to arbitrary precision.
"""

from __future__ import annotations

import numpy as np
from numba import njit

LIMIT = 1 << 40


@njit(cache=True, error_model="numpy")
def _snf_one(d, u, v, transforms):
    nr, nc = d.shape
    t = 0
    while t < min(nr, nc):
        best = 0
        pi = -1
        pj = -1
        for i in range(t, nr):
            for j in range(t, nc):
                x = abs(d[i, j])
                if x != 0 and (pi < 0 or x < best):
                    best = x
                    pi = i
                    pj = j
                    if best == 1:
                        break
            if pi >= 0 and best == 1:
                break
        if pi < 0:
            break
        if pi != t:
            for j in range(nc):
                tmp = d[t, j]
                d[t, j] = d[pi, j]
                d[pi, j] = tmp
            if transforms:
                for j in range(nr):
                    tmp = u[t, j]
                    u[t, j] = u[pi, j]
                    u[pi, j] = tmp
        if pj != t:
            for i in range(nr):
                tmp = d[i, t]
                d[i, t] = d[i, pj]
                d[i, pj] = tmp
            if transforms:
                for i in range(nc):
                    tmp = v[i, t]
                    v[i, t] = v[i, pj]
                    v[i, pj] = tmp

        p = d[t, t]
        dirty = False
        for i in range(t + 1, nr):
            x = d[i, t]
            if x != 0:
                q = x // p
                if q != 0:
                    for j in range(t, nc):
                        d[i, j] -= q * d[t, j]
                        if abs(d[i, j]) >= LIMIT:
                            return False
                    if transforms:
                        for j in range(nr):
                            u[i, j] -= q * u[t, j]
                            if abs(u[i, j]) >= LIMIT:
                                return False
                if d[i, t] != 0:
                    dirty = True
        for j in range(t + 1, nc):
            x = d[t, j]
            if x != 0:
                q = x // p
                if q != 0:
                    for i in range(t, nr):
                        d[i, j] -= q * d[i, t]
                        if abs(d[i, j]) >= LIMIT:
                            return False
                    if transforms:
                        for i in range(nc):
                            v[i, j] -= q * v[i, t]
                            if abs(v[i, j]) >= LIMIT:
                                return False
                if d[t, j] != 0:
                    dirty = True
        if dirty:
            continue

        bad = -1
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if d[i, j] % p != 0:
                    bad = i
                    break
            if bad >= 0:
                break
        if bad >= 0:
            for j in range(t, nc):
                d[t, j] += d[bad, j]
                if abs(d[t, j]) >= LIMIT:
                    return False
            if transforms:
                for j in range(nr):
                    u[t, j] += u[bad, j]
                    if abs(u[t, j]) >= LIMIT:
                        return False
            continue

        if p < 0:
            for j in range(nc):
                d[t, j] = -d[t, j]
            if transforms:
                for j in range(nr):
                    u[t, j] = -u[t, j]
        t += 1
    return True


@njit(cache=True)
def _snf_batch(mats, transforms):
    n, nr, nc = mats.shape
    k = min(nr, nc)
    nt = n if transforms else 0
    diag = np.zeros((n, k), dtype=np.int64)
    us = np.zeros((nt, nr, nr), dtype=np.int64)
    vs = np.zeros((nt, nc, nc), dtype=np.int64)
    ok = np.ones(n, dtype=np.bool_)
    # scratch buffers reused across the stack
    d = np.empty((nr, nc), dtype=np.int64)
    u = np.empty((nr, nr), dtype=np.int64)
    v = np.empty((nc, nc), dtype=np.int64)
    for m in range(n):
        d[:, :] = mats[m]
        if transforms:
            u[:, :] = 0
            v[:, :] = 0
            for i in range(nr):
                u[i, i] = 1
            for i in range(nc):
                v[i, i] = 1
        if not _snf_one(d, u, v, transforms):
            ok[m] = False
            continue
        for i in range(k):
            diag[m, i] = d[i, i]
        if transforms:
            us[m] = u
            vs[m] = v
    return diag, us, vs, ok


def snf_batch(mats: np.ndarray, transforms: bool = False):
    """Smith forms for a stack of same-shape matrices.

    Returns ``(factors, U, V, ok)``; rows with ``ok == False`` overflowed and
    carry no result.
    """
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    if mats.ndim != 3:
        raise ValueError("expected an array of shape (n, rows, cols)")
    return _snf_batch(mats, transforms)
