"""Independent reference computations the tests compare against.

None of these share code with the package beyond the compiled elimination
routine that the exhaustive sweep exercises.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

import numpy as np
from numba import config, njit, prange

# the bundled TBB may be too old; the portable pool is enough here
config.THREADING_LAYER = "workqueue"

from surgcalc._snf_kernel import _snf_one


# ---------------------------------------------------------------- integer matrices

def minor(rows, ri, ci) -> int:
    """Determinant by cofactor expansion."""
    if len(ri) == 1:
        return rows[ri[0]][ci[0]]
    total = 0
    for k, c in enumerate(ci):
        rest = ci[:k] + ci[k + 1 :]
        total += (-1) ** k * rows[ri[0]][c] * minor(rows, ri[1:], rest)
    return total


def determinantal_divisors(rows) -> list[int]:
    """``d_k`` = gcd of all k x k minors, for k = 1..min(shape)."""
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    out = []
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for ri in combinations(range(nr), k):
            for ci in combinations(range(nc), k):
                g = gcd(g, minor(rows, ri, ci))
        out.append(g)
    return out


def factors_from_divisors(divs) -> list[int]:
    out, prev = [], 1
    for d in divs:
        if d == 0:
            out.append(0)
        else:
            out.append(d // prev)
            prev = d
    return out


def naive_smith_factors(rows) -> list[int]:
    """Diagonalize by repeated Euclid steps, then fix the diagonal with
    gcd/lcm swaps.

    The pivot is the smallest entry of the current row and column (the first
    nonzero entry of the block when those are empty), so it shrinks every
    round that leaves a remainder.
    """
    a = [list(r) for r in rows]
    nr = len(a)
    nc = len(a[0]) if a else 0
    k = min(nr, nc)
    for t in range(k):
        while True:
            cross = [(i, t) for i in range(t, nr) if a[i][t]] + [(t, j) for j in range(t + 1, nc) if a[t][j]]
            if not cross:
                cross = [(i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]][:1]
            if not cross:
                break
            i, j = min(cross, key=lambda ij: abs(a[ij[0]][ij[1]]))
            a[t], a[i] = a[i], a[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
            clean = True
            for i in range(t + 1, nr):
                q = a[i][t] // a[t][t]
                a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                clean &= a[i][t] == 0
            for j in range(t + 1, nc):
                q = a[t][j] // a[t][t]
                for r in a:
                    r[j] -= q * r[t]
                clean &= a[t][j] == 0
            if clean:
                break
    diag = [abs(a[i][i]) for i in range(k)]
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for j in range(i + 1, k):
                x, y = diag[i], diag[j]
                g = gcd(x, y)
                l = x * y // g if g else 0
                if (x, y) != (g, l):
                    diag[i], diag[j] = g, l
                    changed = True
    nonzero = [d for d in diag if d]
    return nonzero + [0] * (k - len(nonzero))


@njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _divisors(m, nr, nc, out):
    g = 0
    for i in range(nr):
        for j in range(nc):
            g = _gcd(g, m[i, j])
    out[0] = g
    if nr >= 2 and nc >= 2:
        g = 0
        for r0 in range(nr):
            for r1 in range(r0 + 1, nr):
                for c0 in range(nc):
                    for c1 in range(c0 + 1, nc):
                        g = _gcd(g, m[r0, c0] * m[r1, c1] - m[r0, c1] * m[r1, c0])
        out[1] = g
    if nr >= 3 and nc >= 3:
        out[2] = abs(
            m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
        )


@njit(cache=True)
def _sweep_chunk(nr, nc, bound, start, stop):
    base = 2 * bound + 1
    m = np.empty((nr, nc), dtype=np.int64)
    d = np.empty((nr, nc), dtype=np.int64)
    u = np.empty((nr, nr), dtype=np.int64)
    v = np.empty((nc, nc), dtype=np.int64)
    dd = np.zeros(3, dtype=np.int64)
    k = min(nr, nc)
    bad = 0
    # odometer over entries in [-bound, bound]
    x = start
    for i in range(nr):
        for j in range(nc):
            m[i, j] = x % base - bound
            x //= base
    for _ in range(start, stop):
        d[:, :] = m
        ok = _snf_one(d, u, v, False)
        _divisors(m, nr, nc, dd)
        wrong = not ok
        prod = 1
        seen_zero = False
        for i in range(nr):
            for j in range(nc):
                if i != j and d[i, j] != 0:
                    wrong = True
        for i in range(k):
            s = d[i, i]
            if s < 0 or (seen_zero and s != 0):
                wrong = True
            seen_zero = seen_zero or s == 0
            prod *= s
            if prod != dd[i]:
                wrong = True
        if wrong:
            bad += 1
        for i in range(nr):
            done = False
            for j in range(nc):
                if m[i, j] < bound:
                    m[i, j] += 1
                    done = True
                    break
                m[i, j] = -bound
            if done:
                break
    return bad


@njit(cache=True, parallel=True)
def _sweep(nr, nc, bound, chunks):
    total = (2 * bound + 1) ** (nr * nc)
    step = (total + chunks - 1) // chunks
    bad = np.zeros(chunks, dtype=np.int64)
    for c in prange(chunks):
        lo = c * step
        hi = min(total, lo + step)
        if lo < hi:
            bad[c] = _sweep_chunk(nr, nc, bound, lo, hi)
    return total, bad.sum()


def exhaustive_snf_sweep(nr: int, nc: int, bound: int) -> tuple[int, int]:
    """Run the compiled elimination on every ``nr x nc`` matrix with entries
    in ``[-bound, bound]``; returns ``(matrices, mismatches)``.

    A result counts as a mismatch unless it is diagonal, nonnegative, has its
    zeros last, and its leading products equal the determinantal divisors.
    """
    total, bad = _sweep(nr, nc, bound, 64)
    return int(total), int(bad)


# ---------------------------------------------------------------- groups

def triangle_group_order(p: int, q: int, r: int) -> int | None:
    """Order of the spherical von Dyck group, ``2 / (1/p + 1/q + 1/r - 1)``."""
    excess = Fraction(1, p) + Fraction(1, q) + Fraction(1, r) - 1
    if excess <= 0:
        return None
    out = 2 / excess
    assert out.denominator == 1
    return int(out)


def compose(a, b):
    """Apply ``a`` then ``b`` (right action, matching left-to-right words)."""
    return tuple(b[i] for i in a)


def perm_power(a, n):
    out = tuple(range(len(a)))
    for _ in range(n):
        out = compose(out, a)
    return out


def perm_inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def evaluate(word_letters, gens):
    out = tuple(range(len(gens[0])))
    for g, s in word_letters:
        out = compose(out, gens[g] if s > 0 else perm_inverse(gens[g]))
    return out


def closure_order(gens) -> int:
    """Order of the permutation group generated by ``gens`` (breadth-first)."""
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def cycle(n, *cyc):
    p = list(range(n))
    for c in cyc:
        for i, x in enumerate(c):
            p[x] = c[(i + 1) % len(c)]
    return tuple(p)


def von_dyck_permutations(orders):
    """Permutation images of ``x1, x2, x3`` with ``x_i^{p_i} = x1 x2 x3 = 1``
    generating a group of the spherical order."""
    key = tuple(orders)
    if key == (2, 3, 3):
        x1, x2 = cycle(4, (0, 1), (2, 3)), cycle(4, (0, 1, 2))
    elif key == (2, 3, 4):
        x1, x2 = cycle(4, (0, 1)), cycle(4, (1, 2, 3))
    elif key == (2, 3, 5):
        x1, x2 = cycle(5, (0, 1), (2, 3)), cycle(5, (1, 2, 4))
    elif key[:2] == (2, 2):
        m = key[2]
        # two reflections of an m-gon
        x1 = tuple((-i) % m for i in range(m))
        x2 = tuple((1 - i) % m for i in range(m))
        if m == 1:
            x1 = x2 = (1, 0)
        if m == 2:
            x1, x2 = (1, 0, 3, 2), (2, 3, 0, 1)
    else:
        raise ValueError(key)
    x3 = perm_inverse(compose(x1, x2))
    return x1, x2, x3


# ---------------------------------------------------------------- bridges

def chord_bridge_count(letters) -> tuple[int, int]:
    """Intersections and bridges counted from scratch: every repeat of a
    handle is one crossing; the bridge count is rounded up to odd."""
    seen: dict[int, int] = {}
    crossings = 0
    for g, _ in letters:
        if g in seen:
            crossings += 1
        seen[g] = seen.get(g, 0) + 1
    bridges = crossings if crossings % 2 else crossings + 1
    return crossings, bridges


def c_value(g: int, firsts) -> int:
    return min(g - gi + 1 for gi in firsts if g - gi >= 0)
