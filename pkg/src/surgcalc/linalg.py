"""Exact integer matrices, Smith normal form and abelian invariants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .presentation import GroupPresentation, exponent_matrix


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)] for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithForm:
    D: IntMatrix
    U: IntMatrix | None
    V: IntMatrix | None
    invariant_factors: tuple[int, ...]


# inputs below this bound go to the compiled int64 kernel; it bails out to
# the big-integer path if intermediate entries grow too large
_FAST_ENTRY_BOUND = 1 << 20
_FAST_MAX_DIM = 16
_kernel = None


def _load_kernel():
    global _kernel
    if _kernel is None:
        try:
            from . import _snf_kernel
        except ImportError:  # numba unavailable
            _kernel = False
        else:
            _kernel = _snf_kernel
    return _kernel


def smith_normal_form(
    a: IntMatrix | Sequence[Sequence[int]], transforms: bool = True, backend: str = "auto"
) -> SmithForm:
    """Smith normal form with unimodular ``U``, ``V`` such that ``U A V = D``.

    Pivot is the smallest nonzero absolute value in the active block, first in
    row-major order.  Invariant factors are nonnegative, each dividing the
    next, with zeros last.

    ``backend`` is ``"auto"``, ``"python"`` or ``"compiled"``; both backends run
    the same elimination and return identical results.
    """
    if backend not in ("auto", "python", "compiled"):
        raise ValueError(f"unknown backend {backend!r}")
    if not isinstance(a, IntMatrix):
        a = IntMatrix.from_rows(a)
    if backend != "python" and a.entries:
        small = max(a.rows, a.cols) <= _FAST_MAX_DIM and max(map(abs, a.entries)) < _FAST_ENTRY_BOUND
        if small and _load_kernel():
            out = _smith_compiled(a, transforms)
            if out is not None:
                return out
        if backend == "compiled" and not small:
            raise ValueError("matrix too large for the compiled backend")
    return _smith_python(a, transforms)


def _smith_compiled(a: IntMatrix, transforms: bool) -> SmithForm | None:
    import numpy as np

    arr = np.array(a.entries, dtype=np.int64).reshape(1, a.rows, a.cols)
    d, u, v, ok = _kernel.snf_batch(arr, transforms)
    if not ok[0]:
        return None
    factors = tuple(int(x) for x in d[0])
    dm = [[0] * a.cols for _ in range(a.rows)]
    for i, f in enumerate(factors):
        dm[i][i] = f
    return SmithForm(
        D=IntMatrix.from_rows(dm, a.cols),
        U=IntMatrix.from_rows(u[0].tolist(), a.rows) if transforms else None,
        V=IntMatrix.from_rows(v[0].tolist(), a.cols) if transforms else None,
        invariant_factors=factors,
    )


def _smith_python(a: IntMatrix, transforms: bool) -> SmithForm:
    nr, nc = a.rows, a.cols
    d = a.to_rows()
    u = [[int(i == j) for j in range(nr)] for i in range(nr)] if transforms else None
    v = [[int(i == j) for j in range(nc)] for i in range(nc)] if transforms else None

    t = 0
    while t < min(nr, nc):
        # smallest nonzero entry of the active block
        best = None
        for i in range(t, nr):
            row = d[i]
            for j in range(t, nc):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            d[t], d[pi] = d[pi], d[t]
            if u is not None:
                u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in d:
                row[t], row[pj] = row[pj], row[t]
            if v is not None:
                for row in v:
                    row[t], row[pj] = row[pj], row[t]

        p = d[t][t]
        dirty = False
        for i in range(t + 1, nr):
            x = d[i][t]
            if x:
                q = x // p
                if q:
                    ri, rt = d[i], d[t]
                    for j in range(t, nc):
                        ri[j] -= q * rt[j]
                    if u is not None:
                        ui, ut = u[i], u[t]
                        for j in range(nr):
                            ui[j] -= q * ut[j]
                if d[i][t]:
                    dirty = True
        rt = d[t]
        for j in range(t + 1, nc):
            x = rt[j]
            if x:
                q = x // p
                if q:
                    for row in d[t:]:
                        row[j] -= q * row[t]
                    if v is not None:
                        for row in v:
                            row[j] -= q * row[t]
                if rt[j]:
                    dirty = True
        if dirty:
            continue

        # pivot must divide the rest of the block
        bad_row = None
        for i in range(t + 1, nr):
            if any(d[i][j] % p for j in range(t + 1, nc)):
                bad_row = i
                break
        if bad_row is not None:
            rb = d[bad_row]
            for j in range(t, nc):
                rt[j] += rb[j]
            if u is not None:
                ub, ut = u[bad_row], u[t]
                for j in range(nr):
                    ut[j] += ub[j]
            continue

        if p < 0:
            d[t] = [-x for x in d[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]
        t += 1

    factors = tuple(d[i][i] for i in range(min(nr, nc)))
    return SmithForm(
        D=IntMatrix.from_rows(d, nc),
        U=IntMatrix.from_rows(u, nr) if u is not None else None,
        V=IntMatrix.from_rows(v, nc) if v is not None else None,
        invariant_factors=factors,
    )


def rank(a: IntMatrix | Sequence[Sequence[int]]) -> int:
    return sum(1 for f in smith_normal_form(a, transforms=False).invariant_factors if f)


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if any(t < 2 for t in self.torsion):
            raise ValueError(f"torsion coefficients must be >= 2: {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion coefficients must form a divisibility chain: {self.torsion}")

    @property
    def order(self) -> int | None:
        """Order of the group, or ``None`` when infinite."""
        if self.free_rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def invariant_factor_form(orders: Sequence[int]) -> AbelianInvariants:
    """Invariant-factor form of ``Z_{n1} x Z_{n2} x ...`` (0 means a free factor)."""
    diag = [[int(i == j) * n for j in range(len(orders))] for i, n in enumerate(orders)]
    factors = smith_normal_form(diag, transforms=False).invariant_factors if orders else ()
    return AbelianInvariants(sum(1 for f in factors if f == 0), tuple(f for f in factors if f > 1))


def abelian_invariants(p: GroupPresentation) -> AbelianInvariants:
    m = exponent_matrix(p)
    if p.rank == 0:
        return AbelianInvariants(0, ())
    factors = smith_normal_form(IntMatrix.from_rows(m, len(p.relators)), transforms=False).invariant_factors
    nonzero = [f for f in factors if f]
    return AbelianInvariants(p.rank - len(nonzero), tuple(f for f in nonzero if f > 1))


def is_dual_finite_torsion(p: GroupPresentation) -> bool:
    """Exponent matrix has rank equal to the number of relators."""
    if not p.relators:
        return True
    return rank(IntMatrix.from_rows(exponent_matrix(p), len(p.relators))) == len(p.relators)


def lattice_contains(columns: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Whether ``v`` is an integer combination of the columns of ``columns``.

    ``columns`` has ``len(v)`` rows.  Uses ``U A V = D``: ``v = A x`` is
    solvable iff each entry of ``U v`` is divisible by the matching diagonal
    entry (zero beyond the rank).
    """
    n = len(v)
    if not columns or not columns[0]:
        return all(x == 0 for x in v)
    a = IntMatrix.from_rows(columns)
    if a.rows != n:
        raise ValueError("dimension mismatch")
    sf = smith_normal_form(a)
    u = sf.U.to_rows()
    w = [sum(u[i][j] * v[j] for j in range(n)) for i in range(n)]
    diag = sf.invariant_factors
    for i, x in enumerate(w):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if x != 0:
                return False
        elif x % d:
            return False
    return True


def element_order(columns: Sequence[Sequence[int]], v: Sequence[int]) -> int | None:
    """Order of ``v`` in ``Z^n / (column lattice)``; ``None`` if infinite."""
    from math import gcd

    n = len(v)
    if not columns or not columns[0]:
        return 1 if all(x == 0 for x in v) else None
    sf = smith_normal_form(IntMatrix.from_rows(columns))
    u = sf.U.to_rows()
    w = [sum(u[i][j] * v[j] for j in range(n)) for i in range(n)]
    diag = sf.invariant_factors
    order = 1
    for i, x in enumerate(w):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if x:
                return None
            continue
        k = d // gcd(d, x)
        order = order * k // gcd(order, k)
    return order
