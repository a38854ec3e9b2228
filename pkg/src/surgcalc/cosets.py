"""Todd-Coxeter coset enumeration over the trivial subgroup.

HLT strategy: every live coset is scanned against every relator, defining new
cosets to fill gaps.  Deductions are pushed on a stack and processed by
scanning the relator rotations that start with the deduced letter.
Coincidences are merged with a union-find queue.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import abelian_invariants, invariant_factor_form
from .presentation import GroupPresentation
from .words import Word, canonical_relator, commutator


@dataclass(frozen=True)
class EnumBudget:
    max_cosets: int = 200_000
    max_definitions: int = 2_000_000

    def __post_init__(self):
        if self.max_cosets < 1 or self.max_definitions < 1:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class EnumOutcome:
    finite: bool
    order: int | None = None
    # rows are cosets, columns are g0, g0^-1, g1, g1^-1, ...
    table: tuple[tuple[int, ...], ...] | None = None
    definitions: int = 0

    @property
    def budget_exceeded(self) -> bool:
        return not self.finite

    def to_json(self) -> dict:
        return {"order": self.order} if self.finite else {"budget_exceeded": True}


class _BudgetExceeded(Exception):
    pass


def _column(letter: tuple[int, int]) -> int:
    g, s = letter
    return 2 * g + (0 if s > 0 else 1)


class _Enumerator:
    def __init__(self, p: GroupPresentation, budget: EnumBudget):
        self.ncols = 2 * p.rank
        self.budget = budget
        self.rels = [[_column(x) for x in r.letters] for r in p.relators]
        # rotations of relators and their inverses, bucketed by first column
        self.starting: list[list[list[int]]] = [[] for _ in range(self.ncols)]
        seen = set()
        for r in p.relators:
            for w in (r, r.inverse()):
                cols = [_column(x) for x in w.letters]
                for k in range(len(cols)):
                    rot = tuple(cols[k:] + cols[:k])
                    if rot not in seen:
                        seen.add(rot)
                        self.starting[rot[0]].append(list(rot))
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.definitions = 0
        self.deductions: list[tuple[int, int]] = []

    def rep(self, a: int) -> int:
        p = self.parent
        root = a
        while p[root] != root:
            root = p[root]
        while p[a] != root:
            p[a], a = root, p[a]
        return root

    def live(self, a: int) -> bool:
        return self.parent[a] == a

    def define(self, a: int, x: int) -> None:
        if len(self.table) >= self.budget.max_cosets or self.definitions >= self.budget.max_definitions:
            raise _BudgetExceeded
        b = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(b)
        self.definitions += 1
        self.table[a][x] = b
        self.table[b][x ^ 1] = a
        self.deductions.append((a, x))

    def scan(self, a: int, w: list[int], fill: bool) -> None:
        t = self.table
        f, i = a, 0
        b, j = a, len(w) - 1
        while True:
            while i <= j and t[f][w[i]] >= 0:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return
            while j >= i and t[b][w[j] ^ 1] >= 0:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                self.deductions.append((f, w[i]))
                return
            if not fill:
                return
            self.define(f, w[i])

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        lo, hi = min(k, l), max(k, l)
        self.parent[hi] = lo
        queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        t = self.table
        queue: list[int] = []
        self.merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            g = queue[qi]
            qi += 1
            for x in range(self.ncols):
                d = t[g][x]
                if d < 0:
                    continue
                t[d][x ^ 1] = -1
                mu, nu = self.rep(g), self.rep(d)
                if t[mu][x] >= 0:
                    self.merge(nu, t[mu][x], queue)
                elif t[nu][x ^ 1] >= 0:
                    self.merge(mu, t[nu][x ^ 1], queue)
                else:
                    t[mu][x] = nu
                    t[nu][x ^ 1] = mu

    def process_deductions(self) -> None:
        while self.deductions:
            a, x = self.deductions.pop()
            if not self.live(a):
                continue
            for w in self.starting[x]:
                self.scan(a, w, fill=False)
                if not self.live(a):
                    break
            b = self.table[a][x] if self.live(a) else -1
            if b >= 0 and self.live(b):
                for w in self.starting[x ^ 1]:
                    self.scan(b, w, fill=False)
                    if not self.live(b):
                        break

    def run(self) -> None:
        a = 0
        while a < len(self.table):
            if self.live(a):
                for w in self.rels:
                    self.scan(a, w, fill=True)
                    self.process_deductions()
                    if not self.live(a):
                        break
                if self.live(a):
                    for x in range(self.ncols):
                        if self.table[a][x] < 0:
                            self.define(a, x)
                            self.process_deductions()
            a += 1

    def compact(self) -> tuple[tuple[int, ...], ...]:
        alive = [a for a in range(len(self.table)) if self.live(a)]
        index = {a: i for i, a in enumerate(alive)}
        return tuple(tuple(index[self.rep(b)] for b in self.table[a]) for a in alive)


def enumerate_cosets(p: GroupPresentation, budget: EnumBudget | None = None) -> EnumOutcome:
    """Enumerate the cosets of the trivial subgroup; ``Finite(n)`` means ``|G| = n``."""
    budget = budget or EnumBudget()
    if p.rank == 0:
        return EnumOutcome(True, 1, ((),), 0)
    e = _Enumerator(p, budget)
    try:
        e.run()
    except _BudgetExceeded:
        return EnumOutcome(False, definitions=e.definitions)
    table = e.compact()
    if not verify_table(p, table):
        raise RuntimeError("coset table failed post-hoc verification")
    return EnumOutcome(True, len(table), table, e.definitions)


def verify_table(p: GroupPresentation, table: tuple[tuple[int, ...], ...]) -> bool:
    """Independent check: table is complete, permutation-consistent, and every
    relator traced from every coset closes."""
    n = len(table)
    ncols = 2 * p.rank
    for a, row in enumerate(table):
        if len(row) != ncols:
            return False
        for x, b in enumerate(row):
            if not 0 <= b < n or table[b][x ^ 1] != a:
                return False
    for r in p.relators:
        cols = [_column(x) for x in r.letters]
        for a in range(n):
            c = a
            for x in cols:
                c = table[c][x]
            if c != a:
                return False
    return True


def trace(table: tuple[tuple[int, ...], ...], w: Word, start: int = 0) -> int:
    c = start
    for letter in w.letters:
        c = table[c][_column(letter)]
    return c


def word_is_trivial(outcome: EnumOutcome, w: Word) -> bool:
    """Exact word problem in a group given by a finite regular coset table."""
    if not outcome.finite:
        raise ValueError("needs a completed enumeration")
    return trace(outcome.table, w) == 0


def _visibly_abelian(p: GroupPresentation) -> bool:
    rels = {canonical_relator(r) for r in p.relators}
    return all(
        canonical_relator(commutator(Word.gen(i), Word.gen(j))) in rels
        for i in range(p.rank)
        for j in range(i + 1, p.rank)
    )


def certify_product_of_cyclics(p: GroupPresentation, m: int, n: int, budget: EnumBudget | None = None) -> bool:
    """True iff ``|G| = m n`` by enumeration and ``H_1(G) = Z_m x Z_n``.

    A group of order ``m n`` whose abelianization also has order ``m n`` is
    abelian, so the two checks together certify ``G = Z_m x Z_n``.  When every
    pair of generators already commutes by a relator the group is its own
    abelianization and the enumeration is skipped.
    """
    if m < 1 or n < 1:
        raise ValueError("orders must be positive")
    if _visibly_abelian(p):
        return abelian_invariants(p) == invariant_factor_form([m, n])
    out = enumerate_cosets(p, budget)
    if not out.finite or out.order != m * n:
        return False
    return abelian_invariants(p) == invariant_factor_form([m, n])


# Names these orbifold groups commonly go by, with the order that name implies.
LISTED_NAMES = {
    (2, 2): ("Z2", 2),
    (2, 3, 3): ("A4", 12),
    (2, 3, 4): ("S4", 24),
    (2, 3, 5): ("S5", 120),
}


def orbifold_report(orders, budget: EnumBudget | None = None) -> dict:
    """Enumerated order of ``E_{p1..pk}`` next to the name it is listed under.

    A mismatch between the enumerated order and the listed name's order is
    reported as an unchecked identification rather than resolved either way.
    """
    from .presentation import von_dyck

    orders = tuple(int(p) for p in orders)
    if not orders or any(p < 1 for p in orders):
        raise ValueError("orders must be positive integers")
    out = enumerate_cosets(von_dyck(orders), budget)
    key = tuple(sorted(orders))
    if len(key) == 3 and key[:2] == (2, 2):
        listed = (f"D{key[2]}", 2 * key[2])
    else:
        listed = LISTED_NAMES.get(key)
    report = {"orders": list(orders), **out.to_json(), "h1": str(abelian_invariants(von_dyck(orders)))}
    claims = []
    if listed is not None:
        name, size = listed
        report["listed_as"] = name
        if out.finite and out.order == size:
            claims.append({"id": "listed_name_order", "status": "pass", "evidence": f"{name} has order {size}"})
        else:
            report["discrepancy"] = True
            claims.append(
                {
                    "id": "listed_name_order",
                    "status": "unchecked",
                    "evidence": f"listed as {name} (order {size}) but enumeration gives {out.order}; identification not asserted",
                }
            )
    report["claims"] = claims
    return report
