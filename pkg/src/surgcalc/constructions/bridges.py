"""Bridge plans: making each relator curve embedded by adding handles.

A relator word over ``b_1..b_k`` is drawn as a curve through the handles it
names.  Every repeated pass through the same handle is a self-crossing, each
crossing is resolved by one bridge (a new handle), and the number of bridges
per relator is made odd so that the curve's last bridge pairs with a new
generator.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..words import Word


def intersection_count(w: Word) -> int:
    """Self-crossings of the relator curve: sum over generators of (occurrences - 1).

    Occurrences are the chord endpoints around the circle; each extra strand
    through a handle crosses the first one exactly once in this model.
    """
    counts: dict[int, int] = {}
    for g, _ in w.letters:
        counts[g] = counts.get(g, 0) + 1
    return sum(max(0, n - 1) for n in counts.values())


@dataclass(frozen=True)
class RelatorBridges:
    intersections: int
    bridges: int
    first: int
    parity_fixed: bool

    @property
    def indices(self) -> range:
        return range(self.first, self.first + self.bridges)


@dataclass(frozen=True)
class BridgePlan:
    k: int
    relators: tuple[RelatorBridges, ...]

    @property
    def total_genus(self) -> int:
        return self.k + sum(r.bridges for r in self.relators)

    def c(self, g: int) -> int:
        """``min_i {g - g_i + 1 : g >= g_i}`` over first-bridge indices ``g_i``."""
        vals = [g - r.first + 1 for r in self.relators if g >= r.first]
        if not vals or not self.k < g <= self.total_genus:
            raise ValueError(f"{g} is not a bridge index")
        return min(vals)

    def owner(self, g: int) -> int:
        """Index of the relator whose block contains bridge ``g``."""
        for i, r in enumerate(self.relators):
            if g in r.indices:
                return i
        raise ValueError(f"{g} is not a bridge index")

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "k_prime": self.total_genus,
            "relators": [
                {"intersections": r.intersections, "bridges": r.bridges, "first": r.first, "parity_fixed": r.parity_fixed}
                for r in self.relators
            ],
            "c": {str(g): self.c(g) for g in range(self.k + 1, self.total_genus + 1)},
        }


def bridge_moves(relators: list[Word], k: int) -> BridgePlan:
    if any(not r for r in relators):
        raise ValueError("relators must be nonempty")
    plans = []
    nxt = k + 1
    for r in relators:
        n = intersection_count(r)
        fix = n % 2 == 0
        count = n + 1 if fix else n
        plans.append(RelatorBridges(n, count, nxt, fix))
        nxt += count
    return BridgePlan(k, tuple(plans))
