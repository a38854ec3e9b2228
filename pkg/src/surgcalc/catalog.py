"""Building-block catalog: closed blocks with their surface and torus gluing data.

The shipped ``data/catalog.json`` is generated from :func:`default_entries`
and must round-trip byte for byte through :func:`load_catalog` and
:func:`dump_catalog`.  ``SURGCALC_CATALOG`` overrides the path.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from pathlib import Path

from .dsl import format_presentation, format_word, parse_presentation, parse_word
from .manifold import EmbeddedSurfaceData, LagrangianTorusData, ManifoldBlock, Minimality
from .presentation import GroupPresentation

FORMAT_VERSION = 1
ENV_VAR = "SURGCALC_CATALOG"


@dataclass(frozen=True)
class Fibration:
    """An elliptic fibration on a rational surface, as exceptional-class data.

    ``necklace`` and ``sections`` index into the owning entry's ``classes``,
    which are coefficient vectors in the basis ``H, E1, ..., E9`` with the
    diagonal form ``(1, -1, ..., -1)``.  Components are listed in cyclic order.
    """

    name: str
    necklace: tuple[int, ...]
    sections: tuple[int, ...]
    fishtails: int
    other_fibers: tuple[int, ...] = ()
    note: str = ""


@dataclass(frozen=True)
class CatalogEntry:
    block: ManifoldBlock
    surfaces: dict[str, EmbeddedSurfaceData] = field(default_factory=dict)
    tori: dict[str, LagrangianTorusData] = field(default_factory=dict)
    classes: tuple[tuple[int, ...], ...] = ()
    fibrations: tuple[Fibration, ...] = ()

    @property
    def label(self) -> str:
        return self.block.label


# ---------------------------------------------------------------- builders

def _p(text: str) -> GroupPresentation:
    return parse_presentation(text)


def _surface(genus, self_int, comp: GroupPresentation, images, meridian="1") -> EmbeddedSurfaceData:
    g = comp.generators
    return EmbeddedSurfaceData(genus, self_int, comp, tuple(parse_word(w, g) for w in images), parse_word(meridian, g))


def _torus(comp: GroupPresentation, parallel: str, meridian: str) -> LagrangianTorusData:
    g = comp.generators
    return LagrangianTorusData(comp, parse_word(parallel, g), parse_word(meridian, g))


def sigma_g_times_t2(g: int) -> GroupPresentation:
    a = [f"a{i}" for i in range(1, g + 1)]
    b = [f"b{i}" for i in range(1, g + 1)]
    rels = [" ".join(f"[a{i},b{i}]" for i in range(1, g + 1))]
    for x in a + b:
        rels += [f"[{x},c]", f"[{x},d]"]
    rels.append("[c,d]")
    return _p(f"<{', '.join(a + b + ['c', 'd'])} | {', '.join(rels)}>")




def _cls(h=0, **e) -> tuple[int, ...]:
    v = [h] + [0] * 9
    for k, c in e.items():
        v[int(k[1:])] = c
    return tuple(v)


def _e1_classes_and_fibrations():
    classes: list[tuple[int, ...]] = []

    def idx(c):
        if c not in classes:
            classes.append(c)
        return classes.index(c)

    E = lambda i: _cls(**{f"E{i}": 1})  # noqa: E731
    diff = lambda i, j: _cls(**{f"E{i}": 1, f"E{j}": -1})  # noqa: E731

    c1 = Fibration(
        "construction_1",
        necklace=tuple(
            idx(c)
            for c in (
                _cls(1, E1=-1, E6=-1, E7=-1),
                diff(1, 4),
                _cls(1, E1=-1, E2=-1, E3=-1),
                diff(2, 5),
                _cls(1, E2=-1, E8=-1, E9=-1),
            )
        ),
        sections=tuple(idx(E(i)) for i in range(3, 10)),
        fishtails=7,
    )
    c2 = Fibration(
        "construction_2",
        necklace=tuple(
            idx(c)
            for c in (
                diff(1, 2),
                diff(2, 3),
                diff(3, 4),
                diff(4, 5),
                _cls(3, E1=-2, E2=-1, E3=-1, E4=-1, E6=-1, E7=-1, E8=-1, E9=-1),
            )
        ),
        sections=tuple(idx(E(i)) for i in range(5, 10)),
        fishtails=7,
    )
    i4 = Fibration(
        "i4_six_sections",
        necklace=tuple(
            idx(c)
            for c in (
                diff(3, 4),
                diff(2, 3),
                diff(1, 2),
                _cls(3, E1=-2, E2=-1, E3=-1, E5=-1, E6=-1, E7=-1, E8=-1, E9=-1),
            )
        ),
        sections=tuple(idx(E(i)) for i in range(4, 10)),
        fishtails=8,
        note="derived: four infinitely near base points; one section meets the first component, five the last",
    )
    i6 = Fibration(
        "i6_two_i2",
        necklace=tuple(
            idx(c)
            for c in (
                _cls(1, E1=-1, E5=-1, E7=-1),
                diff(1, 2),
                _cls(1, E1=-1, E3=-1, E8=-1),
                diff(3, 4),
                _cls(1, E3=-1, E5=-1, E9=-1),
                diff(5, 6),
            )
        ),
        sections=tuple(idx(E(i)) for i in (7, 2, 8, 4, 9, 6)),
        fishtails=2,
        other_fibers=(2, 2),
        note="derived: a triangle of lines with doubled base points at the vertices; section i meets component i",
    )
    generic = Fibration("generic", necklace=(), sections=tuple(idx(E(i)) for i in range(1, 10)), fishtails=12)
    return tuple(classes), (c1, c2, i4, i6, generic)


def default_entries() -> list[CatalogEntry]:
    out = []
    trivial = GroupPresentation()
    fiber = EmbeddedSurfaceData(1, 0, trivial, (parse_word("1", ()),) * 2, parse_word("1", ()))
    classes, fibrations = _e1_classes_and_fibrations()
    for n in range(1, 5):
        block = ManifoldBlock(f"E({n})", 12 * n, -8 * n, trivial, Minimality("yes", "elliptic surface") if n > 1 else Minimality("no"), "-inf" if n == 1 else ("0" if n == 2 else "1"))
        out.append(
            CatalogEntry(
                block,
                surfaces={"fiber": fiber},
                classes=classes if n == 1 else (),
                fibrations=fibrations if n == 1 else (),
            )
        )

    z2 = _p("<x, y | [x,y]>")
    out.append(CatalogEntry(ManifoldBlock("T2xS2", 0, 0, z2, Minimality("yes", "ruled"), "-inf")))
    for g in (1, 2, 3):
        out.append(CatalogEntry(ManifoldBlock(f"Sigma{g}xT2", 0, 0, sigma_g_times_t2(g), Minimality("yes", "product"), "0" if g == 1 else "1")))

    z4 = _p("<a, b, c, d | [a,b], [a,c], [a,d], [b,c], [b,d], [c,d]>")
    # complement of both Lagrangian tori: the commutators they carry are dropped
    z4_minus = _p("<a, b, c, d | [a,b], [a,c], [b,c], [c,d]>")
    out.append(
        CatalogEntry(
            ManifoldBlock("T4#2CP2bar", 2, -2, z4, Minimality("no"), "0"),
            surfaces={"sigma2_hat": _surface(2, 0, z4, ["a", "b", "c", "d"])},
            tori={
                "a'xc'": _torus(z4_minus, "d a d^-1", "[d,b^-1]"),
                "b'xc''": _torus(z4_minus, "b", "[a^-1,d]"),
            },
        )
    )

    zp = _p("<x', y' | [x',y']>")
    out.append(
        CatalogEntry(
            ManifoldBlock("T2xS2#4CP2bar", 4, -4, zp, Minimality("no"), "-inf"),
            surfaces={"sigma2": _surface(2, 0, zp, ["x'", "y'", "x'^-1", "y'^-1"])},
        )
    )
    out.append(
        CatalogEntry(
            ManifoldBlock("T2xS2#3CP2bar", 3, -3, z2, Minimality("no"), "-inf"),
            # generator order a2, b2, c2, d2
            surfaces={"sigma2": _surface(2, 0, z2, ["x^-2", "y^-1", "x", "y"])},
        )
    )

    zpp_comp = _p(
        "<alpha1, alpha2, alpha3, alpha4, mu, g1 | alpha3 = [alpha1^-1,alpha4^-1], "
        "alpha4 = [alpha1,alpha3^-1], [alpha2,alpha3], [alpha2,alpha4]>"
    )
    zpp_closed = _p(
        "<alpha1, alpha2, alpha3, alpha4 | alpha3 = [alpha1^-1,alpha4^-1], "
        "alpha4 = [alpha1,alpha3^-1], [alpha2,alpha3], [alpha2,alpha4]>"
    )
    out.append(
        CatalogEntry(
            ManifoldBlock("Z''(1,1)", 1, -1, zpp_closed, Minimality("unknown"), "unknown"),
            surfaces={"sigma2_bar": _surface(2, 0, zpp_comp, ["alpha1", "alpha2", "alpha3^2", "alpha4"], "mu")},
        )
    )
    return out


# ---------------------------------------------------------------- JSON

def _pres(p: GroupPresentation) -> str:
    return format_presentation(p)


def _surface_json(name, s: EmbeddedSurfaceData) -> dict:
    g = s.complement.generators
    return {
        "name": name,
        "genus": s.genus,
        "self_int": s.self_int,
        "complement_pi1": _pres(s.complement),
        "images": [format_word(w, g) for w in s.images],
        "meridian": format_word(s.meridian, g),
    }


def _torus_json(name, t: LagrangianTorusData) -> dict:
    g = t.complement.generators
    return {
        "name": name,
        "complement_pi1": _pres(t.complement),
        "parallel": format_word(t.parallel, g),
        "meridian": format_word(t.meridian, g),
    }


def entry_to_json(entry: CatalogEntry) -> dict:
    b = entry.block
    obj = {
        "label": b.label,
        "e": b.e,
        "sigma": b.sigma,
        "pi1": _pres(b.pi1),
        "minimal": b.minimal.state,
        "minimal_provenance": b.minimal.provenance,
        "kodaira": b.kodaira,
        "surfaces": [_surface_json(k, v) for k, v in entry.surfaces.items()],
        "tori": [_torus_json(k, v) for k, v in entry.tori.items()],
        "classes": [list(c) for c in entry.classes],
    }
    if entry.fibrations:
        obj["fibrations"] = [
            {
                "name": f.name,
                "necklace": list(f.necklace),
                "sections": list(f.sections),
                "fishtails": f.fishtails,
                "other_fibers": list(f.other_fibers),
                "note": f.note,
            }
            for f in entry.fibrations
        ]
    return obj


def entry_from_json(obj: dict) -> CatalogEntry:
    surfaces = {}
    for s in obj.get("surfaces", []):
        comp = parse_presentation(s["complement_pi1"])
        surfaces[s["name"]] = _surface(s["genus"], s["self_int"], comp, s["images"], s["meridian"])
    tori = {}
    for t in obj.get("tori", []):
        tori[t["name"]] = _torus(parse_presentation(t["complement_pi1"]), t["parallel"], t["meridian"])
    block = ManifoldBlock(
        obj["label"],
        obj["e"],
        obj["sigma"],
        parse_presentation(obj["pi1"]),
        Minimality(obj.get("minimal", "unknown"), obj.get("minimal_provenance", "")),
        obj.get("kodaira", "unknown"),
    )
    fibs = tuple(
        Fibration(f["name"], tuple(f["necklace"]), tuple(f["sections"]), f["fishtails"], tuple(f.get("other_fibers", ())), f.get("note", ""))
        for f in obj.get("fibrations", [])
    )
    return CatalogEntry(block, surfaces, tori, tuple(tuple(c) for c in obj.get("classes", [])), fibs)


def dump_catalog(entries: list[CatalogEntry]) -> str:
    doc = {"format": FORMAT_VERSION, "blocks": [entry_to_json(e) for e in entries]}
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    # integer vectors on one line
    text = _INT_ARRAY.sub(lambda m: "[" + ", ".join(re.findall(r"-?\d+", m.group(0))) + "]", text)
    return text + "\n"


_INT_ARRAY = re.compile(r"\[\s*-?\d+(?:,\s*-?\d+)*\s*\]")


def parse_catalog(text: str) -> list[CatalogEntry]:
    doc = json.loads(text)
    if doc.get("format") != FORMAT_VERSION:
        raise ValueError(f"unsupported catalog format {doc.get('format')!r}")
    return [entry_from_json(o) for o in doc["blocks"]]


def default_catalog_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("surgcalc") / "data" / "catalog.json"))


class Catalog:
    def __init__(self, entries: list[CatalogEntry], source: str = ""):
        self.entries = {e.label: e for e in entries}
        self.source = source

    def __getitem__(self, label: str) -> CatalogEntry:
        try:
            return self.entries[label]
        except KeyError:
            raise KeyError(f"catalog has no block {label!r}") from None

    def __iter__(self):
        return iter(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)


_cache: dict[str, Catalog] = {}


def load_catalog(path: str | Path | None = None) -> Catalog:
    path = Path(path) if path is not None else default_catalog_path()
    key = str(path.resolve())
    if key not in _cache:
        _cache[key] = Catalog(parse_catalog(path.read_text(encoding="utf-8")), key)
    return _cache[key]


# ---------------------------------------------------------------- self-check

def intersection(u, v) -> int:
    """Diagonal form ``H^2 = 1``, ``Ei^2 = -1``."""
    return u[0] * v[0] - sum(x * y for x, y in zip(u[1:], v[1:]))


FIBER_CLASS = (3,) + (-1,) * 9


def check_fibration(classes, f: Fibration) -> list[str]:
    """Integer checks on one fibration; returns the list of failures."""
    errs = []
    comps = [classes[i] for i in f.necklace]
    secs = [classes[i] for i in f.sections]
    for c in comps:
        if intersection(c, c) != -2:
            errs.append(f"{f.name}: component {c} has square {intersection(c, c)}")
    for s in secs:
        if intersection(s, s) != -1:
            errs.append(f"{f.name}: section {s} has square {intersection(s, s)}")
        if intersection(s, FIBER_CLASS) != 1:
            errs.append(f"{f.name}: section {s} meets the fiber {intersection(s, FIBER_CLASS)} times")
    n = len(comps)
    if n:
        total = tuple(sum(c[i] for c in comps) for i in range(10))
        if total != FIBER_CLASS:
            errs.append(f"{f.name}: components sum to {total}, not the fiber class")
        for i, j in combinations(range(n), 2):
            want = 1 if (j - i) % n in (1, n - 1) else 0
            if n == 2:
                want = 2
            got = intersection(comps[i], comps[j])
            if got != want:
                errs.append(f"{f.name}: components {i} and {j} meet {got} times, expected {want}")
        for s in secs:
            hits = [intersection(s, c) for c in comps]
            if sorted(hits) != [0] * (n - 1) + [1]:
                errs.append(f"{f.name}: section {s} meets the necklace as {hits}")
    euler = n + f.fishtails + sum(f.other_fibers)
    if euler != 12:
        errs.append(f"{f.name}: singular fibers have total Euler number {euler}")
    return errs


def self_check(catalog: Catalog) -> dict[str, list[str]]:
    """Per-entry list of failures (empty lists mean the entry passed)."""
    report = {}
    for entry in catalog:
        errs = []
        b = entry.block
        if b.label.startswith("E(") and b.label.endswith(")"):
            n = int(b.label[2:-1])
            if (b.e, b.sigma) != (12 * n, -8 * n):
                errs.append(f"(e, sigma) = {(b.e, b.sigma)}, expected {(12 * n, -8 * n)}")
        if not b.well_formed():
            errs.append("Betti numbers are not consistent")
        for f in entry.fibrations:
            errs += check_fibration(entry.classes, f)
        report[b.label] = errs
    return report


def section_meets(classes, f: Fibration) -> list[int]:
    """For each section, the necklace position it meets (-1 if none)."""
    out = []
    for s in f.sections:
        hits = [intersection(classes[s], classes[c]) for c in f.necklace]
        out.append(hits.index(1) if 1 in hits else -1)
    return out
