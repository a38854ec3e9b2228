"""Command-line front end.

Every command builds a JSON-ready payload; the human-readable output is
rendered from that same payload.  Exit codes: 0 when every claim passes or
is unchecked, 2 when some claim fails, 1 for usage or input errors, 3 when
an enumeration budget runs out.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import __version__
from .catalog import load_catalog, self_check
from .cosets import EnumBudget, enumerate_cosets, orbifold_report
from .dsl import DSLError, parse_presentation
from .linalg import abelian_invariants, is_dual_finite_torsion, smith_normal_form
from .manifold import group_size_bounds
from .mcg import MonodromySyntaxError, euler_number, parse_monodromy, recognize_fiber, to_matrix
from .presentation import GroupPresentation, exponent_matrix
from .words import Word

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_SEED = 20240521


@dataclass
class Report:
    command: list[str]
    payload: dict[str, Any] = field(default_factory=dict)
    exit_code: int = EXIT_OK

    def to_json(self) -> dict:
        return {"command": list(self.command), "exit_code": self.exit_code, **self.payload}


def load_report(text: str) -> Report:
    doc = json.loads(text)
    cmd = doc.pop("command")
    code = doc.pop("exit_code")
    return Report(cmd, doc, code)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _claims_exit(claims: Sequence[dict]) -> int:
    return EXIT_FAIL if any(c["status"] == "fail" for c in claims) else EXIT_OK


# ---------------------------------------------------------------- commands

def _abelianize(args) -> tuple[dict, int]:
    p = parse_presentation(args.presentation)
    inv = abelian_invariants(p)
    return {"presentation": str(p), "h1": str(inv), "free_rank": inv.free_rank, "torsion": list(inv.torsion)}, EXIT_OK


def _dft(args) -> tuple[dict, int]:
    p = parse_presentation(args.presentation)
    return {"presentation": str(p), "relators": len(p.relators), "dual_finite_torsion": is_dual_finite_torsion(p)}, EXIT_OK


def _enumerate(args) -> tuple[dict, int]:
    p = parse_presentation(args.presentation)
    out = enumerate_cosets(p, EnumBudget(max_cosets=args.max_cosets))
    payload = {"presentation": str(p), **out.to_json()}
    return payload, EXIT_OK if out.finite else EXIT_BUDGET


def _orbifold(args) -> tuple[dict, int]:
    report = orbifold_report(_ints(args.orders), EnumBudget(max_cosets=args.max_cosets))
    if report.get("budget_exceeded"):
        return report, EXIT_BUDGET
    return report, _claims_exit(report["claims"])


def _monodromy(args) -> tuple[dict, int]:
    w = parse_monodromy(args.word)
    if args.action == "fiber":
        f = recognize_fiber(w)
        return {"word": str(w), "fiber": str(f), "euler": f.euler}, EXIT_OK
    m = to_matrix(w)
    payload = {"word": str(w), "matrix": m.to_rows(), "identity": m.is_identity(), "twists": w.twist_count()}
    if payload["identity"] and (w.is_positive() or args.segment):
        segs = [parse_monodromy(s) for s in args.segment] if args.segment else None
        payload["euler"] = euler_number(w, segs)
    claims = [{"id": "identity_factorization", "status": "pass" if m.is_identity() else "fail", "evidence": f"matrix {m.to_rows()}"}]
    payload["claims"] = claims
    return payload, _claims_exit(claims)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _dossier(d) -> tuple[dict, int]:
    j = d.to_json()
    return j, _claims_exit(j["claims"])


def _construct_one(kind: str, params: tuple, catalog_path: str | None):
    from . import constructions as c

    cat = load_catalog(catalog_path)
    if kind == "xg":
        g, p, q = params
        return c.build_Xg(g, p, q, cat).to_json()
    if kind == "xG":
        text, moregen = params
        build = c.build_XG_moregen if moregen else c.build_XG
        return build(parse_presentation(text), cat).to_json()
    if kind == "xG-plus":
        return c.build_XplusG(parse_presentation(params[0]), cat).to_json()
    if kind == "xpq1":
        return c.build_Xpq_c1(*params, catalog=cat).to_json()
    if kind == "xpq23":
        h, p, q, mode = params
        return c.build_Xpq_c23(h, p, q, mode, cat).to_json()
    if kind == "rbd":
        return c.build_rbd_example(params[0], cat).to_json()
    raise UsageError(f"unknown construction {kind!r}")


def _run_jobs(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(*it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*items)))


def _construct(args) -> tuple[dict, int]:
    from .constructions import RECIPES

    kind, rest = args.kind, args.params
    if kind == "xg":
        if len(rest) != 3:
            raise UsageError("construct xg G P Q  (P and Q comma-separated)")
        items = [(kind, (int(rest[0]), _ints(rest[1]), _ints(rest[2])), args.catalog)]
    elif kind == "xG":
        if len(rest) != 1:
            raise UsageError("construct xG PRESENTATION [--moregen]")
        items = [(kind, (rest[0], args.moregen), args.catalog)]
    elif kind == "xG-plus":
        if len(rest) != 1:
            raise UsageError("construct xG-plus PRESENTATION")
        items = [(kind, (rest[0],), args.catalog)]
    elif kind == "xpq1":
        if len(rest) != 2:
            raise UsageError("construct xpq1 P Q")
        items = [(kind, (int(rest[0]), int(rest[1])), args.catalog)]
    elif kind == "xpq23":
        if len(rest) not in (2, 3):
            raise UsageError("construct xpq23 H P [Q] [--torus-z]")
        q = int(rest[2]) if len(rest) == 3 else 0
        mode = "TorusZ" if args.torus_z else "TorusTorus"
        items = [(kind, (int(rest[0]), int(rest[1]), q, mode), args.catalog)]
    elif kind == "rbd":
        names = list(RECIPES) if rest == ["all"] else rest
        if not names:
            raise UsageError(f"construct rbd NAME...  (one of: {', '.join(RECIPES)}, or all)")
        items = [(kind, (n,), args.catalog) for n in names]
    else:
        raise UsageError(f"unknown construction {kind!r}")
    results = _run_jobs(_construct_one, items, args.jobs)
    if len(results) == 1:
        return results[0], _claims_exit(results[0]["claims"])
    code = max(_claims_exit(r["claims"]) for r in results)
    return {"dossiers": results}, code


def _bounds(args) -> tuple[dict, int]:
    p = parse_presentation(args.presentation)
    return {"presentation": str(p), **group_size_bounds(p)}, EXIT_OK


def _catalog(args) -> tuple[dict, int]:
    cat = load_catalog(args.catalog)
    if args.action == "list":
        blocks = [{"label": e.label, **e.block.summary(), "pi1": str(e.block.pi1), "surfaces": sorted(e.surfaces), "tori": sorted(e.tori), "fibrations": [f.name for f in e.fibrations]} for e in cat]
        return {"source": cat.source, "blocks": blocks}, EXIT_OK
    report = self_check(cat)
    claims = [{"id": label, "status": "fail" if errs else "pass", "evidence": "; ".join(errs)} for label, errs in report.items()]
    return {"source": cat.source, "claims": claims}, _claims_exit(claims)


def _random_presentation(rng: random.Random) -> GroupPresentation:
    k = rng.randint(1, 3)
    rels = []
    for _ in range(rng.randint(0, 3)):
        letters = tuple((rng.randrange(k), rng.choice((1, -1))) for _ in range(rng.randint(1, 6)))
        w = Word(letters)
        if w:
            rels.append(w)
    return GroupPresentation(tuple(f"x{i}" for i in range(1, k + 1)), tuple(rels))


def _selftest(args) -> tuple[dict, int]:
    """Cross-check SNF backends and the H1 / enumeration relation on random input."""
    rng = random.Random(args.seed)
    claims = []
    for i in range(args.count):
        p = _random_presentation(rng)
        m = exponent_matrix(p)
        ok = True
        notes = []
        if m and m[0]:
            a = smith_normal_form(m, backend="python", transforms=False).invariant_factors
            b = smith_normal_form(m, backend="compiled", transforms=False).invariant_factors
            ok &= a == b
            notes.append(f"snf {list(a)}")
        inv = abelian_invariants(p)
        out = enumerate_cosets(p, EnumBudget(max_cosets=2000))
        if out.finite and inv.order is not None:
            ok &= out.order % inv.order == 0
            notes.append(f"|G| = {out.order}, |H1| = {inv.order}")
        if out.finite and inv.order is None:
            ok = False
            notes.append("finite group with infinite abelianization")
        claims.append({"id": f"random_{i}", "status": "pass" if ok else "fail", "evidence": f"{p}: " + ", ".join(notes)})
    return {"seed": args.seed, "claims": claims}, _claims_exit(claims)


# ---------------------------------------------------------------- parsing

def _common() -> argparse.ArgumentParser:
    c = _Parser(add_help=False)
    c.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print the JSON report")
    c.add_argument("--catalog", default=argparse.SUPPRESS, help="catalog JSON path (default: $SURGCALC_CATALOG or bundled)")
    c.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized checks")
    c.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for independent dossiers")
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="surgcalc", description="Invariant and fundamental-group calculus for surgeries on 4-manifolds.", parents=[common])
    parser.add_argument("--version", action="version", version=f"surgcalc {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    add("abelianize", _abelianize, "abelian invariants of a presentation").add_argument("presentation")
    add("dft", _dft, "dual-finite-torsion test").add_argument("presentation")
    sp = add("enumerate", _enumerate, "coset enumeration over the trivial subgroup")
    sp.add_argument("presentation")
    sp.add_argument("--max-cosets", type=int, default=100_000)
    sp = add("orbifold", _orbifold, "order of the orbifold group E_{p1,..,pk}")
    sp.add_argument("orders", help="comma-separated cone orders, e.g. 2,3,5")
    sp.add_argument("--max-cosets", type=int, default=100_000)
    sp = add("monodromy", _monodromy, "torus mapping class words")
    sp.add_argument("action", choices=["verify", "fiber"])
    sp.add_argument("word")
    sp.add_argument("--segment", action="append", default=[], help="fiber segment (repeatable) for the Euler number")
    sp = add("construct", _construct, "run a construction pipeline")
    sp.add_argument("kind", choices=["xg", "xG", "xG-plus", "xpq1", "xpq23", "rbd"])
    sp.add_argument("params", nargs="*")
    sp.add_argument("--moregen", action="store_true", help="xG: extra free generators variant")
    sp.add_argument("--torus-z", action="store_true", help="xpq23: perform only the first surgery")
    add("bounds", _bounds, "b+ bounds for a group").add_argument("presentation")
    add("catalog", _catalog, "inspect or check the block catalog").add_argument("action", choices=["list", "check"])
    sp = add("selftest", _selftest, "randomized cross-checks")
    sp.add_argument("--count", type=int, default=25)
    return parser


# ---------------------------------------------------------------- output

def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)) and all(not isinstance(x, (dict, list)) for x in v):
        return ", ".join(str(x) for x in v) or "-"
    return str(v) if not isinstance(v, (dict, list)) else json.dumps(v)


def _clip(text: str, limit: int = 160) -> str:
    return text if len(text) <= limit else text[: limit - 3] + "..."


def render(doc: dict) -> str:
    """Plain-text view of a JSON report; long values are clipped."""
    lines = []
    skip = ("command", "exit_code", "claims", "dossiers", "blocks", "data")
    rows = {k: v for k, v in doc.items() if k not in skip}
    for k, v in doc.get("data", {}).items():
        if k not in rows and (not isinstance(v, (dict, list)) or k in ("gamma_prime_orders", "blowdowns")):
            rows[k] = v
    width = max((len(k) for k in rows), default=0)
    for k, v in rows.items():
        lines.append(f"{k.ljust(width)}  {_clip(_scalar(v))}")
    for blk in doc.get("blocks", []):
        lines.append(f"{blk['label']:<16} e={blk['e']:<3} sigma={blk['sigma']:<4} b1={blk['b1']} b+={blk['b_plus']}  {_clip(blk['pi1'], 100)}")
    claims = doc.get("claims", [])
    if claims:
        idw = max(len(c["id"]) for c in claims)
        lines.append("")
        for c in claims:
            lines.append(f"  [{c['status'].upper():<9}] {c['id'].ljust(idw)}  {_clip(c['evidence'])}")
    for d in doc.get("dossiers", []):
        lines.append("")
        lines.append(render(d))
    if "exit_code" in doc:
        lines.append("")
        lines.append(f"exit {doc['exit_code']}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None) -> Report:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    for name, default in (("json", False), ("catalog", None), ("seed", DEFAULT_SEED), ("jobs", 1)):
        if not hasattr(args, name):
            setattr(args, name, default)
    payload, code = args.fn(args)
    return Report(argv, payload, code)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    try:
        report = run(argv)
    except UsageError as e:
        print(f"surgcalc: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DSLError, MonodromySyntaxError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        if want_json:
            print(json.dumps({"command": argv, "exit_code": EXIT_USAGE, "error": str(msg)}))
        print(f"surgcalc: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    doc = report.to_json()
    print(json.dumps(doc, indent=2) if want_json else render(doc))
    return report.exit_code
