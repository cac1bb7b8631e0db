"""Batch command line: every command prints one JSON report (or a table rendering of it)."""
from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import boundary as bd
from . import fiber as fb
from . import graphs as gr
from . import presentations as pr
from .endos import compose, identity
from .errors import BudgetExceeded, EvaluationRankMismatch, FGBError, NotAMember, NotInvertible
from .words import Rank

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_PARSE = 0, 1, 2, 3


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse's own exit code 2 collides with "budget exceeded"
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


class Report:
    def __init__(self, command: str, parameters: dict):
        self.data: dict = {"command": command, "parameters": parameters, "checks": {}, "artifacts": []}
        self.timings: dict[str, float] = {}
        self._t = time.perf_counter()

    def check(self, name: str, ok: bool) -> bool:
        self.data["checks"][name] = bool(ok)
        return bool(ok)

    def lap(self, name: str) -> None:
        now = time.perf_counter()
        self.timings[name] = round(now - self._t, 4)
        self._t = now

    @property
    def ok(self) -> bool:
        return all(self.data["checks"].values())

    def finish(self, code: int | None = None) -> int:
        if code is None:
            code = EXIT_OK if self.ok else EXIT_FAIL
        self.data["status"] = {EXIT_OK: "ok", EXIT_BUDGET: "budget", EXIT_PARSE: "parse error"}.get(code, "fail")
        self.data["exit_code"] = code
        return code


def _budget(args, default: int) -> int:
    if args.budget is None:
        return default
    if args.budget > default and not args.allow_large:
        raise ParseError(f"--budget {args.budget} exceeds the default {default}; pass --allow-large to confirm")
    return args.budget


# -- verify-presentation ---------------------------------------------------------------

def _verify_shard(job):
    n, k, group, rels = job
    realizer = pr._Realizer(n, k, group)
    return [pr.verify_relation(r, n, k, group, realizer) for r in rels]


def cmd_verify_presentation(args, rep: Report) -> int:
    cap = _budget(args, pr.ENUMERATION_CAP)
    if args.n + args.k > cap:
        raise BudgetExceeded(f"n + k = {args.n + args.k} exceeds budget {cap}")
    schemas = [s.strip() for s in args.schemas.split(",")] if args.schemas else None
    if schemas:
        bad = [s for s in schemas if s not in pr.SCHEMAS]
        if bad:
            raise ParseError(f"unknown schemas {bad}; choose from {list(pr.SCHEMAS)}")
    rels = pr.enumerate_relations(args.n, args.k, args.group, schemas, allow_large=True)
    rep.lap("enumerate")
    workers = max(1, args.workers)
    rep.timings["workers"] = workers
    if workers == 1 or len(rels) < 2 * workers:
        results = _verify_shard((args.n, args.k, args.group, rels))
    else:
        size = -(-len(rels) // workers)
        jobs = [(args.n, args.k, args.group, rels[i:i + size]) for i in range(0, len(rels), size)]
        with ProcessPoolExecutor(workers) as ex:
            results = [r for part in ex.map(_verify_shard, jobs) for r in part]
    rep.lap("verify")
    summary: dict[str, dict] = {}
    for res in results:
        e = summary.setdefault(res.relation.schema, {"count": 0, "passed": 0, "failures": []})
        e["count"] += 1
        e["passed"] += res.ok
        if not res.ok:
            e["failures"].append(res.to_json())
    rep.data["schemas"] = summary
    rep.data["total"] = len(results)
    for s, e in summary.items():
        rep.check(f"schema {s}", e["passed"] == e["count"])
    rep.check("nonempty", bool(results) or args.schemas is not None)
    return rep.finish()


# -- h1 --------------------------------------------------------------------------------

def expected_h1(n: int, k: int, group: str) -> dict | None:
    if n > 2:
        return {"free_rank": 0, "torsion": [2]}
    if n == 0 and group == "conj":
        return {"free_rank": k * (k - 1), "torsion": []}
    return None


def cmd_h1(args, rep: Report) -> int:
    cap = _budget(args, pr.ENUMERATION_CAP)
    if args.n + args.k > cap:
        raise BudgetExceeded(f"n + k = {args.n + args.k} exceeds budget {cap}")
    shape = pr.h1(args.n, args.k, args.group, allow_large=True)
    rep.lap("h1")
    rep.data["h1"] = shape.to_json()
    rep.data["h1_str"] = str(shape)
    want = expected_h1(args.n, args.k, args.group)
    rep.data["expected"] = want
    if want is None:
        rep.data["note"] = "no expectation"
    else:
        rep.check("matches expected", shape.to_json() == want)
    return rep.finish()


# -- complex ---------------------------------------------------------------------------

def cmd_complex(args, rep: Report) -> int:
    budget = _budget(args, gr.VERTEX_BUDGET)
    cache = args.cache or os.environ.get("FGB_CACHE_DIR") or None
    up_to = "sigma" if args.sigma else "labeled"
    en = gr.enumerate_graphs(args.n, args.k, args.variant, up_to, budget=budget, cache_dir=cache)
    rep.lap("enumerate")
    if cache:
        rep.data["artifacts"].append(str(gr._cache_path(cache, args.n, args.k, args.variant, up_to)))
    dim = max(len(gr.max_forest_avoiding(g)) for g in en.graphs)
    want = gr.expected_dimension(args.n, args.k, args.variant)
    rep.data["dimension"] = dim
    rep.data["expected_dimension"] = want
    rep.check("dimension formula", dim == want)
    if not args.dim_only:
        by_nv: dict[int, int] = {}
        for g in en.graphs:
            by_nv[g.nv] = by_nv.get(g.nv, 0) + 1
        rep.data["counts"] = {"graphs": len(en.graphs), "maximal": sum(en.maximal),
                              "by_vertices": {str(v): c for v, c in sorted(by_nv.items())}}
        if args.variant == "nk":
            rows = gr.census(args.n, args.k, budget=budget, cache_dir=cache)
            table: dict[tuple, int] = {}
            for r in rows:
                key = (r["v"], r["e"], r["c"], r["ok"])
                table[key] = table.get(key, 0) + 1
            rep.data["census"] = [{"v": v, "e": e, "c": c, "ok": ok, "graphs": m}
                                  for (v, e, c, ok), m in sorted(table.items())]
            rep.check("census formulas", all(r["ok"] for r in rows))
        rep.lap("census")
    return rep.finish()


# -- theta -----------------------------------------------------------------------------

def _random_sigma_element(n: int, k: int, rng: random.Random) -> bd.SigmaBoundaryElement:
    e = pr.random_element(n, k, rng)
    return bd.SigmaBoundaryElement.twist(e, tuple(rng.sample(range(1, k + 1), k)))


def cmd_theta(args, rep: Report) -> int:
    n, k = args.n, args.k
    if k < 1:
        raise ParseError("theta needs k >= 1")
    thetas = [bd.theta_generator(j, Rank(n, k)) for j in range(1, k + 1)]
    rank = thetas[0].rank
    rep.check("theta_1(u_1) = v_1", thetas[0].image(rank.u(1)) == identity(rank).image(rank.v(1)))
    rep.check("theta order 3", all(compose(t, t, t).is_identity() and not t.is_identity()
                                   and not compose(t, t).is_identity() for t in thetas))
    rep.check("theta commute", all(compose(a, b) == compose(b, a)
                                   for a, b in itertools.combinations(thetas, 2)))
    rep.lap("theta")
    rng = random.Random(args.seed)
    norm_fail = hom_fail = 0
    for _ in range(args.samples):
        a = _random_sigma_element(n, k, rng)
        b = _random_sigma_element(n, k, rng)
        if bd.normalizes_theta(bd.beta_embed(a)) != a.sigma:
            norm_fail += 1
        if bd.beta_embed(a * b) != compose(bd.beta_embed(a), bd.beta_embed(b)):
            hom_fail += 1
    rep.lap("samples")
    rep.data["samples"] = args.samples
    rep.data["failures"] = {"normalizes": norm_fail, "homomorphism": hom_fail}
    rep.check("normalizes_theta(beta) = sigma", norm_fail == 0)
    rep.check("beta homomorphism", hom_fail == 0)
    return rep.finish()


# -- fiber -----------------------------------------------------------------------------

def fiber_checks(k: int, m: int) -> dict:
    """All fiber-window checks as a dict of named booleans plus the face counts."""
    P = fb.fiber_window(k, m)
    faces = fb.order_complex(P)
    chi = fb.euler_characteristic(faces)
    index = {x: i for i, x in enumerate(P.elements)}
    cube_ok = True
    for corner in itertools.product(range(-m, m), repeat=k):
        cube = fb.cube_elements(P, corner)
        top = P.maximal(cube)
        want = fb.FiberElement(tuple(corner), (1,) * k)
        cube_ok &= top == [index[want]] and all(P.leq(i, index[want]) for i in cube)
    trans_ok = True
    for t in itertools.product((-1, 0, 1), repeat=k):
        moved = {}
        for x, i in index.items():
            y = fb.fiber_translate(x, t)
            if any(t) and y == x:
                trans_ok = False
            if y in index:
                moved[i] = index[y]
        for i, j in itertools.permutations(moved, 2):
            if P.leq(i, j) != P.leq(moved[i], moved[j]):
                trans_ok = False
    return {"elements": len(P.elements), "faces": [len(f) for f in faces], "chi": chi,
            "checks": {"partial order": not P.check_axioms(), "chi = 1": chi == 1,
                       "cube maximum": cube_ok, "translation": trans_ok}}


def cmd_fiber(args, rep: Report) -> int:
    if args.k < 1 or args.window < 1:
        raise ParseError("need k >= 1 and window >= 1")
    res = fiber_checks(args.k, args.window)
    rep.lap("fiber")
    for name, ok in res.pop("checks").items():
        rep.check(name, ok)
    rep.data.update(res)
    return rep.finish()


# -- element ---------------------------------------------------------------------------

def load_elements(path: str) -> list:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("elements", [data])
    if not isinstance(data, list) or not data:
        raise ParseError("expected an element object or a nonempty list of them")
    out = []
    for d in data:
        try:
            if "sigma" in d:
                out.append(bd.SigmaBoundaryElement.from_json(d))
            else:
                out.append(bd.BoundaryElement.from_json(d))
        except (NotInvertible, NotAMember):
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed element {d!r}: {exc}") from exc
    return out


def _json(x) -> dict:
    return x.to_json()


def _invert(x):
    return x.inverse() if isinstance(x, bd.SigmaBoundaryElement) else bd.inverse(x)


def cmd_element(args, rep: Report) -> int:
    try:
        elems = load_elements(args.file)
    except (NotInvertible, NotAMember) as exc:
        if args.action == "check":
            rep.data["error"] = str(exc)
            rep.check("valid", False)
            return rep.finish()
        raise
    rep.lap("load")
    if args.action == "check":
        rep.data["elements"] = len(elems)
        rep.check("valid", True)
    elif args.action == "invert":
        rep.data["result"] = [_json(_invert(x)) for x in elems]
    elif args.action == "mul":
        acc = elems[0]
        for x in elems[1:]:
            acc = acc * x
        rep.data["result"] = _json(acc)
    else:
        if args.genus is None:
            raise ParseError("--action mcg needs --genus")
        verdicts = []
        for x in elems:
            if isinstance(x, bd.SigmaBoundaryElement):
                raise ParseError("mcg takes plain elements")
            verdicts.append(bd.fixes_boundary_word(x, args.genus))
        rep.data["fixes_boundary_word"] = verdicts if len(verdicts) > 1 else verdicts[0]
    rep.lap("action")
    return rep.finish()


# -- driver ----------------------------------------------------------------------------

def _render_table(d, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(d, dict):
        for key in sorted(d):
            lines += _render_table(d[key], f"{prefix}{key}.")
    elif isinstance(d, list) and d and isinstance(d[0], (dict, list)):
        for i, x in enumerate(d):
            lines += _render_table(x, f"{prefix}{i}.")
    else:
        lines.append(f"{prefix[:-1]:<40} {json.dumps(d, sort_keys=True, ensure_ascii=False)}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fgb", description="Free-group boundary automorphism toolkit.")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--no-timings", action="store_true", help="omit the timings field")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
    common.add_argument("--no-timings", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def nk(sp, k_default=None):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--k", type=int, required=k_default is None, default=k_default)

    def budget(sp):
        sp.add_argument("--budget", type=int)
        sp.add_argument("--allow-large", action="store_true", help="acknowledge a budget above the default")

    sp = sub.add_parser("verify-presentation", parents=[common])
    nk(sp)
    sp.add_argument("--group", choices=pr.GROUPS, default="conj")
    sp.add_argument("--schemas", help="comma separated, e.g. Q5,Q2")
    sp.add_argument("--workers", type=int, default=1)
    budget(sp)

    sp = sub.add_parser("h1", parents=[common])
    nk(sp)
    sp.add_argument("--group", choices=pr.GROUPS, default="conj")
    budget(sp)

    sp = sub.add_parser("complex", parents=[common])
    nk(sp)
    sp.add_argument("--variant", choices=gr.VARIANTS, default="nk")
    sp.add_argument("--sigma", action="store_true", help="identify graphs up to cycle relabeling")
    sp.add_argument("--dim-only", action="store_true")
    sp.add_argument("--cache", help="cache directory (default: $FGB_CACHE_DIR)")
    budget(sp)

    sp = sub.add_parser("theta", parents=[common])
    nk(sp)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("fiber", parents=[common])
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--window", type=int, required=True)

    sp = sub.add_parser("element", parents=[common])
    sp.add_argument("--file", required=True)
    sp.add_argument("--action", choices=("check", "invert", "mul", "mcg"), required=True)
    sp.add_argument("--genus", type=int)
    return p


COMMANDS = {"verify-presentation": cmd_verify_presentation, "h1": cmd_h1, "complex": cmd_complex,
            "theta": cmd_theta, "fiber": cmd_fiber, "element": cmd_element}


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    """Run a command and return ``(exit_code, report)`` without printing."""
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "format", "no_timings", "workers")}
    rep = Report(args.command, params)
    try:
        if any(getattr(args, a, 0) is not None and getattr(args, a, 0) < 0 for a in ("n", "k", "samples", "genus")):
            raise ParseError("n, k, samples and genus must be nonnegative")
        code = COMMANDS[args.command](args, rep)
    except BudgetExceeded as exc:
        rep.data["error"] = str(exc)
        code = rep.finish(EXIT_BUDGET)
    except (NotInvertible, NotAMember, EvaluationRankMismatch) as exc:
        rep.data["error"] = f"{type(exc).__name__}: {exc}"
        code = rep.finish(EXIT_FAIL)
    except (ParseError, ValueError, IndexError) as exc:
        rep.data["error"] = str(exc)
        code = rep.finish(EXIT_PARSE)
    except FGBError as exc:
        rep.data["error"] = f"{type(exc).__name__}: {exc}"
        code = rep.finish(EXIT_FAIL)
    out = dict(rep.data)
    if not args.no_timings:
        out["timings"] = rep.timings
    return code, out


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    code, out = run(argv)
    if args.format == "table":
        print("\n".join(_render_table(out)))
    else:
        print(json.dumps(out, sort_keys=True, indent=2, ensure_ascii=False))
    return code


if __name__ == "__main__":
    sys.exit(main())
