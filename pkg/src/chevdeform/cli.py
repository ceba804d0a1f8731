"""Command-line interface.

Every command computes a JSON payload (cached by its canonical inputs) and
renders it as markdown, CSV or JSON.  Rendering reads only the payload, so a
warm-cache run prints exactly what the cold run printed.

Exit codes: 0 success, 2 budget exceeded, 3 internal inconsistency (table and
brute force disagree, or an experiment misses its expected values), 64 usage.
"""
from __future__ import annotations

import argparse
import csv
import inspect
import io
import json
import sys
from importlib import resources

from . import __version__
from . import classifier as cl
from . import cohom
from . import experiments as ex
from . import ring as rg
from .cache import Cache
from .liemod import Unsupported, adjoint_module, analyze_module, build_lie, center, derived, is_perfect_lie
from .matgroup import (DEFAULT_BUDGET, BudgetExceeded, GroupError, GroupSpec, enumerate_group,
                       predicted_order, reduction_hom)

EXIT_OK, EXIT_BUDGET, EXIT_INCONSISTENT, EXIT_USAGE = 0, 2, 3, 64

LIE_OF = {"SL": "sl", "GL": "gl", "PGL": "pgl", "Sp": "sp", "SU": "su3"}
GROUP_OF = {v: k for k, v in LIE_OF.items()}


SCHEMAS = ("report", "atlas", "experiment", "result", "cache_record")


def load_schema(name):
    """A shipped JSON schema by short name, e.g. ``load_schema("report")``."""
    if name not in SCHEMAS:
        raise KeyError(f"no schema {name!r}")
    return json.loads(resources.files("chevdeform").joinpath(f"schemas/{name}.schema.json").read_text())


def schema_for(command):
    """Short name of the schema that validates the JSON output of a command."""
    return {"atlas": "atlas", "check": "report"}.get(command, "result")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# argument helpers

def _int_range(text):
    """'2..9' or '2,3,5' or '7'."""
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _isogenies(text):
    return [int(t) if t.isdigit() else t for t in text.split(",") if t]


def _family(text):
    for k in LIE_OF:
        if text.lower() == k.lower():
            return k
    raise UsageError(f"unknown family {text!r}; choose from {', '.join(LIE_OF)}")


def _spec(args):
    ring = rg.parse_ring(args.ring) if getattr(args, "ring", None) else rg.field_ring(rg.field_of_order(args.q))
    fam = _family(args.family)
    if fam == "SU":
        return GroupSpec("SU", 3, ring)
    return GroupSpec(fam, args.n, ring)


def _value(text):
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(text)
    except ValueError:
        return text


def _extra_params(tokens):
    params = {}
    key = None
    for tok in tokens:
        if tok.startswith("--"):
            name, eq, val = tok[2:].partition("=")
            if not name:
                raise UsageError(f"bad parameter {tok!r}")
            name = name.replace("-", "_")
            if eq:
                params[name] = _value(val)
                key = None
            else:
                params[name] = True
                key = name
        elif key is not None:
            params[key] = _value(tok)
            key = None
        else:
            raise UsageError(f"unexpected argument {tok!r}")
    return params


# ---------------------------------------------------------------------------
# commands: each returns (payload, exit status)

def _budget(args):
    return args.budget if args.budget is not None else DEFAULT_BUDGET


def _descriptor(args):
    if args.descriptor:
        return cl.parse_descriptor(args.descriptor)
    if args.type is None or args.q is None:
        raise UsageError("check needs a descriptor or --type and --q")
    iso = _isogenies(args.isogeny)[0]
    suffix = f":{iso}" if isinstance(iso, str) else f":int{iso}"
    return cl.parse_descriptor(f"{args.type}:q={args.q}" + ("" if args.type.startswith(("GL", "GSp")) else suffix))


def cmd_check(args, cache):
    d = _descriptor(args)
    key = {"op": "check", "descriptor": str(d), "oracle": args.oracle, "literal": args.literal}
    if args.oracle:
        payload = cache.get_or_compute(key, lambda: cl.cross_validate(d, args.budget, args.literal).to_json())
        return payload, EXIT_INCONSISTENT if payload["inconsistent"] else EXIT_OK
    return cache.get_or_compute(key, lambda: cl.classify(d, args.literal).to_json()), EXIT_OK


def cmd_atlas(args):
    types = [t for t in args.types.split(",") if t]
    reports = cl.atlas(types, _int_range(args.q), _isogenies(args.isogeny), literal=args.literal)
    if args.gaps:
        return {"gaps": [{"descriptor": d, "condition": c} for d, c in cl.gaps(reports)]}, EXIT_OK
    return [r.to_json() for r in reports], EXIT_OK


def cmd_lie(args, cache):
    field = rg.field_of_order(args.q)
    fam = args.family.lower()
    key = {"op": "lie", "verb": args.verb, "family": fam, "n": args.n, "q": args.q}

    def compute():
        g = build_lie(fam, args.n, field)
        if args.verb == "build":
            return {**g.to_json(), "perfect": is_perfect_lie(g)}
        if args.verb == "center":
            return center(g).to_json()
        if args.verb == "derived":
            D = derived(g)
            return {"dim": g.dim, "derivedDim": D.dim, "perfect": D.dim == g.dim}
        gfam = GROUP_OF.get(fam)
        if gfam is None:
            raise UsageError(f"no group for the Lie algebra {fam}")
        G = enumerate_group(GroupSpec(gfam, args.n, rg.field_ring(field)), _budget(args))
        return {"group": str(G.spec), **analyze_module(adjoint_module(G, g), f=field.f).to_json()}

    result = cache.get_or_compute(key, compute)
    return {"command": f"lie {args.verb}", "inputs": key, "result": result}, EXIT_OK


def _adjoint_setup(args):
    spec = _spec(args)
    G = enumerate_group(spec, _budget(args))
    lie = LIE_OF[spec.family]
    return G, build_lie(lie, spec.n, spec.ring.base)


def _splitting(family, n, field, route, check_complement, budget):
    e = cohom.congruence_extension(family, n, field, route)
    split = cohom.is_coboundary(e)
    out = {"extension": e.name, "kernelDim": e.r, "quotientOrder": e.quotient.order,
           "split": split, "verdict": "split" if split else "non-split", "route": route}
    consistent = True
    if check_complement:
        comp = cohom.find_complement(e, budget=budget or 2 ** 18)
        out["complementFound"] = comp is not None
        consistent = (comp is not None) == split
    iso = "ad" if family == "PGL" else "sc"
    dyn = {"SL": ("A", n - 1), "PGL": ("A", n - 1), "Sp": ("C", n // 2)}[family]
    try:
        d = cl.GroupTypeDescriptor(dyn[0], dyn[1], field.q, iso)
        tv = cl.classify(d).verdict("n-s")
    except cl.UnsupportedDescriptor:
        tv = cl.UNKNOWN
    out["table"] = tv
    if tv != cl.UNKNOWN and (tv == cl.HOLDS) == split:
        consistent = False
    out["consistent"] = consistent
    return out


def cmd_splitting(args, cache):
    ring = rg.parse_ring(args.ring)
    if ring.kind != "Witt2":
        raise UsageError("splitting is defined for witt2 rings, e.g. --ring witt2:q=5")
    fam = _family(args.family)
    if fam not in ("SL", "PGL", "Sp"):
        raise UsageError("splitting supports SL, PGL and Sp")
    key = {"op": "splitting", "family": fam, "n": args.n, "q": ring.q, "route": args.route,
           "complement": args.complement}
    result = cache.get_or_compute(key, lambda: _splitting(fam, args.n, ring.base, args.route,
                                                          args.complement, args.budget))
    payload = {"command": "splitting", "inputs": key, "headline": result["verdict"], "result": result}
    return payload, EXIT_OK if result["consistent"] else EXIT_INCONSISTENT


def cmd_cohom(args, cache):
    if args.verb == "splitting":
        args.ring = f"witt2:q={args.q}"
        return cmd_splitting(args, cache)
    fam = _family(args.family)
    key = {"op": "cohom", "verb": args.verb, "family": fam, "n": args.n, "q": args.q,
           "module": "adjoint" if args.verb == "h1" else "trivial", "degree": 1 if args.verb == "h1" else 2}

    def compute():
        if args.verb == "h1":
            G, g = _adjoint_setup(args)
            return {"group": str(G.spec), "order": G.order, "moduleDim": g.dim * g.f,
                    "h1": cohom.h1_dim(G, adjoint_module(G, g))}
        G = enumerate_group(_spec(args), _budget(args))
        p = G.spec.ring.base.p
        budget = args.budget if args.budget is not None else cohom.H2_BUDGET
        return {"group": str(G.spec), "order": G.order, "p": p, "h2": cohom.h2_trivial_dim(G, p, budget=budget)}

    result = cache.get_or_compute(key, compute)
    headline = f"{args.verb} = {result[args.verb]}"
    return {"command": f"cohom {args.verb}", "inputs": key, "headline": headline, "result": result}, EXIT_OK


def cmd_group(args, cache):
    spec = _spec(args)
    key = {"op": "group", "verb": args.verb, "spec": spec.to_json(), "level": args.level}

    def compute():
        G = enumerate_group(spec, _budget(args))
        if args.verb == "order":
            return {"group": str(spec), "order": G.order, "predicted": predicted_order(spec)}
        if args.verb == "enumerate":
            hist = {}
            for x in G.elements:
                k = G.element_order(x)
                hist[k] = hist.get(k, 0) + 1
            return {"group": str(spec), "order": G.order, "generators": [list(g) for g in G.generators],
                    "elementOrders": {str(k): hist[k] for k in sorted(hist)}}
        h = reduction_hom(G, args.level, _budget(args))
        image = h.image().order
        kernel = h.kernel().order
        return {"group": str(spec), "target": str(h.target.spec), "order": G.order, "image": image,
                "kernel": kernel, "surjective": image == h.target.order,
                "consistent": image * kernel == G.order}

    result = cache.get_or_compute(key, compute)
    payload = {"command": f"group {args.verb}", "inputs": key, "result": result}
    return payload, EXIT_OK if result.get("consistent", True) else EXIT_INCONSISTENT


def cmd_experiment(args, params, cache):
    name = args.name
    if name != "all" and name not in ex.EXPERIMENTS:
        raise UsageError(f"unknown experiment {name!r}; choose from {', '.join(sorted(ex.EXPERIMENTS))} or all")
    if name == "all" and params:
        raise UsageError("parameters apply to a single experiment")
    names = sorted(ex.EXPERIMENTS) if name == "all" else [name]
    results = []
    for nm in names:
        fn, defaults = ex.EXPERIMENTS[nm]
        p = {**defaults, **params}
        unknown = set(p) - set(inspect.signature(fn).parameters)
        if unknown:
            raise UsageError(f"{nm} does not take {', '.join(sorted(unknown))}")
        if args.budget is not None and "budget" in inspect.signature(fn).parameters:
            p["budget"] = args.budget
        key = {"op": "experiment", "name": nm, "params": {k: v for k, v in p.items() if k != "budget"}}
        results.append(cache.get_or_compute(key, lambda: fn(**p).to_json()))
    passed = all(r["pass"] for r in results)
    payload = {"command": "experiment run", "inputs": {"name": name, "params": params},
               "headline": "pass" if passed else "FAIL", "result": results}
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return payload, EXIT_OK if passed else EXIT_INCONSISTENT


def cmd_cache(args, cache):
    if args.verb == "clear":
        return {"command": "cache clear", "inputs": {}, "result": {"removed": cache.clear()}}, EXIT_OK
    return {"command": "cache info", "inputs": {}, "result": cache.info()}, EXIT_OK


# ---------------------------------------------------------------------------
# rendering

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in obj:
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj) and \
            not all(isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x) for x in obj):
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}[{i}]")
    elif isinstance(obj, (list, dict)):
        yield prefix, json.dumps(obj, sort_keys=True, separators=(",", ":"))
    else:
        yield prefix, obj


def _short(v):
    return {"Holds": "H", "Fails": "F", "Unknown": "?"}.get(v, v)


def _report_rows(reports):
    head = ["descriptor"] + list(cl.CONDITIONS)
    rows = []
    for r in reports:
        row = [r["label"]]
        for c in cl.CONDITIONS:
            v = r["conditions"][c]
            cell = v["verdict"]
            if "oracle" in v and v["oracle"] != v["verdict"]:
                cell += f" (oracle {v['oracle']})"
            row.append(cell)
        rows.append(row)
    return head, rows


def _table(fmt, head, rows):
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(head)
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    lines = ["| " + " | ".join(map(str, head)) + " |", "|" + "---|" * len(head)]
    lines += ["| " + " | ".join(str(c).replace("|", "\\|") for c in row) + " |" for row in rows]
    return "\n".join(lines)


def render(kind, payload, fmt):
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True)
    if kind in ("atlas", "check") and not (isinstance(payload, dict) and "gaps" in payload):
        reports = payload if isinstance(payload, list) else [payload]
        head, rows = _report_rows(reports)
        if fmt == "md":
            rows = [[row[0]] + [_short(c) if c in ("Holds", "Fails", "Unknown") else c for c in row[1:]]
                    for row in rows]
        text = _table(fmt, head, rows)
        if kind == "check" and fmt == "md":
            cites = [[c, v["cite"], v["source"]] for c, v in payload["conditions"].items()]
            text += "\n\n" + _table("md", ["condition", "clause", "source"], cites)
        return text
    if isinstance(payload, dict) and "gaps" in payload:
        return _table(fmt, ["descriptor", "condition"], [[g["descriptor"], g["condition"]] for g in payload["gaps"]])
    rows = list(_flatten(payload.get("result")))
    text = _table(fmt, ["key", "value"], rows)
    if fmt == "md" and payload.get("headline"):
        text = payload["headline"] + "\n\n" + text
    return text


# ---------------------------------------------------------------------------
# parser

def _group_args(p, ring=True):
    p.add_argument("--family", default="SL", help="SL, GL, PGL, Sp or SU")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--q", type=int, default=None)
    if ring:
        p.add_argument("--ring", default=None, help="field:q=7, dual:q=3, witt2:q=5, trunc:q=2,d=2,k=3")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("md", "csv", "json"), default=None)
    common.add_argument("--budget", type=int, default=None, help="cap on enumeration / elimination sizes")
    common.add_argument("--cache-dir", default=None, help="overrides $CHEVDEFORM_CACHE")
    common.add_argument("--no-cache", action="store_true")

    P = _Parser(prog="chevdeform", description="Deformation conditions for finite Chevalley groups.",
                parents=[common])
    P.add_argument("--version", action="version", version=f"chevdeform {__version__}")
    sub = P.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("atlas", parents=[common], help="condition matrix over a grid of types")
    a.add_argument("--types", default="A1,A2,C2")
    a.add_argument("--q", default="2..9")
    a.add_argument("--isogeny", default="sc,ad")
    a.add_argument("--gaps", action="store_true", help="list the (descriptor, condition) pairs left Unknown")
    a.add_argument("--literal", action="store_true", help="apply table clauses without the tiny-field guards")

    c = sub.add_parser("check", parents=[common], help="condition report for one group type")
    c.add_argument("descriptor", nargs="?", help="e.g. A1:q=7:sc, 2A2:q=2, GL3:q=2")
    c.add_argument("--type")
    c.add_argument("--q", type=int)
    c.add_argument("--isogeny", default="sc")
    c.add_argument("--oracle", action="store_true", help="also run brute force and compare")
    c.add_argument("--literal", action="store_true")

    lp = sub.add_parser("lie", parents=[common], help="adjoint Lie algebra computations")
    lp.add_argument("verb", choices=("build", "center", "derived", "analyze"))
    lp.add_argument("--family", default="sl", help="sl, gl, pgl, sp or su3")
    lp.add_argument("--n", type=int, default=2)
    lp.add_argument("--q", type=int, required=True)

    co = sub.add_parser("cohom", parents=[common], help="H^1 with adjoint coefficients, H^2 with F_p, W_2 splitting")
    co.add_argument("verb", choices=("h1", "h2", "splitting"))
    _group_args(co, ring=False)
    co.add_argument("--route", choices=("tree", "total"), default="tree")
    co.add_argument("--complement", action="store_true", help="also search for an explicit complement")

    s = sub.add_parser("splitting", parents=[common], help="does G(W_2(F)) -> G(F) split")
    s.add_argument("--family", default="SL")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--ring", required=True, help="witt2:q=5")
    s.add_argument("--route", choices=("tree", "total"), default="tree")
    s.add_argument("--complement", action="store_true")

    g = sub.add_parser("group", parents=[common], help="enumerated matrix groups")
    g.add_argument("verb", choices=("order", "enumerate", "reduce"))
    _group_args(g)
    g.add_argument("--level", type=int, default=1, help="reduce modulo m^level")

    e = sub.add_parser("experiment", parents=[common], help="worked examples and desk-scale checks")
    e.add_argument("action", choices=("run", "list"))
    e.add_argument("name", nargs="?", default="all")
    e.add_argument("--json", default=None, help="also write the results to this file")

    k = sub.add_parser("cache", parents=[common], help="inspect or clear the result cache")
    k.add_argument("verb", choices=("info", "clear"))
    return P


DEFAULT_FORMAT = {"atlas": "md", "check": "json"}


def main(argv=None):
    P = build_parser()
    args, extra = P.parse_known_args(argv)
    try:
        if extra and args.command != "experiment":
            raise UsageError(f"unrecognized arguments: {' '.join(extra)}")
        cache = Cache(args.cache_dir)
        if args.no_cache:
            cache.get = lambda key: None
            cache.put = lambda key, value: None
        fmt = args.format or DEFAULT_FORMAT.get(args.command, "md")
        cmd = args.command
        if cmd in ("cohom", "group") and args.q is None and not getattr(args, "ring", None):
            raise UsageError(f"{cmd} needs --q" + (" or --ring" if cmd == "group" else ""))
        if cmd == "atlas":
            payload, status = cmd_atlas(args)
        elif cmd == "check":
            payload, status = cmd_check(args, cache)
        elif cmd == "lie":
            payload, status = cmd_lie(args, cache)
        elif cmd == "cohom":
            payload, status = cmd_cohom(args, cache)
        elif cmd == "splitting":
            payload, status = cmd_splitting(args, cache)
        elif cmd == "group":
            payload, status = cmd_group(args, cache)
        elif cmd == "experiment":
            if args.action == "list":
                payload = {"command": "experiment list", "inputs": {},
                           "result": {k: v[1] for k, v in sorted(ex.EXPERIMENTS.items())}}
                status = EXIT_OK
            else:
                payload, status = cmd_experiment(args, _extra_params(extra), cache)
        else:
            payload, status = cmd_cache(args, cache)
    except BudgetExceeded as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, cl.UnsupportedDescriptor, rg.RingError, Unsupported, GroupError, KeyError) as err:
        print(f"chevdeform: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    print(render(args.command, payload, fmt))
    return status


if __name__ == "__main__":
    sys.exit(main())
