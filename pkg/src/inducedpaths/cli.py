"""Command-line front end: generate, extract, verify, oracle, bench, convert.

Exit codes: 0 success / verified, 1 verification failure, 2 input or
validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
import time
from typing import Sequence

from . import bounds
from .errors import InducedPathError, InputError, ValidationError
from .extractors import (AlmostBoundedDegreeBase, BoundedDegreeBase, ExtractionCertificate, extract_adhesion_pathrep,
                         extract_bounded_degree, extract_from_vortex, extract_master, extract_pathwidth,
                         extract_tree_composition, extract_treewidth)
from .generators import (PROFILES, GeneratedInstance, gen_chained_cliques, gen_outerplanar_family, gen_path_power,
                         gen_random_validated, gen_worstcase_interval)
from .graph import canonical_json
from .oracle import hamiltonian_path, longest_induced_path, max_clique, verify_certificate
from .representations import make_varied

EXTRACTORS = ("pathwidth", "treewidth", "bounded-degree", "adhesion", "tree-composition", "vortex", "master")
BENCH_COLUMNS = ["instance", "n", "k", "L", "bound", "oracle", "time_ms"]
BENCH_ORACLE_CAP = 22


class UsageError(InputError):
    pass


# -- io helpers -----------------------------------------------------------------------
def _read_json(path: str):
    try:
        with (sys.stdin if path == "-" else open(path, encoding="utf-8")) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def load_instance(path: str) -> tuple[GeneratedInstance, dict]:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: an instance must be a JSON object")
    return GeneratedInstance.from_dict(data), data


# -- generation -------------------------------------------------------------------------
def generate(family: str, params: dict, seed: int = 0) -> GeneratedInstance:
    if family == "worstcase":
        return gen_worstcase_interval(params["n"], params["k"])
    if family == "outerplanar":
        return gen_outerplanar_family(params["gen"])
    if family == "path-power":
        return gen_path_power(params["n"], params["k"])
    if family == "chained-cliques":
        return gen_chained_cliques(params["q"], params["s"])
    if family == "random":
        return gen_random_validated(seed, params.get("profile", "interval"), params.get("n"), params.get("k"),
                                    params.get("delta"))
    raise UsageError(f"unknown generator {family!r}")


def default_extractor(inst: GeneratedInstance) -> str:
    meta = inst.meta
    kind = meta.get("construction")
    if kind == "outerplanar":
        return "treewidth"
    if kind == "chained-cliques":
        return "adhesion"
    if kind == "random":
        return {"interval": "pathwidth", "ktree-path-built": "treewidth"}.get(meta.get("profile"), "bounded-degree")
    if inst.rep is None:
        return "bounded-degree"
    return "pathwidth" if inst.rep.kind == "path" else "treewidth"


def run_extractor(inst: GeneratedInstance, kind: str, raw: dict | None = None, *, k: int | None = None,
                  a: int | None = None, delta: int | None = None) -> ExtractionCertificate:
    g, ham, rep = inst.graph, inst.ham, inst.rep
    if kind == "bounded-degree":
        return extract_bounded_degree(g, ham)
    if rep is None:
        raise ValidationError(f"extractor {kind!r} needs a representation in the instance")
    if kind == "pathwidth":
        return extract_pathwidth(g, ham, rep, k)
    if kind == "treewidth":
        return extract_treewidth(g, ham, rep, k)
    if kind == "adhesion":
        return extract_adhesion_pathrep(g, ham, make_varied(rep)[0], a)
    if kind == "vortex":
        return extract_from_vortex(g, ham, rep, k)
    if kind == "tree-composition":
        rv, _ = make_varied(rep)
        base = BoundedDegreeBase(delta if delta is not None else max(1, g.max_degree()))
        return extract_tree_composition(g, ham, rv, base, a)
    if kind == "master":
        kinds = (raw or {}).get("torso_kinds")
        if kinds is None:
            d = delta if delta is not None else max(1, g.max_degree())
            kinds = {t: {"kind": "almost-bounded-degree", "k": 0, "delta": d} for t in range(rep.num_nodes)}
        return extract_master(g, ham, rep, kinds)
    raise UsageError(f"unknown extractor {kind!r}")


# -- subcommands -------------------------------------------------------------------------
def cmd_generate(args) -> int:
    params = {k: getattr(args, k) for k in ("n", "k", "gen", "q", "s", "profile", "delta") if getattr(args, k, None) is not None}
    inst = generate(args.family, params, args.seed)
    _write(inst.dumps(), args.out)
    return 0


def cmd_extract(args) -> int:
    inst, raw = load_instance(args.instance)
    kind = args.kind or default_extractor(inst)
    cert = run_extractor(inst, kind, raw, k=args.k, a=args.a, delta=args.delta)
    _write(cert.dumps(), args.out)
    if not cert.verified:
        print(f"certificate NOT verified: order {cert.order} misses the {cert.bound_kind} bound", file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    inst, _ = load_instance(args.instance)
    data = _read_json(args.certificate)
    if not isinstance(data, dict):
        raise InputError("a certificate must be a JSON object")
    verdict = verify_certificate(inst.graph, data)
    if verdict.reason == "malformed":
        print(canonical_json({"verified": False, "reason": "malformed"}), end="")
        return 2
    print(canonical_json({"verified": verdict.ok, "reason": verdict.reason}), end="")
    return 0 if verdict.ok else 1


def cmd_oracle(args) -> int:
    inst, _ = load_instance(args.instance)
    fn = {"lip": longest_induced_path, "clique": max_clique, "ham": hamiltonian_path}[args.what]
    kwargs = {"time_limit": args.time_limit}
    if args.cap is not None:
        kwargs["cap"] = args.cap
    res = fn(inst.graph, **kwargs)
    _write(canonical_json(dict(res.to_dict(), problem=args.what)), args.out)
    return 0


def _grid_rows(args) -> list[dict]:
    if args.grid:
        rows = _read_json(args.grid)
        if not isinstance(rows, list):
            raise InputError("grid file must hold a JSON list of rows")
        return rows
    if not args.generator:
        return []
    axes = {name: vals for name, vals in (("n", args.n), ("k", args.k), ("gen", args.gen), ("q", args.q),
                                          ("s", args.s), ("delta", args.delta)) if vals}
    seeds = args.seeds if args.seeds else [args.seed]
    rows = []
    names = list(axes)
    for combo in itertools.product(*(axes[nm] for nm in names)):
        params = dict(zip(names, combo))
        if args.profile:
            params["profile"] = args.profile
        for seed in (seeds if args.generator == "random" else [args.seed]):
            rows.append({"generator": args.generator, "params": params, "seed": seed, "extractor": args.extractor})
    return rows


def _label(row: dict) -> str:
    params = row.get("params", {})
    inner = ",".join(f"{k}={params[k]}" for k in sorted(params))
    if row.get("generator") == "random":
        inner += f",seed={row.get('seed', 0)}"
    return f"{row.get('generator')}({inner})"


def bench_rows(rows: Sequence[dict], oracle_cap: int = BENCH_ORACLE_CAP) -> list[dict]:
    out = []
    for row in rows:
        rec = {c: "" for c in BENCH_COLUMNS}
        rec["instance"] = _label(row)
        t0 = time.perf_counter()
        try:
            params = dict(row.get("params", {}))
            inst = generate(row["generator"], params, int(row.get("seed", 0)))
            kind = row.get("extractor") or default_extractor(inst)
            cert = run_extractor(inst, kind)
            verdict = verify_certificate(inst.graph, cert)
            rec["n"] = inst.n
            rec["k"] = cert.params.get("k", cert.params.get("a", cert.params.get("delta", "")))
            rec["L"] = cert.order if verdict.ok else f"error:{verdict.reason}"
            rec["bound"] = f"{bounds.bound_value(cert.bound_kind, cert.params):.6f}"
            if inst.n <= oracle_cap:
                rec["oracle"] = longest_induced_path(inst.graph).value
        except (InducedPathError, KeyError, TypeError, ValueError) as exc:
            rec["L"] = f"error:{type(exc).__name__}"
        rec["time_ms"] = f"{(time.perf_counter() - t0) * 1000:.1f}"
        out.append(rec)
    return out


def cmd_bench(args) -> int:
    rows = bench_rows(_grid_rows(args), args.oracle_cap)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    _write(buf.getvalue(), args.out)
    return 0


def cmd_convert(args) -> int:
    inst, _raw = load_instance(args.instance)
    if args.to == "dot":
        _write(inst.graph.to_dot(), args.out)
    else:
        data = inst.to_dict()
        if "torso_kinds" in _raw:
            data["torso_kinds"] = _raw["torso_kinds"]
        _write(canonical_json(data), args.out)
    return 0


# -- parser ------------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="inducedpaths", description="Certified long induced paths.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a generated instance as JSON")
    g.add_argument("family", choices=["worstcase", "outerplanar", "path-power", "chained-cliques", "random"])
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--gen", type=int, help="outerplanar generation")
    g.add_argument("--q", type=int, help="number of cliques")
    g.add_argument("--s", type=int, help="clique size")
    g.add_argument("--profile", choices=PROFILES)
    g.add_argument("--delta", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("extract", help="extract a certified induced path")
    e.add_argument("instance")
    e.add_argument("--kind", choices=EXTRACTORS)
    e.add_argument("--k", type=int)
    e.add_argument("--a", type=int)
    e.add_argument("--delta", type=int)
    e.add_argument("-o", "--out")
    e.set_defaults(func=cmd_extract)

    v = sub.add_parser("verify", help="re-verify a certificate against an instance")
    v.add_argument("instance")
    v.add_argument("certificate")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="run an exact oracle")
    o.add_argument("instance")
    o.add_argument("--what", choices=["lip", "clique", "ham"], default="lip")
    o.add_argument("--cap", type=int)
    o.add_argument("--time-limit", type=float)
    o.add_argument("-o", "--out")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bench", help="run a grid and write a CSV report")
    b.add_argument("--grid", help="JSON list of {generator, params, seed, extractor}")
    b.add_argument("--generator", choices=["worstcase", "outerplanar", "path-power", "chained-cliques", "random"])
    b.add_argument("--extractor", choices=EXTRACTORS)
    for name in ("n", "k", "gen", "q", "s", "delta", "seeds"):
        b.add_argument(f"--{name}", type=int, nargs="*", default=[])
    b.add_argument("--profile", choices=PROFILES)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--oracle-cap", type=int, default=BENCH_ORACLE_CAP)
    b.add_argument("-o", "--out")
    b.set_defaults(func=cmd_bench)

    c = sub.add_parser("convert", help="convert an instance to DOT or canonical JSON")
    c.add_argument("instance")
    c.add_argument("--to", choices=["dot", "json"], required=True)
    c.add_argument("-o", "--out")
    c.set_defaults(func=cmd_convert)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"validation error: {exc} (witness: {exc.witness!r})", file=sys.stderr)
        return 2
    except (InputError, KeyError) as exc:
        if isinstance(exc, KeyError):
            parser.print_usage(sys.stderr)
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except InducedPathError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
