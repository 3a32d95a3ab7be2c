"""Command-line interface.

Subcommands: sample, recombine, network, identify, obstruct,
validate-table. Every artifact embeds the run configuration; re-running a
command with the same config and seed yields byte-identical output files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import multiprocessing as mp
import random
import sys
from pathlib import Path

import numpy as np

from .lattice.cmc import ChainParams, CmcSampler, default_fugacities
from .lattice.polygon import (LatticePolygon, read_polygons, validate_polygon,
                              write_polygons)
from .lattice.seeds import load_seed
from .obstructions import run_all
from .reconnection import find_sites, reconnect
from .stats import TransitionNetwork, export_csv, export_json
from .table.identify import Identifier
from .table.records import TableInconsistent, load_table

EVENT_COLUMNS = ["substrate_knot", "substrate_length", "site_alignment",
                 "product_knots", "product_lengths", "chain_id", "step"]


def _fail(msg: str, **extra) -> int:
    payload = {"error": msg}
    payload.update(extra)
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    return 1


def _load_config_file(path: str) -> dict:
    out = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        k, _, v = line.partition("=")
        out[k.strip()] = v.strip()
    return out


def _chain_params(args) -> ChainParams:
    if args.fugacities:
        zs = tuple(float(z) for z in args.fugacities.split(","))
    else:
        zs = default_fugacities(args.chains, z_max=args.z_max, z_min=args.z_min)
    return ChainParams(fugacities=zs, swap_interval=args.swap_interval,
                       sample_interval=args.sample_interval,
                       burn_in=args.burn_in, max_length=args.max_length,
                       rng_seed=args.seed)


def _add_chain_args(sp, sample_interval=10000, burn_in=1000000):
    sp.add_argument("--chains", type=int, default=5)
    sp.add_argument("--fugacities", default="",
                    help="comma-separated, overrides --chains/--z-min/--z-max")
    sp.add_argument("--z-min", type=float, default=0.2000)
    sp.add_argument("--z-max", type=float, default=0.2115)
    sp.add_argument("--swap-interval", type=int, default=1000)
    sp.add_argument("--sample-interval", type=int, default=sample_interval)
    sp.add_argument("--burn-in", type=int, default=burn_in)
    sp.add_argument("--max-length", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=1)


# -- sample -------------------------------------------------------------------

def cmd_sample(args) -> int:
    seed_poly = load_seed(args.knot)
    params = _chain_params(args)
    sampler = CmcSampler(seed_poly, params)
    out = io.StringIO()
    stream = sampler.sample_stream()
    polys = []
    for _ in range(args.samples):
        polys.append((args.knot, next(stream)))
    write_polygons(out, polys, params=params.as_dict())
    Path(args.out).write_text(out.getvalue())
    print(f"wrote {args.samples} conformations to {args.out}")
    return 0


# -- recombine ----------------------------------------------------------------

_WORKER_IDENTIFIER = None


def _worker_init():
    global _WORKER_IDENTIFIER
    _WORKER_IDENTIFIER = Identifier()


def _identify_products(task):
    idx, arrays = task
    global _WORKER_IDENTIFIER
    if _WORKER_IDENTIFIER is None:
        _WORKER_IDENTIFIER = Identifier()
    names = []
    for arr in arrays:
        res = _WORKER_IDENTIFIER.identify(LatticePolygon(np.asarray(arr)), seed=idx)
        names.append(res.name if res.name else "UNKNOWN")
    return idx, names


def cmd_recombine(args) -> int:
    seed_poly = load_seed(args.knot)
    params = _chain_params(args)
    sampler = CmcSampler(seed_poly, params)
    site_rng = random.Random(params.rng_seed ^ 0x5EED)
    stream = sampler.sample_stream()
    mode_parallel = args.mode == "non-coherent"
    rows: list = []
    events = 0
    attempted = 0
    pending: list = []

    pool = None
    if args.workers > 1:
        pool = mp.get_context("fork").Pool(args.workers, initializer=_worker_init)

    def flush(pending_batch):
        if not pending_batch:
            return []
        if pool is None:
            return [_identify_products(t) for t in pending_batch]
        return list(pool.imap(_identify_products, pending_batch, chunksize=8))

    chunk = max(1, args.chunk)
    while events < args.events:
        conf = next(stream)
        attempted += 1
        sites = [s for s in find_sites(conf)
                 if (s.alignment == "parallel") == mode_parallel]
        if not sites:
            rows.append(None)  # attempted, no usable site
            continue
        site = sites[site_rng.randrange(len(sites))]
        outcome = reconnect(conf, site)
        arrays = [p.v.tolist() for p in outcome.products]
        meta = (args.knot, conf.length, site.alignment,
                tuple(p.length for p in outcome.products),
                0, sampler.chains[0].attempted)
        pending.append(((len(rows), arrays), meta))
        rows.append(meta)
        events += 1
        if len(pending) >= chunk or events >= args.events:
            results = flush([t for t, _m in pending])
            for idx, names in results:
                meta = rows[idx]
                rows[idx] = meta[:3] + ("+".join(names),) + meta[3:]
            pending = []
    if pool is not None:
        pool.close()
        pool.join()

    out = io.StringIO()
    for k, v in sorted(params.as_dict().items()):
        out.write(f"# {k}={v}\n")
    out.write(f"# knot={args.knot} mode={args.mode} events={args.events} "
              f"site_policy=uniform-usable-{'parallel' if mode_parallel else 'antiparallel'}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(EVENT_COLUMNS)
    for row in rows:
        if row is None:
            continue
        knot, length, align, product_names, plens, chain_id, step = row
        w.writerow([knot, length, align, product_names,
                    "+".join(str(x) for x in plens), chain_id, step])
    Path(args.out).write_text(out.getvalue())
    print(f"wrote {events} events ({attempted} conformations examined) to {args.out}")
    return 0


# -- network -------------------------------------------------------------------

def cmd_network(args) -> int:
    text = Path(args.events).read_text().splitlines()
    meta = {}
    rows = []
    header_seen = False
    for line in text:
        if line.startswith("#"):
            k, _, v = line[1:].strip().partition("=")
            meta[k.strip()] = v
            for tok in line[1:].split():
                if "=" in tok:
                    kk, vv = tok.split("=", 1)
                    meta[kk] = vv
            continue
        if not line.strip():
            continue
        if not header_seen:
            header_seen = True  # column row
            continue
        rows.append(next(csv.reader([line])))
    substrate = meta.get("knot", rows[0][0] if rows else "?")
    net = TransitionNetwork(substrate=substrate, n_batches=args.batches,
                            planned_events=len(rows), metadata=meta)
    for row in rows:
        net.record_attempt(usable=True)
        product = row[3]
        if args.mode == "non-coherent" and "+" in product:
            product = "UNKNOWN"
        net.record(None if "UNKNOWN" in product.split("+") else product)
    Path(args.out_csv).write_text(export_csv(net, args.confidence))
    Path(args.out_json).write_text(export_json(net, args.confidence))
    print(f"network over {net.usable} events -> {args.out_csv}, {args.out_json}")
    return 0


# -- identify -------------------------------------------------------------------

def cmd_identify(args) -> int:
    with open(args.infile) as f:
        polys = read_polygons(f)
    ident = Identifier()
    lines = []
    for k, (label, poly) in enumerate(polys):
        res = ident.identify(poly, seed=args.seed + k)
        name = res.name if res.name else "UNKNOWN"
        lines.append(f"{label}\t{name}\t{res.confidence}")
        print(lines[-1])
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n")
    return 0


# -- obstruct --------------------------------------------------------------------

def cmd_obstruct(args) -> int:
    table = load_table()
    try:
        verdict = run_all(args.knot1, args.knot2, mode=args.mode, table=table)
    except KeyError as e:
        return _fail(f"unknown knot name {e}")
    payload = verdict.to_json()
    if args.out:
        Path(args.out).write_text(payload + "\n")
    print(payload)
    print(f"overall: {verdict.overall}")
    return 0


# -- validate-table ---------------------------------------------------------------

def cmd_validate_table(args) -> int:
    try:
        table = load_table(verify=True)
    except TableInconsistent as e:
        return _fail("table inconsistent", detail=str(e))
    print(f"table OK: {len(table)} records verified against reference diagrams")
    return 0


# -- main -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bandknot",
                                 description="Band surgery on lattice knots")
    ap.add_argument("--config", default="",
                    help="flat key=value file; command-line flags win")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sample", help="emit BFACF/CMC conformations")
    sp.add_argument("--knot", required=True)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--out", required=True)
    _add_chain_args(sp)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("recombine", help="sample, reconnect, identify, log events")
    sp.add_argument("--knot", required=True)
    sp.add_argument("--events", type=int, required=True)
    sp.add_argument("--mode", choices=["non-coherent", "coherent"],
                    default="non-coherent")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--chunk", type=int, default=64)
    sp.add_argument("--out", required=True)
    _add_chain_args(sp, sample_interval=2000, burn_in=200000)
    sp.set_defaults(func=cmd_recombine)

    sp = sub.add_parser("network", help="aggregate an event log into a network")
    sp.add_argument("--events", required=True)
    sp.add_argument("--mode", choices=["non-coherent", "coherent"],
                    default="non-coherent")
    sp.add_argument("--batches", type=int, default=30)
    sp.add_argument("--confidence", type=float, default=0.95)
    sp.add_argument("--out-csv", required=True)
    sp.add_argument("--out-json", required=True)
    sp.set_defaults(func=cmd_network)

    sp = sub.add_parser("identify", help="identify conformations from a polygon file")
    sp.add_argument("infile")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default="")
    sp.set_defaults(func=cmd_identify)

    sp = sub.add_parser("obstruct", help="banding obstruction verdict for a knot pair")
    sp.add_argument("knot1")
    sp.add_argument("knot2")
    sp.add_argument("--mode", choices=["non-coherent", "coherent"],
                    default="non-coherent")
    sp.add_argument("--out", default="")
    sp.set_defaults(func=cmd_obstruct)

    sp = sub.add_parser("validate-table", help="recompute the identity table")
    sp.set_defaults(func=cmd_validate_table)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # config file values become defaults, flags override
    if "--config" in argv:
        idx = argv.index("--config")
        cfg = _load_config_file(argv[idx + 1])
        extra = []
        for k, v in cfg.items():
            flag = "--" + k.replace("_", "-")
            if flag not in argv:
                extra += [flag, v]
        argv = argv[:idx] + argv[idx + 2:] + extra
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except Exception as e:  # machine-readable failure per the CLI contract
        return _fail(type(e).__name__, detail=str(e))


if __name__ == "__main__":
    raise SystemExit(main())
