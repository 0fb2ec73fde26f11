"""Command-line front end: ``aesstab generate|decompose|census|verify|experiment``.

Exit status: 0 success, 1 counterexample found, 2 input or precondition
error, 3 capacity error.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import oracle
from .cliques import clique_census
from .decompose import Thresholds, stability_decompose, suboptimality
from .errors import (AesStabError, CapacityError, ConstructionError, InputError,
                     PreconditionError)
from .extremal import (ExtremalParams, aes_extremal, biex_bounds, ktt_free_gadget,
                       lower_bound_graph, modified_extremal, turan_graph)
from .graph import (Graph, TargetSpec, analyze_target, complete_graph,
                    complete_multipartite, cycle_graph)
from .io import parse_graph6, read_graphs, serialize_graph6, write_graph6

log = logging.getLogger("aesstab")

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3
THREADS_ENV = "AESSTAB_THREADS"
CSV_HEADER = ("n", "r", "construction", "mode", "deleted", "biex_lo", "biex_hi",
              "oracle_opt", "elapsed_ms", "seed")
CONSTRUCTIONS = ("turan", "aes-extremal", "modified-extremal", "lower-bound", "gadget")
SUITES = ("aes", "zarankiewicz", "kst", "census-crosscheck")

PRESETS = {
    "K3": lambda: complete_graph(3),
    "K4": lambda: complete_graph(4),
    "K222": lambda: complete_multipartite([2, 2, 2]),
    "C5": lambda: cycle_graph(5),
}


@dataclass
class RunConfig:
    command: str
    n: list[int] = field(default_factory=list)
    r: int = 2
    t: int = 2
    s: int = 2
    eps: Fraction | None = None
    c: Fraction = Fraction(1, 10)
    seed: int = 0
    floors: dict = field(default_factory=dict)
    threads: int = 1
    out: Path | None = None
    fmt: str = "csv"
    min_degree: int = 1

    def validate(self) -> None:
        if self.r < 1:
            raise InputError("--r must be positive")
        if any(v < 0 for v in self.n):
            raise InputError("--n values must be non-negative")
        if self.threads < 1:
            raise InputError("--threads must be positive")
        if self.eps is not None and self.command in ("decompose", "experiment"):
            # decompose runs with r = chi(H) - 1, checked again there
            if self.eps <= 0:
                raise InputError("--eps must be positive")


@dataclass
class ExperimentRow:
    n: int | str
    r: int
    construction: str
    mode: str
    deleted: int | str = ""
    biex_lo: int | str = ""
    biex_hi: int | str = ""
    oracle_opt: int | str = ""
    elapsed_ms: float | str = ""
    seed: int | str = ""

    def __post_init__(self):
        if isinstance(self.deleted, int) and isinstance(self.oracle_opt, int):
            assert self.deleted >= self.oracle_opt, "deletion set below the optimum"

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in CSV_HEADER}
        if isinstance(self.elapsed_ms, float):
            d["elapsed_ms"] = f"{self.elapsed_ms:.1f}"
        return d


# ------------------------------------------------------------ parsing

def parse_int_list(tokens) -> list[int]:
    """Accept ``8 10 12``, ``8,10,12`` and ranges ``6..12`` / ``6-12``."""
    if isinstance(tokens, str):
        tokens = [tokens]
    out: list[int] = []
    for tok in tokens:
        for part in str(tok).split(","):
            part = part.strip()
            if not part:
                continue
            sep = ".." if ".." in part else ("-" if "-" in part.lstrip("-") else None)
            try:
                if sep:
                    lo, hi = part.split(sep)
                    out.extend(range(int(lo), int(hi) + 1))
                else:
                    out.append(int(part))
            except ValueError:
                raise InputError(f"cannot read integer list from {part!r}") from None
    return out


def parse_floors(text: str | None) -> dict:
    """``3`` sets every floor; ``witness=2,edges=1`` sets named ones."""
    if not text:
        return {}
    names = ("witness", "exceptional", "edges")
    if text.strip().isdigit():
        return {f"floor_{k}": int(text) for k in names}
    floors = {}
    for item in text.split(","):
        key, _, val = item.partition("=")
        key = key.strip()
        if key not in names or not val.strip().isdigit():
            raise InputError(f"bad --floors entry {item!r}; names are {', '.join(names)}")
        floors[f"floor_{key}"] = int(val)
    return floors


def resolve_target(spec: str | None, r: int) -> TargetSpec:
    """Preset name, graph6 string, or K_{r+1} when omitted."""
    if spec is None:
        return analyze_target(complete_graph(r + 1))
    if spec in PRESETS:
        return analyze_target(PRESETS[spec]())
    return analyze_target(parse_graph6(spec))


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _one(values: list[int], flag: str = "--n") -> int:
    if len(values) != 1:
        raise InputError(f"{flag} takes exactly one value here")
    return values[0]


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _csv_text(rows: list[dict], header=CSV_HEADER) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n",
                       quoting=csv.QUOTE_MINIMAL)
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


# --------------------------------------------------------- builders

def build_instance(name: str, n: int, cfg: RunConfig, target: TargetSpec | None = None):
    """Return ``(graph, provenance)`` for a named construction."""
    prov = f"construction={name} n={n} r={cfg.r}"
    if name == "turan":
        return turan_graph(n, cfg.r), prov
    if name == "aes-extremal":
        return aes_extremal(n, cfg.r), prov
    if name == "modified-extremal":
        con = modified_extremal(ExtremalParams(r=cfg.r, n=n, t=cfg.t, s=cfg.s, c=cfg.c),
                                seed=cfg.seed)
        return con.graph, prov + f" t={cfg.t} s={cfg.s} c={cfg.c} seed={cfg.seed}"
    if name == "lower-bound":
        target = target or resolve_target(None, cfg.r)
        con = lower_bound_graph(n, cfg.r, target, seed=cfg.seed)
        return con.graph, prov + f" target={serialize_graph6(target.h)} seed={cfg.seed}"
    if name == "gadget":
        g = ktt_free_gadget(n, cfg.t, cfg.min_degree, seed=cfg.seed)
        return g, f"construction=gadget m={n} t={cfg.t} min_deg={cfg.min_degree} seed={cfg.seed}"
    raise InputError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")


def _thresholds(cfg: RunConfig, target: TargetSpec) -> Thresholds:
    return Thresholds.default(target.chi - 1, eps=cfg.eps, **cfg.floors)


def _oracle_opt(g: Graph, r: int) -> int | str:
    try:
        return oracle.min_deletion_to_r_partite(g, r)
    except CapacityError:
        return ""


def decompose_row(g: Graph, name: str, target: TargetSpec, cfg: RunConfig,
                  with_oracle: bool = True):
    r = target.chi - 1
    t0 = time.perf_counter()
    res = stability_decompose(g, target, _thresholds(cfg, target))
    elapsed = (time.perf_counter() - t0) * 1000
    bounds = biex_bounds(g.n, target)
    opt = _oracle_opt(g, r) if with_oracle and res.mode == "partition" else ""
    row = ExperimentRow(g.n, r, name, res.mode, res.deleted, bounds.lower, bounds.upper,
                        opt, elapsed, cfg.seed)
    return row, res


# --------------------------------------------------------- commands

def cmd_generate(cfg: RunConfig, args) -> int:
    n = _one(cfg.n)
    target = resolve_target(args.target, cfg.r) if args.target else None
    g, prov = build_instance(args.construction, n, cfg, target)
    if cfg.out is None:
        sys.stdout.write(f"{serialize_graph6(g)}\n# {prov}\n")
    else:
        write_graph6(cfg.out, [g], provenance=prov)
    return EXIT_OK


def cmd_decompose(cfg: RunConfig, args) -> int:
    graphs = read_graphs(args.input)
    target = resolve_target(args.target, cfg.r)
    rows, extras = [], []
    for i, g in enumerate(graphs):
        name = Path(args.input).stem + (f"#{i}" if len(graphs) > 1 else "")
        row, res = decompose_row(g, name, target, cfg, with_oracle=not args.no_oracle)
        rows.append(row.as_dict())
        if res.mode == "embedding":
            extras.append(f"# {name} embedding (target vertex -> host vertex)\n" + "".join(
                f"{x} {y}\n" for x, y in enumerate(res.embedding.assignment)))
        else:
            extras.append(f"# {name} deleted edges\n" + "".join(
                f"{u} {v}\n" for u, v in sorted(res.partition.deleted)))
    _emit(_csv_text(rows), cfg.out)
    if cfg.out is not None:
        suffix = ".embedding.txt" if all(r["mode"] == "embedding" for r in rows) else ".edges.txt"
        cfg.out.with_suffix(suffix).write_text("".join(extras))
    return EXIT_OK


def cmd_census(cfg: RunConfig, args) -> int:
    k = args.k if args.k is not None else cfg.r + 1
    rows = []
    for i, g in enumerate(read_graphs(args.input)):
        c = clique_census(g, k)
        rows.append({"index": i, "n": g.n, "k": k, "total": c.total,
                     "max_per_vertex": max(c.per_vertex, default=0)})
    _emit(_csv_text(rows, ("index", "n", "k", "total", "max_per_vertex")), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    n = _one(cfg.n)
    suite = args.suite
    if suite == "aes":
        rep = oracle.verify_aes_small(n, cfg.r, samples=args.samples, seed=cfg.seed)
    elif suite == "zarankiewicz":
        rep = oracle.verify_zarankiewicz_small(n, cfg.r, samples=args.samples, seed=cfg.seed)
    elif suite == "kst":
        rep = oracle.verify_kst_small(n, cfg.t, cfg.s, samples=args.samples, seed=cfg.seed)
    elif suite == "census-crosscheck":
        k = args.k if args.k is not None else cfg.r + 1
        rep = oracle.verify_census_crosscheck(n, k, samples=args.samples, seed=cfg.seed)
    else:
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    _emit(rep.to_csv(), cfg.out)
    if cfg.out is not None and rep.counterexamples:
        rep.write_sidecar(cfg.out.with_suffix(".counterexamples.g6"))
    status = "pass" if rep.verified else "FAIL"
    print(f"{suite}: {status}, {rep.instances_checked} graphs checked", file=sys.stderr)
    return EXIT_OK if rep.verified else EXIT_COUNTEREXAMPLE


def _experiment_row(name: str, n: int, cfg: RunConfig, target: TargetSpec) -> ExperimentRow:
    try:
        g, _ = build_instance(name, n, cfg, target)
        row, _ = decompose_row(g, name, target, cfg)
        return row
    except AesStabError as exc:
        return ExperimentRow(n, cfg.r, name, f"error:{type(exc).__name__}", seed=cfg.seed)


def run_experiment(name: str, cfg: RunConfig, target: TargetSpec) -> list[ExperimentRow]:
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        rows = list(pool.map(lambda n: _experiment_row(name, n, cfg, target), cfg.n))
    ratios = [suboptimality(r.deleted, r.oracle_opt) for r in rows
              if isinstance(r.deleted, int) and isinstance(r.oracle_opt, int)]
    worst = max(ratios) if ratios else ""
    rows.append(ExperimentRow("", cfg.r, "summary",
                              f"max_ratio={worst:.3f}" if ratios else "max_ratio=",
                              seed=cfg.seed))
    return rows


def _svg(rows: list[ExperimentRow], path: Path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    pts = [r for r in rows if isinstance(r.deleted, int)]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.scatter([r.n for r in pts], [r.deleted for r in pts], label="deleted edges")
    ax.plot([r.n for r in pts], [r.biex_hi for r in pts], "--", label="biex upper bound")
    ax.set_xlabel("n")
    ax.set_ylabel("edges")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def cmd_experiment(cfg: RunConfig, args) -> int:
    if not cfg.n:
        raise InputError("experiment needs --n")
    target = resolve_target(args.target, cfg.r)
    if target.chi - 1 != cfg.r:
        raise InputError(f"target has chromatic number {target.chi}, expected r+1 = {cfg.r + 1}")
    rows = run_experiment(args.construction, cfg, target)
    text = _csv_text([r.as_dict() for r in rows])
    if cfg.fmt == "svg":
        if cfg.out is None:
            raise InputError("--format svg needs --out")
        _svg(rows, cfg.out)
        cfg.out.with_suffix(".csv").write_text(text)
    else:
        _emit(text, cfg.out)
    return EXIT_OK


# -------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", nargs="+", default=[], help="vertex count(s): 8 10, 8,10 or 6..12")
    common.add_argument("--r", type=int, default=2)
    common.add_argument("--t", type=int, default=2)
    common.add_argument("--s", type=int, default=2)
    common.add_argument("--eps", type=Fraction, default=None)
    common.add_argument("--c", type=Fraction, default=Fraction(1, 10))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--floors", default=None, help="N, or witness=N,exceptional=N,edges=N")
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default ${THREADS_ENV} or CPU count)")
    common.add_argument("--out", type=Path, default=None)
    common.add_argument("--format", dest="fmt", choices=("csv", "svg"), default="csv")
    common.add_argument("--target", default=None,
                        help=f"preset ({', '.join(PRESETS)}) or graph6; default K_(r+1)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="aesstab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    g = sub.add_parser("generate", parents=[common])
    g.add_argument("construction", choices=CONSTRUCTIONS)
    g.add_argument("--min-degree", type=int, default=1, help="gadget minimum degree")
    d = sub.add_parser("decompose", parents=[common])
    d.add_argument("input")
    d.add_argument("--no-oracle", action="store_true", help="skip the exact optimum")
    c = sub.add_parser("census", parents=[common])
    c.add_argument("input")
    c.add_argument("--k", type=int, default=None)
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--k", type=int, default=None)
    e = sub.add_parser("experiment", parents=[common])
    e.add_argument("construction", choices=CONSTRUCTIONS)
    return p


COMMANDS = {"generate": cmd_generate, "decompose": cmd_decompose, "census": cmd_census,
            "verify": cmd_verify, "experiment": cmd_experiment}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        threads = args.threads if args.threads is not None else default_threads()
        cfg = RunConfig(command=args.command, n=parse_int_list(args.n), r=args.r, t=args.t,
                        s=args.s, eps=args.eps, c=args.c, seed=args.seed,
                        floors=parse_floors(args.floors), threads=threads, out=args.out,
                        fmt=args.fmt, min_degree=getattr(args, "min_degree", 1))
        cfg.validate()
        return COMMANDS[args.command](cfg, args)
    except PreconditionError as exc:
        print(f"error: precondition failed: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"error: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, ConstructionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
