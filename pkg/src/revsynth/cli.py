"""Command-line interface: ``revsynth <command> [flags]``.

Exit status is 0 on success, 1 for usage errors and 2 for domain errors
(for example a spec outside the generated group). Errors are printed to
stderr as ``error[Code]: message``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import analysis, groups, synth
from ._parallel import worker_count
from .errors import DomainError, RevSynthError, UsageError
from .gates import GateLibrary, parse_gate, standard_library
from .perm import format_cycles, order_of, parse_spec


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error[UsageError]: {message}\n")
        raise SystemExit(1)


@dataclass
class RunConfig:
    command: str
    n: int = 3
    lib: str | None = None
    gates: str | None = None
    format: str = "text"
    seed: int = 0
    max_depth: int = synth.DEFAULT_MAX_DEPTH
    out: str | None = None
    threads: int | None = None

    def libraries(self) -> list[GateLibrary]:
        if (self.lib is None) == (self.gates is None):
            raise UsageError("give exactly one of --lib or --gates")
        if self.gates is not None:
            return [GateLibrary.from_terms(self.gates, self.n)]
        return [standard_library(name, self.n) for name in self.lib.split(",") if name.strip()]

    def library(self) -> GateLibrary:
        libs = self.libraries()
        if len(libs) != 1:
            raise UsageError(f"{self.command} takes a single library")
        return libs[0]

    @property
    def workers(self) -> int:
        return worker_count(self.threads)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_gate(cfg: RunConfig, show: str) -> str:
    g = parse_gate(show, cfg.n)
    p = g.elaborate()
    rec = {"gate": str(g), "map": g.boolean_map(), "cycles": format_cycles(p), "order": order_of(p)}
    if cfg.format == "json":
        return _json(rec)
    if cfg.format == "csv":
        return _csv([list(rec), list(rec.values())])
    return "".join(f"{k}: {v}\n" for k, v in rec.items())


def cmd_order(cfg: RunConfig) -> str:
    rows = []
    for lib in cfg.libraries():
        order = groups.library_order(lib)
        universal = groups.is_universal(lib)
        rows.append({"library": lib.name, "size": len(lib), "order": str(order),
                     "universal": universal})
    if cfg.format == "json":
        return _json(rows)
    if cfg.format == "csv":
        return _csv([["library", "size", "order", "verdict"]] + [
            [r["library"], r["size"], r["order"], "UNIVERSAL" if r["universal"] else "NOT UNIVERSAL"]
            for r in rows])
    return "".join(
        f"library: {r['library']}\nsize: {r['size']}\norder: {r['order']}\n"
        f"{'UNIVERSAL' if r['universal'] else 'NOT UNIVERSAL'}\n" for r in rows)


def census_rows(reports: list[synth.CensusReport]) -> list[list]:
    depth = max(r.max_length for r in reports)
    rows = [["Min Len"] + [r.library for r in reports]]
    for k in range(depth + 1):
        rows.append([k] + [r.counts[k] if k < len(r.counts) else 0 for r in reports])
    rows.append(["Avg"] + [r.average_str() for r in reports])
    rows.append(["LibSize"] + [r.library_size for r in reports])
    return rows


def cmd_census(cfg: RunConfig) -> str:
    reports = [synth.bfs_census(lib) for lib in cfg.libraries()]
    if cfg.format == "json":
        return _json([r.as_dict() for r in reports])
    rows = census_rows(reports)
    if cfg.format == "csv":
        return _csv(rows)
    widths = [max(len(str(row[c])) for row in rows) for c in range(len(rows[0]))]
    return "".join(
        "  ".join(str(v).rjust(w) for v, w in zip(row, widths)) + "\n" for row in rows)


SUBLIB_HEADER = [
    "Lib", "Lib Size", "Num of Sub Libs", "Num of Uni Sub Libs", "Utilization",
    "Size of min Uni Sub Lib", "Num of Sub Libs with min size",
    "Num of Uni Sub Libs with min size", "Min Size Utilization",
]


def cmd_sublibs(cfg: RunConfig) -> str:
    reports = [analysis.sublibrary_census(lib, cfg.workers) for lib in cfg.libraries()]
    recs = [r.as_dict() for r in reports]
    if cfg.format == "json":
        return _json(recs)
    if cfg.format == "csv":
        return _csv([SUBLIB_HEADER] + [list(d.values()) for d in recs])
    out = []
    for d in recs:
        out.append(
            f"library: {d['library']}\n"
            f"universal subsets: {d['universal_subsets']}; minimal size: {d['min_universal_size']}; "
            f"at minimal size: {d['universal_at_min_size']}\n"
            f"utilization: {d['utilization_percent']}% of {d['subsets']}; "
            f"at minimal size: {d['min_utilization_percent']}% of {d['subsets_at_min_size']}\n")
    return "".join(out)


def cmd_minimal(cfg: RunConfig) -> str:
    lib = cfg.library()
    subs = analysis.minimal_universal_sublibraries(lib, cfg.workers)
    if cfg.format == "json":
        return _json({"library": lib.name, "minimal": [[str(g) for g in s] for s in subs]})
    if cfg.format == "csv":
        return _csv([["index", "gates"]] + [[i, ",".join(map(str, s))] for i, s in enumerate(subs)])
    return "".join(s.name + "\n" for s in subs) + f"count: {len(subs)}\n"


def cmd_synth(cfg: RunConfig, spec_text: str) -> str:
    lib = cfg.library()
    spec = parse_spec(spec_text, lib.degree)
    circ = synth.synthesize(spec, lib, cfg.max_depth)
    rec = {"spec": format_cycles(spec), "library": lib.name, "length": len(circ),
           "circuit": str(circ)}
    if cfg.format == "json":
        return _json(rec)
    if cfg.format == "csv":
        return _csv([list(rec), list(rec.values())])
    return f"{circ}\nlength: {len(circ)}\n"


def cmd_randpairs(cfg: RunConfig, trials: int) -> str:
    results = analysis.random_pair_check(cfg.n, trials, cfg.seed, cfg.workers)
    hits = sum(r.universal for r in results)
    if cfg.format == "json":
        return _json({"n": cfg.n, "seed": cfg.seed, "trials": trials, "universal": hits,
                      "pairs": [{"first": str(r.first), "second": str(r.second),
                                 "universal": r.universal} for r in results]})
    if cfg.format == "csv":
        return _csv([["trial", "first", "second", "universal"]] + [
            [i, str(r.first), str(r.second), int(r.universal)] for i, r in enumerate(results)])
    return "".join(f"{r}\n" for r in results) + f"universal: {hits}/{trials}\n"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=3, help="circuit width in wires (default 3)")
    common.add_argument("--lib", help="library name, or a comma-separated list where allowed")
    common.add_argument("--gates", help='explicit gate list, e.g. "G[1,2,3],G[2,1,3]"')
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-depth", type=int, default=synth.DEFAULT_MAX_DEPTH)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--threads", type=int, help="worker processes (capped by REVSYNTH_THREADS)")

    p = _Parser(prog="revsynth", description="Reversible gate libraries as permutation groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    g = sub.add_parser("gate", parents=[common], help="show one gate's map, cycles and order")
    g.add_argument("--show", required=True, metavar="TERM")
    sub.add_parser("order", parents=[common], help="exact group order and universality verdict")
    sub.add_parser("census", parents=[common], help="minimum circuit length distribution")
    sub.add_parser("sublibs", parents=[common], help="count universal sub-libraries")
    sub.add_parser("minimal", parents=[common], help="list the smallest universal sub-libraries")
    s = sub.add_parser("synth", parents=[common], help="minimum circuit for a specification")
    s.add_argument("--spec", required=True, help='cycles "(7,8)" or images "1,2,...,8"')
    r = sub.add_parser("randpairs", parents=[common], help="universality of random G-gate pairs")
    r.add_argument("--trials", type=int, default=20)
    return p


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.command, args.n, args.lib, args.gates, args.format, args.seed,
                    args.max_depth, args.out, args.threads)
    try:
        if cfg.command == "gate":
            text = cmd_gate(cfg, args.show)
        elif cfg.command == "order":
            text = cmd_order(cfg)
        elif cfg.command == "census":
            text = cmd_census(cfg)
        elif cfg.command == "sublibs":
            text = cmd_sublibs(cfg)
        elif cfg.command == "minimal":
            text = cmd_minimal(cfg)
        elif cfg.command == "synth":
            text = cmd_synth(cfg, args.spec)
        else:
            text = cmd_randpairs(cfg, args.trials)
    except RevSynthError as exc:
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return 2 if isinstance(exc, DomainError) else 1
    _emit(cfg, text)
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
