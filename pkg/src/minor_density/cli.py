"""``mdl``: command-line front end."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import pickle
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import minors
from .enumerate import CONNECTIVITY, ENUMERATION_LIMIT, EnumerationFilter, GuardrailError, enumerate_graphs
from .fans import FanSpec, apex_fan, build_fan, component_family_limiting_density, densest_fan_minor
from .graph import GraphError, SimpleGraph, density, parse_edge_list, parse_named, rank
from .graph6 import decode_graph6, encode_graph6
from .minors import BACKENDS, densest_minor, is_density_minimal, is_minor, is_rank_minimal
from .multigraph import (
    MgFamilyDescriptor,
    mg_component_family_density,
    mg_densest_minor,
    mg_density,
    mg_is_density_minimal,
    mg_rank,
    parse_multigraph,
)
from .ratios import fmt, parse_rational
from .spectrum import (
    CHECKS,
    SPECTRUM_LIMIT,
    enumerate_density_minimal,
    next_density,
)
from .structure import blocks, ear_decomposition

log = logging.getLogger("mdl")

UNSAFE_LIMIT = 32
CSV_COLUMNS = ["density_num", "density_den", "witness_graph6", "n", "m"]


class UsageError(Exception):
    pass


class _GraphSource(argparse.Action):
    """Collect graph inputs in command-line order, whatever flag supplied them."""

    def __call__(self, parser, namespace, values, option_string=None):
        items = list(getattr(namespace, "graphs", None) or [])
        items.append((self.const, values))
        namespace.graphs = items


def _load_graph(kind: str, value: str) -> SimpleGraph:
    if kind == "named":
        return parse_named(value)
    if kind == "edges":
        return parse_edge_list(value)
    if kind == "g6":
        text = sys.stdin.read() if value == "-" else value
        return decode_graph6(text)
    path_text = sys.stdin.read() if value == "-" else Path(value).read_text()
    text = path_text.strip()
    return parse_edge_list(text) if text.startswith("n") and "=" in text.split(";")[0] else decode_graph6(text)


def _graphs(args, count: int) -> list[SimpleGraph]:
    items = getattr(args, "graphs", None) or []
    if len(items) != count:
        raise UsageError(f"expected {count} graph input(s), got {len(items)}")
    return [_load_graph(kind, value) for kind, value in items]


def _limit(args, default: int) -> int:
    return UNSAFE_LIMIT if getattr(args, "unsafe_large", False) else default


def _closure_limit(args) -> int:
    return _limit(args, minors.default_limit())


def _check_max_n(args, default: int) -> int:
    max_n = args.max_n
    if max_n > default and not args.unsafe_large:
        raise GuardrailError(f"--max-n {max_n} exceeds the guardrail {default}; pass --unsafe-large")
    return max_n


def _ratio(x: Fraction, args) -> dict:
    out = {"value": fmt(x)}
    if getattr(args, "decimal", False):
        out["decimal"] = f"{float(x):.6f}"
    return out


def _ratio_text(x: Fraction, args) -> str:
    if getattr(args, "decimal", False):
        return f"{fmt(x)}\t~{float(x):.6f}"
    return fmt(x)


# -- output ------------------------------------------------------------------------

class Output:
    def __init__(self, fmt_name: str):
        self.format = fmt_name
        self.buffer = io.StringIO()

    def emit(self, data: dict, text: str, rows: Optional[list] = None, header: Optional[list] = None) -> None:
        if self.format == "json":
            self.buffer.write(json.dumps(data, indent=2) + "\n")
        elif self.format == "csv":
            writer = csv.writer(self.buffer, lineterminator="\n")
            if rows is None:
                rows = [[k, v if not isinstance(v, (dict, list)) else json.dumps(v)] for k, v in data.items()]
                header = ["key", "value"]
            if header:
                writer.writerow(header)
            writer.writerows(rows)
        else:
            self.buffer.write(text.rstrip("\n") + "\n")


def _graph_json(g: SimpleGraph) -> dict:
    return {"graph6": encode_graph6(g), "n": g.n, "m": g.m}


# -- commands ------------------------------------------------------------------------

def cmd_density(args, out):
    (g,) = _graphs(args, 1)
    d = density(g)
    out.emit({"density": fmt(d), **_graph_json(g), **({"decimal": f"{float(d):.6f}"} if args.decimal else {})},
             _ratio_text(d, args))


def cmd_rank(args, out):
    (g,) = _graphs(args, 1)
    out.emit({"rank": rank(g), **_graph_json(g)}, str(rank(g)))


def cmd_blocks(args, out):
    (g,) = _graphs(args, 1)
    dec = blocks(g)
    bl = [sorted(b) for b in dec.blocks]
    cut = sorted(dec.articulation_points)
    text = "\n".join(" ".join(map(str, b)) for b in bl) + f"\narticulation: {' '.join(map(str, cut))}"
    out.emit({"blocks": bl, "articulation_points": cut}, text)


def cmd_ears(args, out):
    (g,) = _graphs(args, 1)
    ears = [list(e) for e in ear_decomposition(g).ears]
    out.emit({"ears": ears, "count": len(ears)}, "\n".join("-".join(map(str, e)) for e in ears))


def cmd_minor_test(args, out):
    h, g = _graphs(args, 2)
    w = is_minor(h, g)
    data = {"minor": w is not None, "branch_sets": w.as_lists() if w else None}
    text = "yes\n" + "\n".join(f"{i}: {' '.join(map(str, bs))}" for i, bs in enumerate(w.as_lists())) if w else "no"
    out.emit(data, text)


def cmd_densest_minor(args, out):
    (g,) = _graphs(args, 1)
    h, d, w = densest_minor(g, args.backend, limit=_closure_limit(args))
    data = {"density": fmt(d), "minor": _graph_json(h), "branch_sets": w.as_lists(), "backend": args.backend}
    if args.decimal:
        data["decimal"] = f"{float(d):.6f}"
    out.emit(data, f"{_ratio_text(d, args)}\n{encode_graph6(h)}\n{h.to_text()}")


def cmd_check_minimal(args, out):
    (g,) = _graphs(args, 1)
    cert = is_density_minimal(g, limit=_closure_limit(args))
    best = None
    if cert.best_proper_minor:
        h, d, w = cert.best_proper_minor
        best = {"density": fmt(d), "minor": _graph_json(h), "branch_sets": w.as_lists()}
    data = {"verdict": cert.verdict, "density": fmt(cert.subject_density), "best_proper_minor": best}
    text = f"{'density-minimal' if cert.verdict else 'not density-minimal'}\t{fmt(cert.subject_density)}"
    if best:
        text += f"\nbest proper minor: {best['density']} {best['minor']['graph6']}"
    out.emit(data, text)


def cmd_check_rank_minimal(args, out):
    (g,) = _graphs(args, 1)
    verdict = is_rank_minimal(g)
    out.emit({"verdict": verdict, "rank": rank(g)}, "rank-minimal" if verdict else "not rank-minimal")


def _parse_shared(text: str) -> frozenset[int]:
    try:
        return frozenset(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad shared vertex list {text!r}") from None


def cmd_fan(args, out):
    (g,) = _graphs(args, 1)
    spec = FanSpec(g, _parse_shared(args.shared), args.k)
    data: dict = {}
    lines = []
    if spec.size <= 32:
        fan = build_fan(spec)
        data.update({"fan": _graph_json(fan), "density": fmt(density(fan))})
        lines += [encode_graph6(fan), _ratio_text(density(fan), args)]
    if args.densest:
        tm, d = densest_fan_minor(spec)
        data["densest_fan_minor"] = {
            "density": fmt(d),
            "base_minor": _graph_json(tm.minor),
            "shared_image": sorted(tm.shared_image),
        }
        lines.append(f"densest fan minor: {fmt(d)} from {encode_graph6(tm.minor)} shared {sorted(tm.shared_image)}")
    out.emit(data, "\n".join(lines))


def cmd_apex_fan(args, out):
    (g,) = _graphs(args, 1)
    fan, predicted = apex_fan(g, args.k)
    measured = density(fan)
    data = {"fan": _graph_json(fan), "predicted": fmt(predicted), "measured": fmt(measured),
            "agree": predicted == measured}
    out.emit(data, f"{encode_graph6(fan)}\npredicted {fmt(predicted)}\nmeasured {fmt(measured)}")


def cmd_cf_density(args, out):
    (g,) = _graphs(args, 1)
    d = component_family_limiting_density(g, limit=_closure_limit(args))
    out.emit({"limiting_density": fmt(d)}, _ratio_text(d, args))


def cmd_enumerate(args, out):
    max_n = _check_max_n(args, ENUMERATION_LIMIT)
    flt = EnumerationFilter(
        max_n=max_n,
        min_n=args.min_n,
        max_edges=args.max_edges,
        connectivity=args.connectivity,
        exact_rank=args.rank,
        max_density=parse_rational(args.max_density) if args.max_density else None,
    )
    graphs = list(enumerate_graphs(flt))
    rows = [[encode_graph6(g), g.n, g.m] for g in graphs]
    out.emit({"count": len(graphs), "graphs": [_graph_json(g) for g in graphs]},
             "\n".join(r[0] for r in rows) + f"\n# {len(graphs)} graphs",
             rows=rows, header=["graph6", "n", "m"])


def _cap(text: str) -> Optional[Fraction]:
    return None if text.lower() == "none" else parse_rational(text)


def cmd_spectrum(args, out):
    max_n = _check_max_n(args, SPECTRUM_LIMIT)
    report = enumerate_density_minimal(max_n, _cap(args.cap), limit=_limit(args, SPECTRUM_LIMIT))
    rows = report.to_csv_rows()
    header = list(CSV_COLUMNS)
    if args.decimal:
        header.append("density_decimal")
        rows = [r + [f"{r[0] / r[1]:.6f}"] for r in rows]
    data = {
        "max_n": max_n,
        "cap": args.cap,
        "densities": [fmt(d) for d in report.densities()],
        "entries": [
            {"density": fmt(e.density), "witness_graph6": e.graph6, "n": e.n, "m": e.witness.m}
            for e in report.entries
        ],
    }
    text = "\n".join(f"{fmt(e.density)}\t{e.graph6}\t{e.n}\t{e.witness.m}" for e in report.entries)
    out.emit(data, text, rows=rows, header=header)


def cmd_next_density(args, out):
    max_n = _check_max_n(args, SPECTRUM_LIMIT)
    value = next_density(parse_rational(args.threshold), max_n, limit=_limit(args, SPECTRUM_LIMIT))
    data = {"threshold": args.threshold, "max_n": max_n, "next": fmt(value) if value is not None else None,
            "note": "bounded search over graphs with at most max_n vertices"}
    out.emit(data, fmt(value) if value is not None else "none")


def cmd_verify(args, out) -> int:
    fn = CHECKS[args.check]
    if args.check in ("low-spectrum", "rank4"):
        max_n = _check_max_n(args, SPECTRUM_LIMIT)
        kwargs = {"limit": _limit(args, SPECTRUM_LIMIT)}
        if args.check == "low-spectrum":
            kwargs["exclude"] = [parse_rational(x) for x in args.exclude_density]
        report = fn(max_n, **kwargs)
    elif args.check == "multi":
        report = fn(samples=args.samples, seed=args.seed)
    else:
        report = fn()
    data = report.to_json()
    status = "PASS" if report.passed else "FAIL"
    lines = [f"{report.check}: {status}"]
    lines += [f"  {k}: {v}" for k, v in report.counts.items()]
    lines += [f"  counterexample: {c}" for c in report.counterexamples]
    rows = [[c] for c in report.counterexamples]
    out.emit(data, "\n".join(lines), rows=rows, header=["counterexample"])
    return 0 if report.passed else 1


def cmd_mg(args, out):
    texts = args.mg or []
    if not texts:
        raise UsageError("give at least one --mg multigraph")
    graphs = [parse_multigraph(t) for t in texts]
    if args.mg_command != "family-density" and len(graphs) != 1:
        raise UsageError(f"mg {args.mg_command} takes exactly one --mg")
    g = graphs[0]
    if args.mg_command == "density":
        out.emit({"density": fmt(mg_density(g)), "rank": mg_rank(g)}, f"{fmt(mg_density(g))}\trank {mg_rank(g)}")
    elif args.mg_command == "densest-minor":
        h, d = mg_densest_minor(g)
        out.emit({"density": fmt(d), "minor": h.to_text()}, f"{fmt(d)}\n{h.to_text()}")
    elif args.mg_command == "check-minimal":
        verdict = mg_is_density_minimal(g)
        out.emit({"verdict": verdict, "density": fmt(mg_density(g))},
                 "density-minimal" if verdict else "not density-minimal")
    else:
        value = mg_component_family_density(MgFamilyDescriptor(tuple(graphs), unbounded=args.unbounded))
        shown = fmt(value) if value is not None else "unbounded"
        out.emit({"limiting_density": shown}, shown)


def cmd_encode(args, out):
    (g,) = _graphs(args, 1)
    out.emit({"graph6": encode_graph6(g)}, encode_graph6(g))


def cmd_decode(args, out):
    text = sys.stdin.read() if args.graph6 == "-" else args.graph6
    g = decode_graph6(text)
    out.emit({"n": g.n, "m": g.m, "edges": [list(e) for e in g.edges()]}, g.to_text())


# -- parser ----------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--decimal", action="store_true", help="add an approximate decimal next to exact values")
    p.add_argument("--cache", type=Path, help="persist the densest-minor memo table in this file")
    p.add_argument("--unsafe-large", action="store_true", help="lift the size guardrails")
    return p


def _graph_inputs() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("graph input (one per graph argument, in order)")
    g.add_argument("--named", action=_GraphSource, const="named", metavar="NAME:PARAMS")
    g.add_argument("--g6", action=_GraphSource, const="g6", metavar="GRAPH6", help="'-' reads stdin")
    g.add_argument("--edges", action=_GraphSource, const="edges", metavar="'n=K; u-v, ...'")
    g.add_argument("--file", action=_GraphSource, const="file", metavar="PATH")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mdl", description="Density and minors of small graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    common, gin = _common(), _graph_inputs()

    def add(name, handler, graph=True, **kw):
        parents = [common, gin] if graph else [common]
        p = sub.add_parser(name, parents=parents, **kw)
        p.set_defaults(handler=handler)
        return p

    add("density", cmd_density)
    add("rank", cmd_rank)
    add("blocks", cmd_blocks)
    add("ears", cmd_ears)
    add("minor-test", cmd_minor_test, help="is the first graph a minor of the second?")
    p = add("densest-minor", cmd_densest_minor)
    p.add_argument("--backend", choices=BACKENDS, default="closure")
    add("check-minimal", cmd_check_minimal)
    add("check-rank-minimal", cmd_check_rank_minimal)
    p = add("fan", cmd_fan)
    p.add_argument("--shared", default="", help="comma-separated shared vertices")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--densest", action="store_true")
    p = add("apex-fan", cmd_apex_fan)
    p.add_argument("--k", type=int, required=True)
    add("cf-density", cmd_cf_density)

    p = add("enumerate", cmd_enumerate, graph=False)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--max-edges", type=int)
    p.add_argument("--connectivity", choices=CONNECTIVITY, default="any")
    p.add_argument("--rank", type=int)
    p.add_argument("--max-density")
    p = add("spectrum", cmd_spectrum, graph=False)
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--cap", default="3/2", help="exclusive density cap, or 'none'")
    p = add("next-density", cmd_next_density, graph=False)
    p.add_argument("--threshold", required=True)
    p.add_argument("--max-n", type=int, default=8)

    p = add("verify", cmd_verify, graph=False)
    p.add_argument("check", choices=sorted(CHECKS))
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--exclude-density", action="append", default=[], metavar="P/Q",
                   help="drop a value from the predicted set (negative control)")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)

    p = add("mg", cmd_mg, graph=False)
    p.add_argument("mg_command", choices=["density", "densest-minor", "check-minimal", "family-density"])
    p.add_argument("--mg", action="append", metavar="'n=K; u-v:mult; loops v:count'")
    p.add_argument("--unbounded", action="store_true", help="family bonds grow without bound")

    add("encode", cmd_encode)
    p = add("decode", cmd_decode, graph=False)
    p.add_argument("graph6", help="'-' reads stdin")
    return parser


# -- memo persistence ---------------------------------------------------------------------

def _load_cache(path: Optional[Path]) -> None:
    if path is None or not path.exists():
        return
    try:
        with path.open("rb") as fh:
            data = pickle.load(fh)
        if not isinstance(data, dict):
            raise ValueError("unexpected cache layout")
        for key, value in data.items():
            minors.MEMO.simple.setdefault(key, value)
    except Exception as exc:  # corrupt cache: start cold
        log.warning("ignoring unreadable cache %s (%s)", path, exc)


def _save_cache(path: Optional[Path]) -> None:
    if path is None:
        return
    try:
        tmp = path.with_suffix(path.suffix + ".tmp")
        with tmp.open("wb") as fh:
            pickle.dump(dict(minors.MEMO.simple), fh)
        tmp.replace(path)
    except OSError as exc:
        log.warning("could not write cache %s (%s)", path, exc)


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="mdl: %(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format)
    _load_cache(args.cache)
    try:
        code = args.handler(args, out) or 0
    except (UsageError, GraphError, GuardrailError, ValueError, OSError) as exc:
        sys.stderr.write(f"mdl: error: {exc}\n")
        return 2
    sys.stdout.write(out.buffer.getvalue())
    _save_cache(args.cache)
    return code


if __name__ == "__main__":
    sys.exit(main())
