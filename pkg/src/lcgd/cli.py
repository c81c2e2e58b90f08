"""Command-line entry point: ``lcgd <group> <command> ...``.

Exit status 0 means every requested check held, 1 that one failed (the
witness is printed), 2 a usage or input problem.  ``--format json`` gives a
machine-readable report with integers as decimal strings.  File arguments
that do not exist on disk are looked up among the bundled example files, so
``--init w4_init.json`` works from any directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import chains, embed, explorer, io
from .seqcore import (
    INEQUALITIES,
    Seq,
    convolve,
    has_no_internal_zeros,
    is_log_concave,
    is_unimodal,
    ratio_dominates,
    synchronized,
    validate,
)


class InputError(Exception):
    """Bad input; reported with exit status 2."""


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------


def resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    bundled = io.data_path(p.name)
    if bundled.exists():
        return bundled
    raise InputError(f"no such file: {path}")


def _load(loader, path: str):
    p = resolve(path)
    try:
        return loader(p)
    except (io.FormatError, chains.PGDError, embed.GraphError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def _seed(text: str) -> int:
    try:
        n = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return n


def _cap(args) -> int | None:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("LCGD_CAP")
    if env is None:
        return None
    try:
        return _positive(env)
    except argparse.ArgumentTypeError as exc:
        raise InputError(f"LCGD_CAP: {exc}") from exc


def _graph(args) -> embed.Graph:
    sources = [s for s in (args.graph, args.builtin, args.example) if s]
    if len(sources) != 1:
        raise InputError("give exactly one of --graph, --builtin, --example")
    try:
        if args.graph:
            return _load(io.load_graph, args.graph)
        if args.builtin:
            return embed.builtin(args.builtin)
        return embed.rooted_example(args.example, double=getattr(args, "double", False))
    except embed.GraphError as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


class Out:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.data: dict = {}

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def emit(self) -> None:
        if self.fmt == "json":
            sys.stdout.write(io.dumps(self.data))
        else:
            sys.stdout.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def _verdict_text(v) -> str:
    if v.holds:
        return "holds"
    w = v.witness
    where = f" in {'/'.join(map(str, w.where))}" if w.where else ""
    if w.relation in INEQUALITIES:
        sides = f" ({io._value(w.lhs)} > {io._value(w.rhs)})"
    elif w.relation == "lexicographic":
        sides = f" ({io._value(w.lhs)} then {io._value(w.rhs)})"
    else:
        sides = ""
    return f"fails: {w.relation} at k={w.k}{where}{sides}"


def _seq_text(s: Seq) -> str:
    return str(s)


# ---------------------------------------------------------------------------
# seq
# ---------------------------------------------------------------------------


def cmd_seq_check(args, out: Out) -> int:
    seqs = [(p, _load(io.load_seq, p)) for p in args.files]
    ok = True
    out.data["sequences"] = []
    for path, s in seqs:
        rep = validate(s)
        checks = {
            "no internal zeros": has_no_internal_zeros(s),
            "log-concave": is_log_concave(s),
            "unimodal": is_unimodal(s),
        }
        ok &= all(bool(v) for v in checks.values())
        out.data["sequences"].append(
            {
                "file": path,
                "sequence": io.seq_to_json(s),
                "first_nonzero": rep.first_nonzero,
                "last_nonzero": rep.last_nonzero,
                "checks": {k: io.verdict_to_json(v) for k, v in checks.items()},
            }
        )
        out.text(f"{path}: {_seq_text(s)}")
        for k, v in checks.items():
            out.text(f"  {k}: {_verdict_text(v)}")
    out.data["ok"] = ok
    return 0 if ok else 1


RELATIONS = ("synchronized", "A≲B", "B≲A")


def cmd_seq_relate(args, out: Out) -> int:
    a = _load(io.load_seq, args.a)
    b = _load(io.load_seq, args.b)
    verdicts = {
        "synchronized": synchronized(a, b),
        "A≲B": ratio_dominates(a, b),
        "B≲A": ratio_dominates(b, a),
    }
    out.data = {k: bool(v) for k, v in verdicts.items()}
    out.data["witnesses"] = {k: io.verdict_to_json(v) for k, v in verdicts.items() if not v}
    out.text(f"A = {a}")
    out.text(f"B = {b}")
    for k, v in verdicts.items():
        out.text(f"{k}: {_verdict_text(v)}")
    expected = args.expect or []
    failed = [k for k in expected if not verdicts[k]]
    if expected:
        out.data["expected"] = expected
        out.data["ok"] = not failed
    return 1 if failed else 0


def cmd_seq_convolve(args, out: Out) -> int:
    seqs = [_load(io.load_seq, p) for p in args.files]
    result = Seq([1])
    for s in seqs:
        result = convolve(result, s)
    out.data = io.seq_to_json(result)
    out.text(_seq_text(result))
    return 0


# ---------------------------------------------------------------------------
# chain
# ---------------------------------------------------------------------------


def _amalgamands(args) -> list[tuple[str, chains.DoubleRootPGD, str]]:
    """``FILE`` or ``FILE:MODE`` items; a bare file takes ``--mode``."""
    items = []
    for spec in args.amalgamand:
        path, mode = spec, args.mode
        head, sep, tail = spec.rpartition(":")
        if sep and tail in chains.VARIANTS:
            path, mode = head, tail
        if mode is None:
            raise InputError(f"no mode for amalgamand {spec}; use --mode or FILE:MODE")
        items.append((Path(path).name, _load(io.load_double, path), mode))
    return items


def cmd_chain_abbrev(args, out: Out) -> int:
    name, h, mode = _amalgamands(args)[0]
    q = chains.abbreviate(h, mode)
    out.data = {"mode": mode, **{k: io.seq_to_json(getattr(q, k)) for k in ("A1", "A2", "B1", "B2")}}
    out.text(f"{name} ({mode})")
    for k in ("A1", "A2", "B1", "B2"):
        out.text(f"  {k} = {getattr(q, k)}")
    return 0


def cmd_chain_check(args, out: Out) -> int:
    g = _load(io.load_single, args.init) if args.init else None
    items = _amalgamands(args)
    ok = True
    out.data["amalgamands"] = []
    if g is not None:
        v = ratio_dominates(g.D, g.S)
        ok &= v.holds
        out.data["init"] = {"D≲S": io.verdict_to_json(v)}
        out.text(f"initial D≲S: {_verdict_text(v)}")
    for name, h, mode in items:
        v = chains.check_amalgamand(h, mode)
        ok &= v.holds
        out.data["amalgamands"].append({"name": name, "mode": mode, "premise": io.verdict_to_json(v)})
        out.text(f"{name} ({mode}) lexicographic premise: {_verdict_text(v)}")
    out.data["ok"] = ok
    return 0 if ok else 1


def _step_json(s: chains.ChainStep) -> dict:
    return {
        "step": s.step,
        "amalgamand": s.amalgamand,
        "mode": s.mode,
        "D": io.seq_to_json(s.D),
        "S": io.seq_to_json(s.S),
        "gamma": io.seq_to_json(s.gamma),
        "D≲S": io.verdict_to_json(s.dominance),
        "gamma log-concave": io.verdict_to_json(s.gamma_log_concave),
        "premise": io.verdict_to_json(s.premise),
    }


def cmd_chain_run(args, out: Out) -> int:
    init = _load(io.load_single, args.init)
    items = _amalgamands(args)
    steps = args.steps if args.steps is not None else len(items)
    sequence = [items[i % len(items)] for i in range(steps)]
    # every step is recorded; certification only decides where it first fails
    report = chains.run_chain(init, sequence)
    failure = None
    if args.certify:
        try:
            chains.run_chain(init, sequence, certify=True)
        except chains.CertificationError as exc:
            failure = exc
    out.data = {
        "init": io.single_to_json(init),
        "steps": [_step_json(s) for s in report.steps],
        "certify": args.certify,
    }
    out.text(f"init: D={init.D} S={init.S}")
    for s in report.steps:
        out.text(f"step {s.step} ({s.amalgamand}, {s.mode}): D={s.D} S={s.S}")
        out.text(f"  D≲S {_verdict_text(s.dominance)}; Γ log-concave {_verdict_text(s.gamma_log_concave)}")
    final = report.final
    out.data["gamma"] = io.seq_to_json(final.gamma)
    out.text(f"Γ={final.gamma}")
    if failure is not None:
        out.data["ok"] = False
        out.data["failure"] = {"step": failure.step, "what": failure.what, "verdict": io.verdict_to_json(failure.verdict)}
        out.text(f"certification failed at step {failure.step}: {failure.what} {_verdict_text(failure.verdict)}")
        return 1
    ok = report.all_hold
    out.data["ok"] = ok
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# enum
# ---------------------------------------------------------------------------


def cmd_enum_genus(args, out: Out) -> int:
    g = _graph(args)
    gamma = embed.genus_distribution(g, cap=_cap(args), jobs=args.jobs, force=args.force)
    out.data = {"gamma": io.seq_to_json(gamma), "total": str(gamma.total())}
    out.text(f"Γ={gamma} (total {gamma.total()})")
    return 0


def cmd_enum_partials(args, out: Out) -> int:
    g = _graph(args)
    if args.root_vertex is not None and args.root_edge is not None:
        raise InputError("give at most one of --root-vertex, --root-edge")
    try:
        if args.root_vertex is not None:
            kind, root = "vertex", args.root_vertex
        elif args.root_edge is not None:
            kind, root = "edge", args.root_edge
        elif g.root_edges:
            kind, root = "edge", g.root_edges[0]
        elif g.root_vertices:
            kind, root = "vertex", g.root_vertices[0]
        else:
            raise InputError("graph has no root; pass --root-vertex or --root-edge")
        fn = embed.partials_vertex_root if kind == "vertex" else embed.partials_edge_root
        p = fn(g, root, cap=_cap(args), jobs=args.jobs)
    except embed.GraphError as exc:
        raise InputError(str(exc)) from exc
    out.data = {"root": {"kind": kind, "id": root}, **io.single_to_json(p), "gamma": io.seq_to_json(p.gamma)}
    out.text(f"{kind} root {root}: D={p.D} S={p.S} Γ={p.gamma} (total {p.total()})")
    return 0


# ---------------------------------------------------------------------------
# explore
# ---------------------------------------------------------------------------


def _report(out: Out, report: explorer.ScanReport, timing: bool) -> None:
    out.data = report.to_json(timing)
    p = report.params
    out.text(f"{report.kind}: {', '.join(f'{k}={v}' for k, v in p.items() if k != 'graphs')}")
    out.text(f"examined {report.examined}, violations {len(report.violations)}")
    for note in report.notes:
        out.text(f"  {note}")
    for v in report.violations:
        out.text(f"  violation: {json.dumps(v, sort_keys=True, ensure_ascii=False)}")
    if timing:
        out.text(f"wall time {report.wall_time:.3f} s")


def cmd_explore_fuzz(args, out: Out) -> int:
    try:
        spec = explorer.FuzzSpec(args.theorem, args.trials, args.max_len, args.max_entry, args.seed, args.negate)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report = explorer.fuzz(spec, jobs=args.jobs)
    _report(out, report, args.timing)
    return 0 if report.clean else 1


def cmd_explore_scan(args, out: Out) -> int:
    if args.graph:
        graphs = [_load(io.load_graph, p) for p in args.graph]
        for path, g in zip(args.graph, graphs):
            if not (g.root_vertices or g.root_edges):
                raise InputError(f"{path}: graph has no root")
    else:
        graphs = explorer.standard_scan_graphs()
    report = explorer.scan_partials(graphs, cap=_cap(args), jobs=args.jobs)
    _report(out, report, args.timing)
    return 0 if report.clean else 1


def cmd_explore_nontrans(args, out: Out) -> int:
    report = explorer.search_nontransitivity(args.max_len, args.max_entry, args.interlocked)
    _report(out, report, args.timing)
    out.text("witness found" if report.violations else "no witness within bounds")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    compute = argparse.ArgumentParser(add_help=False)
    compute.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    compute.add_argument("--cap", type=_positive, help="enumeration cap (default 10^7 or LCGD_CAP)")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--graph", help="graph JSON file")
    graph.add_argument("--builtin", help="named graph, e.g. K4, W4, ML4, circ(7:1,2), dipole(3)")
    graph.add_argument("--example", help="rooted example graph: W4, ML4, K4, circ(7:1,2)")

    timing = argparse.ArgumentParser(add_help=False)
    timing.add_argument("--timing", action="store_true", help="include wall time (reports are then not byte-stable)")

    p = argparse.ArgumentParser(prog="lcgd", description=__doc__.split("\n\n")[0])
    groups = p.add_subparsers(dest="group", required=True)

    seq = groups.add_parser("seq", help="sequence checks").add_subparsers(dest="command", required=True)
    c = seq.add_parser("check", parents=[common], help="gaps, log-concavity, unimodality")
    c.add_argument("files", nargs="+")
    c.set_defaults(func=cmd_seq_check)
    c = seq.add_parser("relate", parents=[common], help="synchronicity and ratio-dominance of A and B")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("--expect", action="append", choices=RELATIONS, help="exit 1 unless this relation holds")
    c.set_defaults(func=cmd_seq_relate)
    c = seq.add_parser("convolve", parents=[common], help="convolution of the given sequences")
    c.add_argument("files", nargs="+")
    c.set_defaults(func=cmd_seq_convolve)

    chain = groups.add_parser("chain", help="amalgamation chains").add_subparsers(dest="command", required=True)
    modes = dict(choices=chains.VARIANTS, help="amalgamation mode for bare amalgamand files")
    c = chain.add_parser("abbrev", parents=[common], help="the abbreviations A1, A2, B1, B2")
    c.add_argument("--amalgamand", action="append", required=True)
    c.add_argument("--mode", **modes)
    c.set_defaults(func=cmd_chain_abbrev)
    c = chain.add_parser("check", parents=[common], help="chain premises")
    c.add_argument("--init")
    c.add_argument("--amalgamand", action="append", required=True)
    c.add_argument("--mode", **modes)
    c.set_defaults(func=cmd_chain_check)
    c = chain.add_parser("run", parents=[common], help="iterate amalgamations")
    c.add_argument("--init", required=True)
    c.add_argument("--amalgamand", action="append", required=True, help="FILE or FILE:MODE; repeated files cycle")
    c.add_argument("--steps", type=_positive)
    c.add_argument("--mode", **modes)
    c.add_argument("--certify", action="store_true", help="check premises and stop at the first failure")
    c.set_defaults(func=cmd_chain_run)

    enum = groups.add_parser("enum", help="rotation-system enumeration").add_subparsers(dest="command", required=True)
    c = enum.add_parser("genus", parents=[common, compute, graph], help="genus distribution")
    c.add_argument("--force", action="store_true", help="ignore the cap")
    c.set_defaults(func=cmd_enum_genus)
    c = enum.add_parser("partials", parents=[common, compute, graph], help="D and S at a 2-valent root")
    c.add_argument("--root-vertex", type=int)
    c.add_argument("--root-edge", type=int)
    c.set_defaults(func=cmd_enum_partials)

    explore = groups.add_parser("explore", help="search harness").add_subparsers(dest="command", required=True)
    c = explore.add_parser("fuzz", parents=[common, timing], help="randomized theorem check")
    c.add_argument("--theorem", required=True, choices=list(explorer.THEOREMS))
    c.add_argument("--trials", type=_positive, default=10_000)
    c.add_argument("--max-len", type=_positive, default=6)
    c.add_argument("--max-entry", type=_positive, default=50)
    c.add_argument("--seed", type=_seed, default=0)
    c.add_argument("--negate", action="store_true", help="invert the premise; violations are then expected")
    c.add_argument("--jobs", type=_positive, default=1)
    c.set_defaults(func=cmd_explore_fuzz)
    c = explore.add_parser("scan", parents=[common, compute, timing], help="partials of rooted graphs")
    c.add_argument("--graph", action="append", help="rooted graph file (default: the standard set)")
    c.set_defaults(func=cmd_explore_scan)
    c = explore.add_parser("nontrans", parents=[common, timing], help="non-transitivity witness search")
    c.add_argument("--max-len", type=_positive, default=4)
    c.add_argument("--max-entry", type=_positive, default=6)
    c.add_argument("--interlocked", action="store_true", help="require pairwise gap-free sums")
    c.set_defaults(func=cmd_explore_nontrans)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Out(args.format)
    try:
        code = args.func(args, out)
    except InputError as exc:
        print(f"lcgd: input error: {exc}", file=sys.stderr)
        return 2
    except embed.CapExceeded as exc:
        print(f"lcgd: cap exceeded: {exc}", file=sys.stderr)
        return 2
    except explorer.StarvationError as exc:
        print(f"lcgd: generator starvation: {exc}", file=sys.stderr)
        return 2
    out.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
