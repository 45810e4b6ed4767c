"""Command-line front door: reproducible batch runs over all the machinery.

Exit codes: 0 means the run completed and found no violation of the gap
inequality; 1 means at least one non-excluded graph violated it (the
headline signal); 2 means a usage or input error.

``--out FILE`` redirects the main output from stdout to FILE and writes a
sibling ``FILE.manifest.json`` recording the subcommand, flags, seeds, tool
version, input digests, and timestamps.  Timestamps live only in the
manifest, so re-running an invocation reproduces the output bytes exactly.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

from . import __version__
from .conjecture import OutOfDomainError, bn_report, bn_report_multipartite
from .graphs import (
    Graph,
    Graph6Error,
    PartSizes,
    parse_edge_list_text,
    parse_graph6,
)
from .jsonutil import csv_cell, dumps, sha256_hex
from .multipartite import multipartite_edge_count, multipartite_spectrum
from .search import (
    SearchConfig,
    SweepSummary,
    exhaustive_check,
    hill_climb,
    partitions_into_parts,
    zykov_trajectory,
)
from .spectra import eigenvalues
from .stability import (
    STABILITY_CSV_COLUMNS,
    dense_case_check,
    stability_experiment,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


class _InputError(Exception):
    """Input problem reported on stderr with exit code 2."""


class _Run:
    """Collects output lines, input digests, and the final manifest."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.lines: list[str] = []
        self.inputs: list[dict] = []
        self.started = datetime.now(timezone.utc).isoformat()

    def emit(self, line: str) -> None:
        self.lines.append(line)

    def read_text(self, path: str) -> str:
        if path == "-":
            data = sys.stdin.buffer.read()
            name = "<stdin>"
        else:
            try:
                with open(path, "rb") as fh:
                    data = fh.read()
            except OSError as exc:
                raise _InputError(str(exc)) from exc
            name = path
        self.inputs.append({"path": name, "sha256": sha256_hex(data)})
        return data.decode("utf-8")

    def manifest(self) -> dict:
        flags = {
            k: v for k, v in sorted(vars(self.args).items())
            if k != "func" and v is not None
        }
        return {
            "tool": "bngap",
            "version": __version__,
            "subcommand": self.args.subcommand,
            "flags": flags,
            "seed": getattr(self.args, "seed", None),
            "inputs": self.inputs,
            "started": self.started,
            "finished": datetime.now(timezone.utc).isoformat(),
        }

    def finish(self, extra_files: dict[str, str] | None = None) -> None:
        body = "".join(line + "\n" for line in self.lines)
        out = getattr(self.args, "out", None)
        if out:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(body)
            for suffix, content in (extra_files or {}).items():
                with open(out + suffix, "w", encoding="utf-8") as fh:
                    fh.write(content)
            with open(out + ".manifest.json", "w", encoding="utf-8") as fh:
                fh.write(dumps(self.manifest()) + "\n")
        else:
            sys.stdout.write(body)


def _status(message: str) -> None:
    print(f"bngap: {message}", file=sys.stderr)


def _mapper(args: argparse.Namespace):
    threads = getattr(args, "threads", 1) or 1
    if threads <= 1:
        return map, None
    pool = ThreadPoolExecutor(max_workers=threads)
    return pool.map, pool


def _parse_parts(text: str) -> PartSizes:
    try:
        sizes = tuple(int(tok) for tok in text.split(",") if tok.strip())
        return PartSizes(sizes)
    except ValueError as exc:
        raise _InputError(f"bad --parts value {text!r}: {exc}") from exc


def _parse_grid(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise _InputError(f"bad --grid value {text!r}: {exc}") from exc


def _load_graphs(run: _Run) -> list[tuple[str, Graph]]:
    """Graphs from --graph6 (one record per line) or --edges (one graph)."""
    args = run.args
    if getattr(args, "graph6", None):
        text = run.read_text(args.graph6)
        graphs = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                graphs.append((f"graph6:line={lineno}", parse_graph6(line)))
            except Graph6Error as exc:
                raise _InputError(f"line {lineno}: {exc}") from exc
        if not graphs:
            raise _InputError("no graph6 records in input")
        return graphs
    if getattr(args, "edges", None):
        text = run.read_text(args.edges)
        try:
            return [("edges", parse_edge_list_text(text))]
        except ValueError as exc:
            raise _InputError(str(exc)) from exc
    raise _InputError("need --graph6 or --edges (use '-' for stdin)")


def _cmd_spectrum(run: _Run) -> int:
    args = run.args
    if args.parts:
        parts = _parse_parts(args.parts)
        spec = multipartite_spectrum(parts)
        run.emit(dumps({
            "source": "multipartite[" + ",".join(map(str, parts.sizes)) + "]",
            "n": parts.n,
            "m": multipartite_edge_count(parts),
            "values": list(spec.flatten()),
            "secular_roots": list(spec.secular_roots),
            "pole_eigenvalues": [list(p) for p in spec.pole_eigenvalues],
            "zero_multiplicity": spec.zero_multiplicity,
        }))
    else:
        for tag, g in _load_graphs(run):
            spec = eigenvalues(g)
            run.emit(dumps({
                "source": tag, "n": g.n, "m": g.m,
                "values": list(spec.values),
            }))
    run.finish()
    return EXIT_OK


def _cmd_report(run: _Run) -> int:
    violations = 0
    total = 0
    for tag, g in _load_graphs(run):
        total += 1
        try:
            report = bn_report(g, source=tag)
        except OutOfDomainError as exc:
            run.emit(dumps({"status": "out-of-domain", "n": g.n, "m": g.m,
                            "source": tag, "detail": str(exc)}))
            continue
        run.emit(dumps(report.to_dict()))
        if not report.excluded and not report.holds:
            violations += 1
            _status(f"VIOLATION: {tag} gap={report.gap!r}")
    run.finish()
    _status(f"report: {violations} violations / {total} graphs")
    return EXIT_VIOLATION if violations else EXIT_OK


def _summary_csv(summary: SweepSummary) -> str:
    head = "total,holds,equality,excluded,violations,out_of_domain,min_gap,argmin_source"
    d = summary.as_dict()
    row = ",".join(csv_cell(d[k]) if d[k] is not None else ""
                   for k in head.split(","))
    return head + "\n" + row + "\n"


def _cmd_sweep(run: _Run) -> int:
    args = run.args
    mapper, pool = _mapper(args)
    summary = SweepSummary()
    try:
        all_parts = [
            PartSizes(p)
            for n in range(2, args.n_max + 1)
            for p in partitions_into_parts(n, args.r_max)
        ]
        for report in mapper(bn_report_multipartite, all_parts):
            summary.add(report)
            run.emit(dumps(report.to_dict()))
            if not report.excluded and not report.holds:
                _status(f"VIOLATION: {report.source} gap={report.gap!r}")
    finally:
        if pool:
            pool.shutdown()
    run.finish(extra_files={".summary.csv": _summary_csv(summary)})
    d = summary.as_dict()
    _status(
        f"sweep n<={args.n_max} r<={args.r_max}: {d['violations']} violations"
        f" / {d['total']} reports (equality={d['equality']},"
        f" excluded={d['excluded']})"
    )
    return EXIT_VIOLATION if summary.violations else EXIT_OK


def _cmd_exhaustive(run: _Run) -> int:
    args = run.args
    if args.graph6:
        lines = run.read_text(args.graph6).splitlines()
        results = [exhaustive_check(lines)]
        scope = "graph6 stream"
    elif args.n_max:
        results = [exhaustive_check(n) for n in range(1, args.n_max + 1)]
        scope = f"all labeled graphs, n<={args.n_max}"
    else:
        raise _InputError("need --n-max or --graph6")
    total = SweepSummary()
    violations = 0
    for res in results:
        for lineno, message in res.malformed:
            _status(f"malformed graph6 at line {lineno}: {message}")
        for report in res.violations:
            violations += 1
            run.emit(dumps(report.to_dict()))
            _status(f"VIOLATION: {report.source} gap={report.gap!r}")
        s = res.summary
        total.total += s.total
        total.holds += s.holds
        total.equality += s.equality
        total.excluded += s.excluded
        total.violations += s.violations
        total.out_of_domain += s.out_of_domain
        if s.min_gap < total.min_gap:
            total.min_gap = s.min_gap
            total.argmin_source = s.argmin_source
    run.emit(dumps({"summary": total.as_dict(),
                    "malformed": sum(len(r.malformed) for r in results)}))
    run.finish(extra_files={".summary.csv": _summary_csv(total)})
    _status(f"exhaustive ({scope}): {violations} violations"
            f" / {total.total} applicable graphs")
    return EXIT_VIOLATION if violations else EXIT_OK


def _cmd_search(run: _Run) -> int:
    args = run.args
    cfg = SearchConfig(
        seed=args.seed,
        n=args.n_max,
        max_iters=args.steps,
        restarts=args.restarts,
        k4_constrained=args.method == "k4free",
        objective={"bn-gap": "bn_gap_negated", "lambda1": "lambda1"}[args.objective],
        init_density=args.density,
    )
    mapper, pool = _mapper(args)
    try:
        result = hill_climb(cfg, mapper=mapper)
    finally:
        if pool:
            pool.shutdown()
    run.emit(dumps({
        "config": {
            "seed": cfg.seed, "n": cfg.n, "max_iters": cfg.max_iters,
            "restarts": cfg.restarts, "k4_constrained": cfg.k4_constrained,
            "objective": cfg.objective, "init_density": cfg.init_density,
        },
        "best_objective": result.best_objective,
        "best_report": result.best_report.to_dict() if result.best_report else None,
        "found_violation": result.found_violation,
        "iterations": result.iterations,
        "accepted": result.accepted,
        "restarts_run": result.restarts_run,
    }))
    run.finish()
    if result.best_report:
        _status(f"search: best gap {result.best_report.gap!r}"
                f" over {result.iterations} iterations")
    if result.found_violation:
        _status("search: VIOLATION found")
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_zykov(run: _Run) -> int:
    args = run.args
    graphs = _load_graphs(run)
    if len(graphs) != 1:
        raise _InputError("zykov expects exactly one input graph")
    tag, g = graphs[0]
    result = zykov_trajectory(g, args.steps, args.seed)
    run.emit(dumps({"type": "initial", "source": tag,
                    "lambda1": result.initial_lambda1,
                    "omega": result.initial_omega, "m": result.initial_m}))
    for step in result.steps:
        run.emit(dumps({"type": "step", "step": step.step, "u": step.u,
                        "v": step.v, "lambda1": step.lambda1,
                        "omega": step.omega, "m": step.m}))
    run.emit(dumps({"type": "summary", "steps": len(result.steps),
                    "findings": result.findings}))
    run.finish()
    for finding in result.findings:
        _status(f"zykov finding: {finding}")
    _status(f"zykov: {len(result.steps)} steps, {len(result.findings)} findings")
    return EXIT_OK


def _cmd_stability(run: _Run) -> int:
    args = run.args
    grid = _parse_grid(args.grid)
    mapper, pool = _mapper(args)
    try:
        rows = stability_experiment(args.n_max, grid, args.samples, args.seed,
                                    mapper=mapper)
    finally:
        if pool:
            pool.shutdown()
    run.emit(",".join(STABILITY_CSV_COLUMNS))
    for row in rows:
        run.emit(",".join(csv_cell(row[col]) for col in STABILITY_CSV_COLUMNS))
    run.finish()
    _status(f"stability: {len(rows)} rows (n={args.n_max}, grid={grid})")
    return EXIT_OK


def _cmd_dense_check(run: _Run) -> int:
    violations = 0
    for tag, g in _load_graphs(run):
        report = dense_case_check(g, run.args.density, run.args.delta)
        record = {
            "source": tag,
            "applicable": report.applicable,
            "reason": report.reason,
            "n": report.n, "m": report.m, "c": report.c,
            "delta": report.delta,
        }
        if report.applicable:
            record.update({
                "lambda1_sq": report.lambda1_sq,
                "case_threshold": report.case_threshold,
                "case": report.case,
                "triangles": report.triangles,
                "triangle_bound": report.triangle_bound,
                "triangle_bound_ok": report.triangle_bound_ok,
                "lambda2_cubed": report.lambda2_cubed,
                "lambda2_cubed_bound": report.lambda2_cubed_bound,
                "lambda2_cubed_ok": report.lambda2_cubed_ok,
                "bn": report.bn.to_dict(),
            })
            if not report.bn.excluded and not report.bn.holds:
                violations += 1
                _status(f"VIOLATION: {tag} gap={report.bn.gap!r}")
        run.emit(dumps(record))
    run.finish()
    return EXIT_VIOLATION if violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bngap",
        description="Verification toolkit for the clique-eigenvalue gap "
                    "inequality lambda1^2 + lambda2^2 <= 2(1 - 1/omega) m.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write output to FILE plus FILE.manifest.json")
        return p

    p = add("spectrum", _cmd_spectrum,
            "adjacency spectrum (exact for --parts, numeric otherwise)")
    p.add_argument("--parts", help="comma-separated part sizes, e.g. 2,2,2")
    p.add_argument("--graph6", help="graph6 file, '-' for stdin")
    p.add_argument("--edges", help="edge-list file ('n m' header), '-' for stdin")

    p = add("report", _cmd_report, "gap report per input graph (JSONL)")
    p.add_argument("--graph6", help="graph6 file, '-' for stdin")
    p.add_argument("--edges", help="edge-list file, '-' for stdin")

    p = add("sweep", _cmd_sweep, "exact reports for all part-size partitions")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--r-max", type=int, default=6)
    p.add_argument("--threads", type=int, default=1)

    p = add("exhaustive", _cmd_exhaustive,
            "check every labeled graph (n<=6) or a graph6 stream")
    p.add_argument("--n-max", type=int)
    p.add_argument("--graph6", help="graph6 file, '-' for stdin")
    p.add_argument("--threads", type=int, default=1)

    p = add("search", _cmd_search, "hill-climb for gap violations")
    p.add_argument("--n-max", type=int, required=True, help="vertex count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--steps", type=int, default=1000, help="iterations per restart")
    p.add_argument("--method", choices=["k4free", "free"], default="k4free")
    p.add_argument("--objective", choices=["bn-gap", "lambda1"], default="bn-gap")
    p.add_argument("--density", type=float, default=0.5, help="initial density")
    p.add_argument("--threads", type=int, default=1)

    p = add("zykov", _cmd_zykov, "random neighbourhood-replacement trajectory")
    p.add_argument("--graph6", help="graph6 file, '-' for stdin")
    p.add_argument("--edges", help="edge-list file, '-' for stdin")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    p = add("stability", _cmd_stability,
            "edge-deletion experiment around the balanced tripartite graph")
    p.add_argument("--n-max", type=int, required=True, help="vertex count")
    p.add_argument("--grid", default="0,1,2,3,4,5",
                   help="comma-separated deletion counts")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)

    p = add("dense-check", _cmd_dense_check,
            "dense K4-free case diagnostics per input graph")
    p.add_argument("--graph6", help="graph6 file, '-' for stdin")
    p.add_argument("--edges", help="edge-list file, '-' for stdin")
    p.add_argument("--density", type=float, default=0.1,
                   help="edge-density constant c in m >= c n^2")
    p.add_argument("--delta", type=float, default=0.05,
                   help="case-split margin")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    run = _Run(args)
    try:
        return args.func(run)
    except _InputError as exc:
        _status(f"error: {exc}")
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
