"""Family sweeps, exhaustive checks, seeded generators, and gap search.

Everything that consumes randomness takes a 64-bit seed and runs on a PCG64
generator; per-restart and per-sample streams are split off the master seed
with ``numpy.random.SeedSequence.spawn``, so identical inputs reproduce
identical outputs no matter how the work is scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

import numpy as np

from .conjecture import BnReport, GAP_TOL, OutOfDomainError, bn_report, bn_report_multipartite
from .graphs import Graph, Graph6Error, PartSizes, clique_number, parse_graph6, zykov
from .spectra import adjacency_matrix

MAX_ENUM_N = 6


def partitions_into_parts(n: int, r_max: int) -> Iterator[tuple[int, ...]]:
    """Integer partitions of n with 2..r_max parts, descending tuples in
    lexicographic order."""

    def descending(total: int, cap: int) -> Iterator[tuple[int, ...]]:
        if total == 0:
            yield ()
            return
        for first in range(min(cap, total), 0, -1):
            for rest in descending(total - first, first):
                yield (first,) + rest

    found = [p for p in descending(n, n) if 2 <= len(p) <= r_max]
    yield from sorted(found)


def sweep_multipartite(n_max: int, r_max: int) -> Iterator[BnReport]:
    """One exact gap report per partition of each n <= n_max, deterministic order."""
    for n in range(2, n_max + 1):
        for parts in partitions_into_parts(n, r_max):
            yield bn_report_multipartite(PartSizes(parts))


@dataclass
class SweepSummary:
    total: int = 0
    holds: int = 0
    equality: int = 0
    excluded: int = 0
    violations: int = 0
    out_of_domain: int = 0
    min_gap: float = float("inf")
    argmin_source: str = ""

    def add(self, report: BnReport) -> None:
        self.total += 1
        if report.excluded:
            self.excluded += 1
            return
        if report.holds:
            self.holds += 1
        else:
            self.violations += 1
        if report.equality:
            self.equality += 1
        if report.gap < self.min_gap:
            self.min_gap = report.gap
            self.argmin_source = report.source

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "holds": self.holds,
            "equality": self.equality,
            "excluded": self.excluded,
            "violations": self.violations,
            "out_of_domain": self.out_of_domain,
            "min_gap": self.min_gap if self.total > self.excluded else None,
            "argmin_source": self.argmin_source,
        }


def labeled_graphs(n: int) -> Iterator[tuple[str, Graph]]:
    """All 2^C(n,2) labeled graphs on n vertices (no isomorphism reduction)."""
    if not 1 <= n <= MAX_ENUM_N:
        raise ValueError(f"built-in enumeration capped at n <= {MAX_ENUM_N}")
    npairs = n * (n - 1) // 2
    pairs = [(u, v) for v in range(1, n) for u in range(v)]
    for code in range(1 << npairs):
        rows = [0] * n
        for k, (u, v) in enumerate(pairs):
            if code >> k & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        yield f"labeled:n={n}:code={code}", Graph(n, tuple(rows))


@dataclass
class ExhaustiveResult:
    summary: SweepSummary
    violations: list[BnReport]
    malformed: list[tuple[int, str]]


def exhaustive_check(source: Union[int, Iterable[str]],
                     tol: float = GAP_TOL) -> ExhaustiveResult:
    """Run gap reports over a graph family and collect violations.

    ``source`` is either a vertex count (built-in labeled enumeration,
    n <= 6) or an iterable of graph6 lines.  Malformed graph6 records are
    collected with their line numbers and the stream continues; graphs the
    bound does not apply to (no edges) are counted and skipped.
    """
    summary = SweepSummary()
    violations: list[BnReport] = []
    malformed: list[tuple[int, str]] = []

    def consume(tag: str, g: Graph) -> None:
        try:
            report = bn_report(g, source=tag, tol=tol)
        except OutOfDomainError:
            summary.out_of_domain += 1
            return
        summary.add(report)
        if not report.excluded and not report.holds:
            violations.append(report)

    if isinstance(source, int):
        for tag, g in labeled_graphs(source):
            consume(tag, g)
    else:
        for lineno, line in enumerate(source, start=1):
            if not line.strip():
                continue
            try:
                g = parse_graph6(line)
            except Graph6Error as exc:
                malformed.append((lineno, str(exc)))
                continue
            consume(f"graph6:line={lineno}", g)
    return ExhaustiveResult(summary, violations, malformed)


def _pair_list(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _creates_k4(g: Graph, u: int, v: int) -> bool:
    """Would adding edge uv close a K4?  True iff the common neighbourhood
    of u and v spans an edge."""
    x = g.adj[u] & g.adj[v]
    while x:
        w = (x & -x).bit_length() - 1
        x &= x - 1
        if g.adj[w] & x:
            return True
    return False


def random_graph(n: int, density: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi style graph: each pair kept independently with p=density."""
    rows = [0] * n
    for u, v in _pair_list(n):
        if rng.random() < density:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def random_k4_free(n: int, target_density: float, seed: int,
                   method: str = "tripartite_subgraph",
                   balanced: bool = False) -> Graph:
    """Seeded K4-free graph with roughly the requested edge density.

    ``tripartite_subgraph`` assigns vertices to three parts (multinomial, or
    exactly equitable when ``balanced``) and keeps each cross edge with the
    probability that targets ``density * C(n,2)`` edges; the output is
    3-partite, hence K4-free by construction.  ``greedy_insertion`` walks a
    shuffled pair order and inserts any edge that closes no K4, stopping at
    the target edge count; if the target is unreachable the best effort is
    returned.
    """
    rng = np.random.default_rng(np.random.PCG64(seed))
    return _random_k4_free_rng(n, target_density, rng, method, balanced)


def _random_k4_free_rng(n: int, target_density: float, rng: np.random.Generator,
                        method: str = "tripartite_subgraph",
                        balanced: bool = False) -> Graph:
    if not 0.0 <= target_density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    npairs = n * (n - 1) // 2
    target_m = int(round(target_density * npairs))

    if method == "tripartite_subgraph":
        if balanced:
            labels = np.array([i % 3 for i in range(n)])
            rng.shuffle(labels)
        else:
            labels = rng.integers(0, 3, size=n)
        rows = [0] * n
        cross = [(u, v) for u, v in _pair_list(n) if labels[u] != labels[v]]
        keep_p = min(1.0, target_m / len(cross)) if cross else 0.0
        for u, v in cross:
            if rng.random() < keep_p:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    if method == "greedy_insertion":
        pairs = _pair_list(n)
        order = rng.permutation(len(pairs))
        g = Graph(n, (0,) * n)
        m = 0
        for idx in order:
            if m >= target_m:
                break
            u, v = pairs[idx]
            if not _creates_k4(g, u, v):
                g = g.with_edge(u, v)
                m += 1
        return g

    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class TrajectoryStep:
    step: int
    u: int
    v: int
    lambda1: float
    omega: int
    m: int


@dataclass
class TrajectoryResult:
    initial_lambda1: float
    initial_omega: int
    initial_m: int
    steps: list[TrajectoryStep]
    final_graph: Graph
    findings: list[str]

    @property
    def lambda1_monotone(self) -> bool:
        return not any("lambda1" in f for f in self.findings)

    @property
    def omega_monotone(self) -> bool:
        return not any("omega" in f for f in self.findings)


def _nonadjacent_pairs(g: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in _pair_list(g.n) if not g.has_edge(u, v)]


def _lambda1_and_perron(g: Graph) -> tuple[float, np.ndarray]:
    """Largest eigenvalue and a non-negative eigenvector for it.

    For a non-negative symmetric matrix the entrywise absolute value of any
    top eigenvector is again a top eigenvector, so taking |.| removes the
    solver's sign ambiguity (and any mixed-sign combination across
    components that tie for the spectral radius).
    """
    vals, vecs = np.linalg.eigh(adjacency_matrix(g))
    return float(vals[-1]), np.abs(vecs[:, -1])


def zykov_trajectory(g: Graph, steps: int, seed: int,
                     tol: float = GAP_TOL) -> TrajectoryResult:
    """Apply random neighbourhood replacements and track (lambda1, omega, m).

    Pairs are drawn uniformly from the non-adjacent pairs; within a pair the
    kept neighbourhood is the one whose endpoint carries the larger Perron
    weight, the orientation under which a Rayleigh comparison shows the
    spectral radius cannot drop.  (Replacing against the Perron order can
    genuinely lower it, e.g. on a 4-vertex path.)  The clique number can
    never increase regardless of orientation.  Any breach of either
    monotonicity beyond the tolerance is recorded as a finding rather than
    suppressed.
    """
    rng = np.random.default_rng(np.random.PCG64(seed))
    lam1, perron = _lambda1_and_perron(g)
    omega = clique_number(g)
    result = TrajectoryResult(lam1, omega, g.m, [], g, [])
    current = g
    for step in range(1, steps + 1):
        pairs = _nonadjacent_pairs(current)
        if not pairs:
            break
        u, v = pairs[int(rng.integers(len(pairs)))]
        if perron[u] > perron[v]:
            u, v = v, u  # keep the neighbourhood of the heavier endpoint
        current = zykov(current, u, v)
        new_lam1, perron = _lambda1_and_perron(current)
        new_omega = clique_number(current)
        if new_lam1 < lam1 - tol:
            result.findings.append(
                f"step {step}: lambda1 decreased {lam1:.12g} -> {new_lam1:.12g}"
            )
        if new_omega > omega:
            result.findings.append(
                f"step {step}: omega increased {omega} -> {new_omega}"
            )
        result.steps.append(TrajectoryStep(step, u, v, new_lam1, new_omega,
                                           current.m))
        lam1, omega = new_lam1, new_omega
    result.final_graph = current
    return result


@dataclass(frozen=True)
class SearchConfig:
    seed: int
    n: int
    max_iters: int = 2000
    restarts: int = 1
    w_add: float = 1.0
    w_delete: float = 1.0
    w_zykov: float = 1.0
    k4_constrained: bool = True
    objective: str = "bn_gap_negated"  # or "lambda1"
    init_density: float = 0.5

    def __post_init__(self) -> None:
        weights = (self.w_add, self.w_delete, self.w_zykov)
        if any(w < 0 for w in weights) or not any(weights):
            raise ValueError("move weights must be non-negative, not all zero")
        if self.objective not in ("bn_gap_negated", "lambda1"):
            raise ValueError(f"unknown objective {self.objective!r}")


@dataclass
class HillClimbResult:
    config: SearchConfig
    best_graph: Graph
    best_report: BnReport | None
    best_objective: float
    found_violation: bool
    iterations: int
    accepted: int
    restarts_run: int


def _objective(cfg: SearchConfig, g: Graph) -> tuple[float, BnReport | None]:
    if g.m < 1:
        return float("-inf"), None
    report = bn_report(g, source=f"search:seed={cfg.seed}")
    if cfg.objective == "lambda1":
        return report.lambda1, report
    if report.excluded:
        # A complete graph can never stand as a violation.
        return float("-inf"), report
    return -report.gap, report


@dataclass
class _RestartOutcome:
    best_obj: float
    best_key: int
    best_graph: Graph | None
    best_report: BnReport | None
    iterations: int
    accepted: int


def _run_restart(cfg: SearchConfig, child: np.random.SeedSequence,
                 weights: np.ndarray) -> _RestartOutcome:
    rng = np.random.default_rng(np.random.PCG64(child))
    if cfg.k4_constrained:
        current = _random_k4_free_rng(cfg.n, cfg.init_density, rng,
                                      "tripartite_subgraph")
    else:
        current = random_graph(cfg.n, cfg.init_density, rng)
    out = _RestartOutcome(float("-inf"), 0, None, None, 0, 0)

    def offer(obj: float, g: Graph, report: BnReport | None) -> None:
        if report is None:
            return
        key = g.edge_bitset()
        if (obj > out.best_obj
                or (obj == out.best_obj
                    and (out.best_graph is None or key < out.best_key))):
            out.best_obj, out.best_key = obj, key
            out.best_graph, out.best_report = g, report

    cur_obj, cur_report = _objective(cfg, current)
    offer(cur_obj, current, cur_report)
    sideways = 0
    for _ in range(cfg.max_iters):
        out.iterations += 1
        move = int(rng.choice(3, p=weights))
        candidate = None
        if move == 0:
            non_edges = _nonadjacent_pairs(current)
            if non_edges:
                u, v = non_edges[int(rng.integers(len(non_edges)))]
                if not (cfg.k4_constrained and _creates_k4(current, u, v)):
                    candidate = current.with_edge(u, v)
        elif move == 1:
            edges = current.edges()
            if edges:
                u, v = edges[int(rng.integers(len(edges)))]
                candidate = current.without_edge(u, v)
        else:
            pairs = _nonadjacent_pairs(current)
            if pairs:
                u, v = pairs[int(rng.integers(len(pairs)))]
                if rng.integers(2):
                    u, v = v, u
                candidate = zykov(current, u, v)
        if candidate is None:
            continue
        cand_obj, cand_report = _objective(cfg, candidate)
        if cand_obj > cur_obj:
            current, cur_obj, cur_report = candidate, cand_obj, cand_report
            out.accepted += 1
            sideways = 0
            offer(cur_obj, current, cur_report)
        elif cand_obj == cur_obj and cand_obj > float("-inf"):
            if sideways >= cfg.n * cfg.n:
                break
            current, cur_obj, cur_report = candidate, cand_obj, cand_report
            out.accepted += 1
            sideways += 1
            offer(cur_obj, current, cur_report)
    return out


def hill_climb(cfg: SearchConfig, mapper=map) -> HillClimbResult:
    """First-improvement local search over graphs with sideways moves.

    Moves are edge additions, edge deletions, and neighbourhood replacements,
    drawn with the configured weights; when ``k4_constrained`` every state is
    kept K4-free.  Sideways (equal-objective) moves are accepted up to n^2
    consecutive times before the restart ends.  Ties between equally good
    states across the whole run go to the lexicographically smallest packed
    edge bitset.

    Restarts run on independent spawned seed streams; ``mapper`` may be a
    thread pool's ``map``, and the combined result is independent of how the
    restarts are scheduled.
    """
    weights = np.array([cfg.w_add, cfg.w_delete, cfg.w_zykov], dtype=float)
    weights = weights / weights.sum()
    children = np.random.SeedSequence(cfg.seed).spawn(max(1, cfg.restarts))

    best: _RestartOutcome | None = None
    iterations = 0
    accepted = 0
    for out in mapper(lambda ch: _run_restart(cfg, ch, weights), children):
        iterations += out.iterations
        accepted += out.accepted
        if out.best_graph is None:
            continue
        if (best is None or out.best_obj > best.best_obj
                or (out.best_obj == best.best_obj
                    and out.best_key < best.best_key)):
            best = out

    if best is None or best.best_graph is None:
        # Every start was out of domain (can happen only at density 0).
        return HillClimbResult(cfg, Graph(cfg.n, (0,) * cfg.n), None,
                               float("-inf"), False, iterations, accepted,
                               len(children))
    report = best.best_report
    found = report is not None and not report.excluded and not report.holds
    return HillClimbResult(cfg, best.best_graph, report, best.best_obj, found,
                           iterations, accepted, len(children))
