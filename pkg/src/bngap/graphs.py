"""Simple undirected graphs over bitset adjacency rows.

A graph on n vertices (n <= MAX_N) is stored as n Python integers; bit v of
row u is set iff uv is an edge.  Graphs are immutable value objects: every
mutation-shaped operation returns a new Graph, so instances are safe to share
across parallel workers.

Alongside the representation live the combinatorial parameters used by the
gap reports (clique number, independence number, triangle count), the Zykov
neighbourhood-replacement operation, and graph6 / edge-list serialization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_N = 2048


class Graph6Error(ValueError):
    """Malformed graph6 record (bad header, truncated body, trailing bytes...)."""


def _bits(x: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"vertex count {self.n} outside 1..{MAX_N}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency row count does not match n")
        mask = (1 << self.n) - 1
        cols = [0] * self.n
        for u, row in enumerate(self.adj):
            if row & ~mask:
                raise ValueError(f"row {u} has bits beyond vertex range")
            if row >> u & 1:
                raise ValueError(f"self-loop at vertex {u}")
            for v in _bits(row):
                cols[v] |= 1 << u
        if tuple(cols) != self.adj:
            raise ValueError("adjacency is not symmetric")

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> Iterator[int]:
        return _bits(self.adj[u])

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        out = []
        for u in range(self.n):
            above = self.adj[u] >> (u + 1) << (u + 1)
            out.extend((u, v) for v in _bits(above))
        return out

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def complement(self) -> "Graph":
        mask = (1 << self.n) - 1
        rows = tuple(~row & mask & ~(1 << u) for u, row in enumerate(self.adj))
        return Graph(self.n, rows)

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ValueError("self-loop")
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def without_edge(self, u: int, v: int) -> "Graph":
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def edge_bitset(self) -> int:
        """The upper triangle packed into one integer, graph6 bit order.

        Used as a deterministic total order on same-n graphs.
        """
        code = 0
        k = 0
        for v in range(1, self.n):
            for u in range(v):
                if self.adj[u] >> v & 1:
                    code |= 1 << k
                k += 1
        return code


@dataclass(frozen=True)
class PartSizes:
    """Part sizes of a complete multipartite graph, canonicalized descending."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.sizes, reverse=True))
        object.__setattr__(self, "sizes", ordered)
        if len(ordered) < 2:
            raise ValueError("need at least 2 parts")
        if any(s < 1 for s in ordered):
            raise ValueError("part sizes must be positive")
        if sum(ordered) > MAX_N:
            raise ValueError(f"total vertex count exceeds {MAX_N}")

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def r(self) -> int:
        return len(self.sizes)

    def distinct(self) -> list[tuple[int, int]]:
        """Distinct sizes with multiplicities, largest size first."""
        out: list[tuple[int, int]] = []
        for s in self.sizes:
            if out and out[-1][0] == s:
                out[-1] = (s, out[-1][1] + 1)
            else:
                out.append((s, 1))
        return out

    def offsets(self) -> list[int]:
        """Start vertex of each part under the canonical labelling."""
        out = [0]
        for s in self.sizes[:-1]:
            out.append(out[-1] + s)
        return out


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph with exactly the given edges; duplicates are idempotent."""
    if not 1 <= n <= MAX_N:
        raise ValueError(f"vertex count {n} outside 1..{MAX_N}")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def complete_multipartite(parts: PartSizes) -> Graph:
    """K_{n1,...,nr} with vertices grouped by part in order."""
    n = parts.n
    offsets = parts.offsets()
    rows = []
    full = (1 << n) - 1
    for size, start in zip(parts.sizes, offsets):
        part_mask = ((1 << size) - 1) << start
        row = full & ~part_mask
        rows.extend([row] * size)
    return Graph(n, tuple(rows))


def turan_graph(n: int, r: int) -> Graph:
    """Balanced complete r-partite graph on n vertices, larger parts first."""
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if r == 1:
        return Graph(n, (0,) * n)
    q, rem = divmod(n, r)
    sizes = [q + 1] * rem + [q] * (r - rem)
    return complete_multipartite(PartSizes(tuple(sizes)))


def clique_number(g: Graph) -> int:
    """Exact clique number via branch and bound with greedy-colouring bounds.

    Vertices are always scanned in ascending index order, so the search is
    deterministic.
    """
    adj = g.adj
    best = 1  # n >= 1, so a single vertex is always a clique

    def color_sort(cand: int) -> tuple[list[int], list[int]]:
        # Greedy colouring of the candidate set; 'bounds[i]' is the colour
        # class index of order[i], an upper bound on any clique inside
        # {order[0..i]}.
        order: list[int] = []
        bounds: list[int] = []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                order.append(v)
                bounds.append(color)
                avail &= ~adj[v] & ~(1 << v)
                rest &= ~(1 << v)
        return order, bounds

    def expand(cand: int, size: int) -> None:
        nonlocal best
        order, bounds = color_sort(cand)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            sub = cand & adj[v]
            if sub:
                expand(sub, size + 1)
            elif size + 1 > best:
                best = size + 1
            cand &= ~(1 << v)

    expand((1 << g.n) - 1, 0)
    return best


def independence_number(g: Graph) -> int:
    return clique_number(g.complement())


def is_k4_free(g: Graph) -> bool:
    """True iff the graph has no complete subgraph on 4 vertices."""
    adj = g.adj
    for u in range(g.n):
        above_u = adj[u] & -(1 << (u + 1))
        for v in _bits(above_u):
            # Any adjacent pair among the common neighbours beyond v closes
            # a K4 whose two lowest vertices are u and v.
            common = adj[u] & adj[v] & -(1 << (v + 1))
            for w in _bits(common):
                if adj[w] & common & -(1 << (w + 1)):
                    return False
    return True


def triangle_count(g: Graph) -> int:
    """Exact triangle count via bitset row intersections."""
    adj = g.adj
    total = 0
    for u in range(g.n):
        above_u = adj[u] & -(1 << (u + 1))
        for v in _bits(above_u):
            total += (adj[u] & adj[v] & -(1 << (v + 1))).bit_count()
    return total


def zykov(g: Graph, u: int, v: int) -> Graph:
    """Replace the neighbourhood of u by that of v (u, v non-adjacent).

    The result has N(u) = N(v) = the old N(v); all other adjacencies are
    unchanged.  Applying it to vertices that already share a neighbourhood
    is the identity.
    """
    if u == v:
        raise ValueError("vertices must be distinct")
    if g.has_edge(u, v):
        raise ValueError(f"vertices {u} and {v} are adjacent")
    target = g.adj[v]
    rows = []
    ubit = 1 << u
    for w in range(g.n):
        if w == u:
            rows.append(target)
        elif target >> w & 1:
            rows.append(g.adj[w] | ubit)
        else:
            rows.append(g.adj[w] & ~ubit)
    return Graph(g.n, tuple(rows))


# graph6: printable 6-bit encoding of the upper triangle, bytes offset by 63.
# The pair stream runs column-major: (0,1), (0,2), (1,2), (0,3), ...

def _g6_byte_values(text: str, what: str) -> list[int]:
    vals = []
    for ch in text:
        b = ord(ch)
        if not 63 <= b <= 126:
            raise Graph6Error(f"{what}: byte {b!r} outside graph6 range 63..126")
        vals.append(b - 63)
    return vals


def parse_graph6(line: str) -> Graph:
    line = line.rstrip("\r\n")
    if not line:
        raise Graph6Error("empty record")
    if line.startswith(">>"):
        raise Graph6Error("header directives are not supported")
    vals = _g6_byte_values(line, "record")
    if vals[0] < 63:
        body_at = 1
        n = vals[0]
    else:  # 0x7e marker: 3-byte vertex count
        if len(vals) >= 2 and vals[1] == 63:
            raise Graph6Error("8-byte vertex counts exceed the supported range")
        if len(vals) < 4:
            raise Graph6Error("truncated vertex-count header")
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        body_at = 4
    if n < 1:
        raise Graph6Error("vertex count must be at least 1")
    if n > MAX_N:
        raise Graph6Error(f"vertex count {n} exceeds limit {MAX_N}")
    npairs = n * (n - 1) // 2
    need = (npairs + 5) // 6
    body = vals[body_at:]
    if len(body) < need:
        raise Graph6Error(f"truncated body: need {need} bytes, got {len(body)}")
    if len(body) > need:
        raise Graph6Error("trailing bytes after adjacency body")
    rows = [0] * n
    k = 0
    for v in range(1, n):
        for u in range(v):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            k += 1
    pad = need * 6 - npairs
    if pad and body and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    return Graph(n, tuple(rows))


def to_graph6(g: Graph) -> str:
    if g.n <= 62:
        head = chr(g.n + 63)
    else:
        head = chr(126) + "".join(
            chr(63 + (g.n >> shift & 63)) for shift in (12, 6, 0)
        )
    chunks = []
    acc = 0
    nbits = 0
    for v in range(1, g.n):
        for u in range(v):
            acc = acc << 1 | (g.adj[u] >> v & 1)
            nbits += 1
            if nbits == 6:
                chunks.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        chunks.append(chr((acc << (6 - nbits)) + 63))
    return head + "".join(chunks)


def parse_edge_list_text(text: str) -> Graph:
    """Parse the plain edge-list format: first line "n m", then m lines "u v"."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"line 1: expected 'n m', got {lines[0]!r}")
    n, m = (int(tok) for tok in head)
    if len(lines) - 1 != m:
        raise ValueError(f"declared {m} edges but found {len(lines) - 1} edge lines")
    edges = []
    for i, ln in enumerate(lines[1:], start=2):
        toks = ln.split()
        if len(toks) != 2:
            raise ValueError(f"line {i}: expected 'u v', got {ln!r}")
        edges.append((int(toks[0]), int(toks[1])))
    return from_edge_list(n, edges)


def format_edge_list_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
