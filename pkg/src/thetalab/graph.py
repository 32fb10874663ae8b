"""Simple undirected graphs over bitset adjacency rows, with the exact
pattern-freeness checkers, BFS layering, and chromatic bounds the
verification suite is built on.

All checkers are exact searches: they gate mathematical claims, so a
heuristic false negative is unacceptable.  Work caps raise
ComplexityRefused instead of silently degrading.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import (
    ComplexityRefused,
    IndexOutOfRange,
    LoopRejected,
    PreconditionViolated,
    UnsupportedPattern,
)

BICLIQUE_SUBSET_CAP = 10**7
CHROMATIC_N_CAP = 40


def _bits(x: int):
    """Indices of set bits, ascending."""
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


@dataclass(frozen=True)
class Graph:
    """Simple graph: n vertices 0..n-1, adjacency as n bitset rows."""

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int):
        return _bits(self.adj[v])

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edge list sorted lexicographically, u < v."""
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]


def from_edges(n: int, edges, labels=None) -> Graph:
    """Build a simple graph; duplicate edges collapse, loops are rejected."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u},{v}) outside [0,{n})")
        if u == v:
            raise LoopRejected(f"loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise ValueError("labels length must equal n")
    return Graph(n, tuple(adj), labels)


def empty_graph(n: int) -> Graph:
    return from_edges(n, [])


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(g.adj)), g.labels)


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Subgraph induced on the given vertices, relabeled 0..k-1 in sorted order."""
    vs = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(vs)}
    edges = [(pos[u], pos[v]) for u in vs for v in _bits(g.adj[u]) if v in pos and u < v]
    labels = tuple(g.labels[v] for v in vs) if g.labels is not None else None
    return from_edges(len(vs), edges, labels)


# ---------------------------------------------------------------------------
# pattern checkers
# ---------------------------------------------------------------------------


def contains_cycle(g: Graph, k: int) -> bool:
    """True iff g contains a cycle of length exactly k as a subgraph.

    Backtracking DFS over simple paths rooted at each cycle's minimum
    vertex, pruned by BFS distance back to the root.
    """
    if k < 3:
        raise PreconditionViolated("cycle length must be >= 3")
    n, adj = g.n, g.adj
    for s in range(n):
        allowed = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)  # vertices > s
        # BFS distances from s inside allowed ∪ {s}; unreachable stays large
        dist = [k + 1] * n
        dist[s] = 0
        frontier = 1 << s
        seen = frontier
        d = 0
        while frontier and d <= k:
            d += 1
            nxt = 0
            for u in _bits(frontier):
                nxt |= adj[u]
            nxt &= allowed & ~seen
            for u in _bits(nxt):
                dist[u] = d
            seen |= nxt
            frontier = nxt

        found = False

        def walk(u, used, length):
            nonlocal found
            if found:
                return
            if length == k - 1:
                if adj[u] >> s & 1:
                    found = True
                return
            rem_after = k - length - 1  # edges left after stepping; BFS dist is a lower bound
            for w in _bits(adj[u] & allowed & ~used):
                if dist[w] <= rem_after:
                    walk(w, used | (1 << w), length + 1)
                    if found:
                        return

        for v in _bits(adj[s] & allowed):
            walk(v, (1 << s) | (1 << v), 1)
            if found:
                return True
    return False


def contains_complete_bipartite(g: Graph, t: int, s: int, cap: int = BICLIQUE_SUBSET_CAP) -> bool:
    """True iff some t-subset has >= s common neighbors (a K_{t,s} subgraph).

    Enumerates the smaller side t; common neighbors are automatically
    disjoint from the subset since loops are absent.
    """
    from itertools import combinations

    if not 1 <= t <= s:
        raise PreconditionViolated("need 1 <= t <= s")
    n, adj = g.n, g.adj
    if t > n:
        return False
    if comb(n, t) > cap:
        raise ComplexityRefused(f"C({n},{t}) exceeds cap {cap}")
    for subset in combinations(range(n), t):
        common = (1 << n) - 1
        for v in subset:
            common &= adj[v]
            if common.bit_count() < s:
                break
        else:
            if common.bit_count() >= s:
                return True
    return False


def max_clique_size(g: Graph, stop_at: int | None = None) -> int:
    """Maximum clique size via branch-and-bound with greedy-coloring pruning.

    With stop_at, returns early once a clique of that size is found.
    """
    adj = g.adj
    best = 0

    def color_sort(cand):
        order, colors = [], []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                b = avail & -avail
                v = b.bit_length() - 1
                avail ^= b
                avail &= ~adj[v]
                rest ^= b
                order.append(v)
                colors.append(color)
        return order, colors

    def expand(r_size, cand):
        nonlocal best
        if cand == 0:
            if r_size > best:
                best = r_size
            return
        order, colors = color_sort(cand)
        for i in range(len(order) - 1, -1, -1):
            if stop_at is not None and best >= stop_at:
                return
            if r_size + colors[i] <= best:
                return
            v = order[i]
            expand(r_size + 1, cand & adj[v])
            cand &= ~(1 << v)

    if g.n == 0:
        return 0
    expand(0, (1 << g.n) - 1)
    return best


def contains_clique(g: Graph, t: int) -> bool:
    """True iff g has a clique on t vertices."""
    if t < 1:
        raise PreconditionViolated("clique size must be >= 1")
    if t == 1:
        return g.n >= 1
    return max_clique_size(g, stop_at=t) >= t


# ---------------------------------------------------------------------------
# BFS layers and coloring
# ---------------------------------------------------------------------------


def bfs_layers(g: Graph, v: int) -> list[set[int]]:
    """A_i = vertices at distance exactly i from v; unreachable omitted."""
    if not 0 <= v < g.n:
        raise IndexOutOfRange(f"vertex {v} outside [0,{g.n})")
    layers = [{v}]
    seen = 1 << v
    frontier = 1 << v
    while True:
        nxt = 0
        for u in _bits(frontier):
            nxt |= g.adj[u]
        nxt &= ~seen
        if not nxt:
            return layers
        layers.append(set(_bits(nxt)))
        seen |= nxt
        frontier = nxt


def _greedy_coloring_bound(g: Graph) -> int:
    """Colors used by largest-degree-first greedy; an upper bound on chi."""
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    colors = {}
    used = 0
    for v in order:
        taken = {colors[u] for u in _bits(g.adj[v]) if u in colors}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
        used = max(used, c + 1)
    return used


def _k_colorable(g: Graph, k: int) -> bool:
    """Exact k-colorability by saturation-ordered backtracking."""
    n, adj = g.n, g.adj
    colors = [-1] * n
    full_k = (1 << k) - 1

    def pick():
        best_v, best_key = -1, (-1, -1)
        for v in range(n):
            if colors[v] != -1:
                continue
            sat = 0
            for u in _bits(adj[v]):
                if colors[u] != -1:
                    sat |= 1 << colors[u]
            key = (sat.bit_count(), adj[v].bit_count())
            if key > best_key:
                best_v, best_key = v, key
        return best_v

    def bt(done, max_used):
        if done == n:
            return True
        v = pick()
        sat = 0
        for u in _bits(adj[v]):
            if colors[u] != -1:
                sat |= 1 << colors[u]
        if sat == full_k:
            return False
        limit = min(k, max_used + 1)  # at most one brand-new color: breaks color symmetry
        for c in range(limit):
            if sat >> c & 1:
                continue
            colors[v] = c
            if bt(done + 1, max(max_used, c + 1)):
                return True
            colors[v] = -1
        return False

    return bt(0, 0)


def chromatic_number_exact(g: Graph, cap: int = CHROMATIC_N_CAP) -> int:
    """Exact chromatic number; clique lower bound, greedy upper bound,
    backtracking in between."""
    if g.n > cap:
        raise ComplexityRefused(f"n = {g.n} exceeds chromatic cap {cap}")
    if g.n == 0:
        return 0
    if g.edge_count() == 0:
        return 1
    lower = max_clique_size(g)
    upper = _greedy_coloring_bound(g)
    k = lower
    while k < upper and not _k_colorable(g, k):
        k += 1
    return k


@dataclass(frozen=True)
class LayerColoringReport:
    """Outcome of the BFS-layer chromatic bound check."""

    k: int
    bound: int  # = k - 2
    ok: bool
    max_layer_chi: int
    entries: tuple = field(default_factory=tuple)  # (root, layer index, chi, ok)


def layer_chromatic_check(g: Graph, k: int) -> LayerColoringReport:
    """For a graph with no cycle of length exactly k, every BFS layer A_i
    with i <= floor((k-1)/2) must have chromatic number <= k-2."""
    if contains_cycle(g, k):
        raise PreconditionViolated(f"graph contains a cycle of length {k}")
    bound = k - 2
    i_max = (k - 1) // 2
    entries = []
    max_chi = 0
    ok = True
    for root in range(g.n):
        layers = bfs_layers(g, root)
        for i in range(min(i_max, len(layers) - 1) + 1):
            sub = induced_subgraph(g, layers[i])
            chi = chromatic_number_exact(sub)
            good = chi <= bound
            ok = ok and good
            max_chi = max(max_chi, chi)
            entries.append((root, i, chi, good))
    return LayerColoringReport(k, bound, ok, max_chi, tuple(entries))


# ---------------------------------------------------------------------------
# pattern descriptions ("C5", "K4", "K2,3")
# ---------------------------------------------------------------------------


def parse_pattern(text: str):
    """Parse a forbidden-pattern name: C<k>, K<t>, or K<t>,<s>."""
    text = text.strip().upper()
    try:
        if text.startswith("C"):
            k = int(text[1:])
            if k < 3:
                raise ValueError
            return ("cycle", k)
        if text.startswith("K"):
            body = text[1:]
            if "," in body:
                t, s = (int(x) for x in body.split(","))
                if not 1 <= t <= s:
                    t, s = min(t, s), max(t, s)
                if t < 1:
                    raise ValueError
                return ("biclique", (t, s))
            t = int(body)
            if t < 1:
                raise ValueError
            return ("clique", t)
    except ValueError:
        pass
    raise UnsupportedPattern(f"unrecognized pattern {text!r}; use C<k>, K<t>, or K<t>,<s>")


def contains_pattern(g: Graph, text: str) -> bool:
    kind, arg = parse_pattern(text)
    if kind == "cycle":
        return contains_cycle(g, arg)
    if kind == "clique":
        return contains_clique(g, arg)
    t, s = arg
    return contains_complete_bipartite(g, t, s)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def graph_to_json(g: Graph) -> dict:
    obj = {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}
    if g.labels is not None:
        obj["labels"] = list(g.labels)
    return obj


def graph_from_json(obj: dict) -> Graph:
    return from_edges(int(obj["n"]), [(int(u), int(v)) for u, v in obj.get("edges", [])],
                      obj.get("labels"))


def graph_to_text(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count()}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty edge-list text")
    head = lines[0].split()
    n, m = int(head[0]), int(head[1])
    edges = []
    for ln in lines[1 : m + 1]:
        u, v = ln.split()
        edges.append((int(u), int(v)))
    if len(edges) != m:
        raise ValueError(f"header promises {m} edges, found {len(edges)}")
    return from_edges(n, edges)
