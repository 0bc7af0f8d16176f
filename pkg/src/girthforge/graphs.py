"""Finite simple graphs and the structural checks the rest of the
package builds on: exact girth, regular-bipartite validation,
independence, induced one-factors, and homomorphism checking.

Vertices are integers 0..n-1. Graphs are immutable once constructed;
anything that needs to grow a graph works on adjacency dicts and
freezes at the end.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import _kernels
from .errors import BadSize, IsolatedVertex, NotBipartite, NotRegular, SizeLimit

INFINITE = float("inf")

FIND_FACTOR_LIMIT = 20


class Graph:
    """Undirected simple graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "_adj", "_csr")

    def __init__(self, n: int, edges):
        if n < 0:
            raise BadSize("vertex count must be nonnegative", n=n)
        adj = [set() for _ in range(n)]
        canon = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise BadSize("edge endpoint out of range", edge=(u, v), n=n)
            if u == v:
                raise BadSize("self-loop", vertex=u)
            e = (u, v) if u < v else (v, u)
            if e in canon:
                raise BadSize("duplicate edge", edge=e)
            canon.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = tuple(sorted(canon))
        self._adj = tuple(tuple(sorted(s)) for s in adj)
        self._csr = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int):
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise BadSize("vertex out of range", vertex=max(u, v), n=self.n)
        du, dv = self._adj[u], self._adj[v]
        return v in du if len(du) <= len(dv) else u in dv

    def csr(self):
        if self._csr is None:
            indptr = [0]
            nbrs = []
            for v in range(self.n):
                nbrs.extend(self._adj[v])
                indptr.append(len(nbrs))
            self._csr = (indptr, nbrs)
        return self._csr

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Bipartition:
    a_side: tuple
    b_side: tuple


@dataclass(frozen=True)
class OneFactor:
    """A matching given as (b, a) pairs, read as a map from side B into
    side A."""

    pairs: tuple

    def domain(self):
        return tuple(b for b, _ in self.pairs)

    def image(self):
        return tuple(a for _, a in self.pairs)

    def as_dict(self) -> dict:
        return {b: a for b, a in self.pairs}


@dataclass(frozen=True)
class FactorCheck:
    ok: bool
    reason: str = ""
    detail: tuple = ()

    def __bool__(self):
        return self.ok


def girth(g: Graph, jobs: int = 1):
    """Exact girth; INFINITE when the graph is acyclic.

    Per-edge shortest-cycle scan, depth-capped by the best cycle seen.
    With jobs > 1 the edge list is split across threads, each running
    capped point-to-point searches; the result does not depend on the
    split.
    """
    if g.m == 0:
        return INFINITE
    indptr, nbrs = g.csr()
    if jobs <= 1 or g.m < 64:
        best = _kernels.girth_csr(indptr, nbrs)
        return best if best else INFINITE

    edges = g.edges
    chunks = [edges[k::jobs] for k in range(jobs)]
    best_holder = [0]

    def scan(chunk):
        local = 0
        for u, v in chunk:
            shared = best_holder[0]
            cur = min(x for x in (local, shared) if x) if (local or shared) else 0
            cap = cur - 2 if cur else g.n
            d = _kernels.bfs_dist_capped(indptr, nbrs, u, v, cap, u, v)
            if d >= 0 and (local == 0 or d + 1 < local):
                local = d + 1
                if best_holder[0] == 0 or local < best_holder[0]:
                    best_holder[0] = local
        return local

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = [x for x in pool.map(scan, chunks) if x]
    return min(results) if results else INFINITE


def distance(g: Graph, u: int, v: int, cap=None) -> int:
    """BFS distance, or -1 if beyond cap (or disconnected)."""
    indptr, nbrs = g.csr()
    return _kernels.bfs_dist_capped(indptr, nbrs, u, v, g.n if cap is None else cap)


def check_regular_bipartite(g: Graph, d: int) -> Bipartition:
    """Verify d-regularity and 2-colorability; return the color classes.

    The side containing vertex 0 is reported first. Raises NotRegular
    with an offending vertex, or NotBipartite with an odd closed walk.
    """
    for v in range(g.n):
        if g.degree(v) != d:
            raise NotRegular("degree mismatch", vertex=v, degree=g.degree(v), want=d)
    color = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if color[y] < 0:
                    color[y] = color[x] ^ 1
                    parent[y] = x
                    stack.append(y)
                elif color[y] == color[x]:
                    raise NotBipartite(
                        "odd cycle", witness=_odd_walk(parent, x, y)
                    )
    a = tuple(v for v in range(g.n) if color[v] == 0)
    b = tuple(v for v in range(g.n) if color[v] == 1)
    return Bipartition(a, b)


def _odd_walk(parent, x, y):
    """Closed odd walk through the offending edge x-y, via tree paths."""
    px = [x]
    while parent[px[-1]] >= 0:
        px.append(parent[px[-1]])
    py = [y]
    while parent[py[-1]] >= 0:
        py.append(parent[py[-1]])
    sx, sy = set(px), set(py)
    meet = next(v for v in px if v in sy)
    up = px[: px.index(meet) + 1]
    down = py[: py.index(meet)][::-1]
    return tuple(up + down + [x])


def is_independent(g: Graph, vertices) -> bool:
    """True when no edge joins two of the given vertices."""
    vs = set(vertices)
    for v in vs:
        if not (0 <= v < g.n):
            raise BadSize("vertex out of range", vertex=v, n=g.n)
    for v in vs:
        for w in g.neighbors(v):
            if w > v and w in vs:
                return False
    return True


def is_qualified(g: Graph, vertices) -> bool:
    """True when the set contains at least one edge."""
    return not is_independent(g, vertices)


def verify_one_factor(g: Graph, b_side, a_side, factor: OneFactor) -> FactorCheck:
    """Check that factor is an induced perfect matching from b_side into
    a_side: it saturates b_side, every pair is an edge, and no other
    edge joins a matched b to a matched a.
    """
    bs = set(b_side)
    as_ = set(a_side)
    pair_map = {}
    for b, a in factor.pairs:
        if b in pair_map:
            return FactorCheck(False, "UNSATURATED", (b,))
        pair_map[b] = a
    if set(pair_map) != bs:
        missing = sorted(bs.symmetric_difference(pair_map))
        return FactorCheck(False, "UNSATURATED", tuple(missing))
    imgs = list(pair_map.values())
    if len(set(imgs)) != len(imgs):
        dup = sorted({a for a in imgs if imgs.count(a) > 1})
        return FactorCheck(False, "UNSATURATED", tuple(dup))
    for b, a in pair_map.items():
        if a not in as_:
            return FactorCheck(False, "MISSING_EDGE", (b, a))
        if not g.has_edge(b, a):
            return FactorCheck(False, "MISSING_EDGE", (b, a))
    matched_a = set(imgs)
    for b, a in pair_map.items():
        for y in g.neighbors(b):
            if y != a and y in matched_a:
                return FactorCheck(False, "FORBIDDEN_EDGE", (b, y))
    return FactorCheck(True)


def find_one_factor(g: Graph, b_side, a_side):
    """Search for an induced perfect matching from b_side into a_side.

    Deterministic backtracking over b_side in sorted order with sorted
    candidate lists; returns None when no factor exists. Capped at
    |b_side| <= 20 because the search is worst-case exponential.
    """
    bs = sorted(set(b_side))
    as_ = set(a_side)
    if len(bs) > FIND_FACTOR_LIMIT:
        raise SizeLimit("one-factor search too large", size=len(bs), limit=FIND_FACTOR_LIMIT)
    chosen: list = []
    used_a: set = set()

    def compatible(b, a):
        for b2, a2 in chosen:
            if g.has_edge(b2, a) or g.has_edge(b, a2):
                return False
        return True

    def extend(i):
        if i == len(bs):
            return True
        b = bs[i]
        for a in g.neighbors(b):
            if a in as_ and a not in used_a and compatible(b, a):
                chosen.append((b, a))
                used_a.add(a)
                if extend(i + 1):
                    return True
                chosen.pop()
                used_a.remove(a)
        return False

    if extend(0):
        return OneFactor(tuple(chosen))
    return None


def check_homomorphism(h: Graph, g: Graph, phi) -> bool:
    """True when phi maps every edge of h to an edge of g."""
    if len(phi) != h.n:
        raise BadSize("map size mismatch", got=len(phi), want=h.n)
    for x in phi:
        if not (0 <= x < g.n):
            raise BadSize("image vertex out of range", vertex=x, n=g.n)
    for u, v in h.edges:
        pu, pv = phi[u], phi[v]
        if pu == pv or not g.has_edge(pu, pv):
            return False
    return True


def require_no_isolated(g: Graph):
    for v in range(g.n):
        if g.degree(v) == 0:
            raise IsolatedVertex("isolated vertex", vertex=v)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the plain text graph format: first line "n m", then one
    "u v" line per edge; '#' starts a comment."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise BadSize("empty graph file")
    head = rows[0].split()
    if len(head) != 2:
        raise BadSize("header must be 'n m'", header=rows[0])
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise BadSize("header must be 'n m'", header=rows[0])
    if len(rows) - 1 != m:
        raise BadSize("edge count mismatch", declared=m, got=len(rows) - 1)
    edges = []
    for line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise BadSize("edge line must be 'u v'", line=line)
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise BadSize("edge line must be 'u v'", line=line)
    return Graph(n, edges)
