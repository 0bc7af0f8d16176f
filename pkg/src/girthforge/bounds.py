"""Share-size bounds for edge-qualified secret sharing on graphs.

Lower bounds come from an exact LP over set functions f on the vertex
power set (f(empty) = 0 implicit): the Shannon elemental inequalities
plus two strict families that any correct scheme's entropy profile
satisfies, with the secret normalized to one unit:

* strict monotonicity: f(B) >= f(A) + 1 whenever A is independent, B
  contains an edge, and A is a subset of B;
* strict submodularity: f(AC) + f(BC) - f(C) - f(ABC) >= 1 whenever A,
  B, C are disjoint, C is independent or empty, and both AC and BC
  contain an edge.

Only a dominating subfamily of each strict family is generated (single
vertex steps from maximal independent sets; minimal qualified
augmentations); chains of elemental inequalities imply the rest, so the
feasible region, and hence every optimum, is unchanged. Tests compare
against the full enumeration on small graphs.

Upper bounds come from fractional covers by stars and by spanned
complete multipartite subgraphs, solved by the same exact LP engine and
reconstructed into explicit weighted covers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadSize, LoadMismatch, SizeLimit, UncoveredEdge
from .graphs import Graph
from .lp import solve_min_geq_lp
from .rational import R, ZERO

SIZE_CAP = 10


def _check_size(g: Graph):
    if g.n > SIZE_CAP:
        raise SizeLimit(
            "power-set LP too large", vertices=g.n, limit=SIZE_CAP
        )


def _adj_masks(g: Graph):
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _indep_table(g: Graph, adj):
    """indep[mask] == True iff mask spans no edge."""
    size = 1 << g.n
    indep = [True] * size
    for mask in range(1, size):
        v = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << v)
        indep[mask] = indep[rest] and not (adj[v] & rest)
    return indep


class _RowSet:
    """Deduplicated >= rows over subset variables, keyed by their
    coefficient pattern; a strict version of a row supersedes a slack
    one (max rhs wins)."""

    def __init__(self):
        self.rows = []
        self.index = {}

    def add(self, coeffs: dict, rhs: int):
        items = tuple(sorted((m, c) for m, c in coeffs.items() if c and m))
        if not items:
            return
        at = self.index.get(items)
        if at is None:
            self.index[items] = len(self.rows)
            self.rows.append((items, rhs))
        elif rhs > self.rows[at][1]:
            self.rows[at] = (items, rhs)


def _elemental_rows(n: int, out: _RowSet):
    full = (1 << n) - 1
    for v in range(n):
        bit = 1 << v
        out.add({full: 1, full ^ bit: -1}, 0)
    for v in range(n):
        for w in range(v + 1, n):
            bv, bw = 1 << v, 1 << w
            others = full ^ bv ^ bw
            a = others
            while True:
                a = (a - 1) & others if a else 0
                coeffs = {a | bv: 1}
                coeffs[a | bw] = coeffs.get(a | bw, 0) + 1
                coeffs[a] = coeffs.get(a, 0) - 1
                coeffs[a | bv | bw] = coeffs.get(a | bv | bw, 0) - 1
                out.add(coeffs, 0)
                if a == 0:
                    break


def _minimal_augmentations(g: Graph, adj, c_mask: int):
    """Minimal vertex sets A disjoint from C with A|C qualified: either
    a single vertex with a neighbor in C, or an edge avoiding both C
    and its neighborhood."""
    out = []
    for v in range(g.n):
        bv = 1 << v
        if bv & c_mask:
            continue
        if adj[v] & c_mask:
            out.append(bv)
    for u, w in g.edges:
        bu, bw = 1 << u, 1 << w
        if (bu | bw) & c_mask:
            continue
        if (adj[u] & c_mask) or (adj[w] & c_mask):
            continue
        out.append(bu | bw)
    return out


def _strict_rows_reduced(g: Graph, adj, indep, out: _RowSet):
    size = 1 << g.n
    # monotone steps from independent sets, plus the edge base cases
    for u, w in g.edges:
        out.add({(1 << u) | (1 << w): 1}, 1)
    for a in range(1, size):
        if not indep[a]:
            continue
        for v in range(g.n):
            bv = 1 << v
            if (bv & a) or not (adj[v] & a):
                continue
            out.add({a | bv: 1, a: -1}, 1)
    # submodular rows over minimal qualified augmentations
    for c in range(size):
        if c and not indep[c]:
            continue
        aug = _minimal_augmentations(g, adj, c)
        for i in range(len(aug)):
            for j in range(i + 1, len(aug)):
                a, b = aug[i], aug[j]
                if a & b:
                    continue
                coeffs = {a | c: 1}
                coeffs[b | c] = coeffs.get(b | c, 0) + 1
                coeffs[c] = coeffs.get(c, 0) - 1
                coeffs[a | b | c] = coeffs.get(a | b | c, 0) - 1
                out.add(coeffs, 1)


def _strict_rows_full(g: Graph, adj, indep, out: _RowSet):
    """Unreduced strict families; exponential, used by tests to confirm
    the reduction leaves optima unchanged."""
    size = 1 << g.n
    for b in range(1, size):
        if indep[b]:
            continue
        a = b
        while True:
            a = (a - 1) & b if a else 0
            if indep[a]:
                out.add({b: 1, a: -1}, 1)
            if a == 0:
                break
    for c in range(size):
        if c and not indep[c]:
            continue
        comp = (size - 1) ^ c
        a = comp
        while a:
            rest = comp ^ a
            b = rest
            while b:
                if b < a and not indep[a | c] and not indep[b | c]:
                    coeffs = {a | c: 1}
                    coeffs[b | c] = coeffs.get(b | c, 0) + 1
                    coeffs[c] = coeffs.get(c, 0) - 1
                    coeffs[a | b | c] = coeffs.get(a | b | c, 0) - 1
                    out.add(coeffs, 1)
                b = (b - 1) & rest
            a = (a - 1) & comp


def entropy_rows(g: Graph, full_families: bool = False):
    """All >= rows of the bound polytope, as (coeff items, rhs)."""
    adj = _adj_masks(g)
    indep = _indep_table(g, adj)
    out = _RowSet()
    _elemental_rows(g.n, out)
    if full_families:
        _strict_rows_full(g, adj, indep, out)
    else:
        _strict_rows_reduced(g, adj, indep, out)
    return out.rows


def entropy_bound(g: Graph, objective: str = "minmax", full_families: bool = False):
    """Exact LP lower bound on normalized share entropies.

    objective "minmax": the largest single share (the per-graph
    complexity bound); "sum": the total over all vertices.
    """
    _check_size(g)
    if objective not in ("minmax", "sum"):
        raise BadSize("unknown objective", got=objective)
    rows = entropy_rows(g, full_families)
    if objective == "minmax":
        nvars = 1 << g.n
        t = nvars - 1
        lp_rows = []
        for items, rhs in rows:
            lp_rows.append(([m - 1 for m, _ in items], [c for _, c in items], rhs))
        for v in range(g.n):
            lp_rows.append(([t, (1 << v) - 1], [1, -1], 0))
        costs = [ZERO] * nvars
        costs[t] = R(1)
    else:
        nvars = (1 << g.n) - 1
        lp_rows = [
            ([m - 1 for m, _ in items], [c for _, c in items], rhs)
            for items, rhs in rows
        ]
        costs = [ZERO] * nvars
        for v in range(g.n):
            costs[(1 << v) - 1] = R(1)
    value, _, _, _ = solve_min_geq_lp(nvars, lp_rows, costs)
    return value


def entropy_set_bound(g: Graph, vertices, full_families: bool = False):
    """Exact LP lower bound on f(S) for one vertex set S."""
    _check_size(g)
    mask = 0
    for v in set(vertices):
        if not (0 <= v < g.n):
            raise BadSize("vertex out of range", vertex=v, n=g.n)
        mask |= 1 << v
    if mask == 0:
        return ZERO
    rows = entropy_rows(g, full_families)
    nvars = (1 << g.n) - 1
    lp_rows = [
        ([m - 1 for m, _ in items], [c for _, c in items], rhs)
        for items, rhs in rows
    ]
    costs = [ZERO] * nvars
    costs[mask - 1] = R(1)
    value, _, _, _ = solve_min_geq_lp(nvars, lp_rows, costs)
    return value


@dataclass(frozen=True)
class StarPiece:
    center: int
    leaves: tuple
    weight: object

    def contains(self, v: int) -> bool:
        return v == self.center or v in self.leaves

    def covered_edges(self):
        return tuple(
            (self.center, x) if self.center < x else (x, self.center)
            for x in self.leaves
        )


@dataclass(frozen=True)
class MultipartitePiece:
    parts: tuple
    weight: object

    def contains(self, v: int) -> bool:
        return any(v in p for p in self.parts)

    def covered_edges(self):
        out = []
        for i in range(len(self.parts)):
            for j in range(i + 1, len(self.parts)):
                for u in self.parts[i]:
                    for w in self.parts[j]:
                        out.append((u, w) if u < w else (w, u))
        return tuple(out)


@dataclass(frozen=True)
class CoverSolution:
    kind: str
    value: object
    pieces: tuple
    loads: tuple


def star_cover_bound(g: Graph) -> CoverSolution:
    """Optimal fractional star cover: minimize the maximum per-vertex
    weight of stars containing it, subject to unit edge coverage.

    Solved as an LP over per-center edge weights and reconstructed into
    nested-prefix stars whose recomputed maximum load must equal the LP
    optimum exactly.
    """
    edge_of = {e: k for k, e in enumerate(g.edges)}
    y_index = {}
    for v in range(g.n):
        for w in g.neighbors(v):
            e = (v, w) if v < w else (w, v)
            y_index[(v, e)] = len(y_index)
    ny = len(y_index)
    c0 = ny
    t = ny + g.n
    nvars = t + 1
    rows = []
    for u, w in g.edges:
        e = (u, w)
        rows.append(([y_index[(u, e)], y_index[(w, e)]], [1, 1], 1))
    for (v, e), k in y_index.items():
        rows.append(([c0 + v, k], [1, -1], 0))
    for w in range(g.n):
        idxs = [t, c0 + w]
        vals = [1, -1]
        for u in g.neighbors(w):
            e = (u, w) if u < w else (w, u)
            idxs.append(y_index[(u, e)])
            vals.append(-1)
        rows.append((idxs, vals, 0))
    costs = [ZERO] * nvars
    costs[t] = R(1)
    value, point, _, _ = solve_min_geq_lp(nvars, rows, costs)

    pieces = []
    for v in range(g.n):
        weights = {}
        for w in g.neighbors(v):
            e = (v, w) if v < w else (w, v)
            yv = point[y_index[(v, e)]]
            if yv > 0:
                weights[w] = yv
        if not weights:
            continue
        levels = sorted(set(weights.values()), reverse=True)
        for k, wk in enumerate(levels):
            nxt = levels[k + 1] if k + 1 < len(levels) else ZERO
            leaves = tuple(sorted(x for x, yv in weights.items() if yv >= wk))
            pieces.append(StarPiece(v, leaves, wk - nxt))
    sol = CoverSolution("star", value, tuple(pieces), _loads(g, pieces))
    _assert_cover_tight(g, sol)
    return sol


def _complement_components(g: Graph, members):
    """Partition of members into components of the complement of the
    induced subgraph."""
    members = list(members)
    mset = set(members)
    seen = set()
    parts = []
    for s in members:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = [s]
        while queue:
            x = queue.pop()
            nbrs = set(g.neighbors(x))
            for y in mset:
                if y not in seen and y != x and y not in nbrs:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        parts.append(tuple(sorted(comp)))
    return tuple(sorted(parts))


def multipartite_cover_bound(g: Graph) -> CoverSolution:
    """Optimal fractional cover by spanned complete multipartite
    subgraphs.

    For each vertex set S only the finest valid partition (complement
    components) is generated: coarser partitions of the same S cover
    fewer edges at identical load, so dropping them cannot change the
    optimum. Every star is dominated the same way, which is why this
    bound never exceeds the star bound.
    """
    _check_size(g)
    subsets = []
    for mask in range(1, 1 << g.n):
        if mask & (mask - 1) == 0:
            continue
        members = [v for v in range(g.n) if mask & (1 << v)]
        parts = _complement_components(g, members)
        if len(parts) < 2:
            continue
        part_of = {}
        for k, p in enumerate(parts):
            for v in p:
                part_of[v] = k
        covered = [
            e for e in g.edges
            if e[0] in part_of and e[1] in part_of
            and part_of[e[0]] != part_of[e[1]]
        ]
        if covered:
            subsets.append((members, parts, covered))
    nsub = len(subsets)
    t = nsub
    rows = []
    by_edge = {e: [] for e in g.edges}
    for k, (_, _, covered) in enumerate(subsets):
        for e in covered:
            by_edge[e].append(k)
    for e in g.edges:
        if not by_edge[e]:
            raise UncoveredEdge("edge in no multipartite subgraph", edge=e)
        rows.append((by_edge[e], [1] * len(by_edge[e]), 1))
    for v in range(g.n):
        idxs = [t]
        vals = [1]
        for k, (members, _, _) in enumerate(subsets):
            if v in members:
                idxs.append(k)
                vals.append(-1)
        rows.append((idxs, vals, 0))
    costs = [ZERO] * (nsub + 1)
    costs[t] = R(1)
    value, point, _, _ = solve_min_geq_lp(nsub + 1, rows, costs)
    pieces = tuple(
        MultipartitePiece(parts, point[k])
        for k, (_, parts, _) in enumerate(subsets)
        if point[k] > 0
    )
    sol = CoverSolution("multipartite", value, pieces, _loads(g, pieces))
    _assert_cover_tight(g, sol)
    return sol


def _loads(g: Graph, pieces):
    loads = [ZERO] * g.n
    for p in pieces:
        for v in range(g.n):
            if p.contains(v):
                loads[v] = loads[v] + p.weight
    return tuple(loads)


def _assert_cover_tight(g: Graph, sol: CoverSolution):
    verify_cover(g, sol)
    top = max(sol.loads) if sol.loads else ZERO
    if g.m and top != sol.value:
        raise RuntimeError("cover reconstruction does not meet the LP value")


def verify_cover(g: Graph, cover: CoverSolution) -> bool:
    """Re-check a cover from scratch: piece validity, unit edge
    coverage, and the stored per-vertex loads."""
    coverage = {e: ZERO for e in g.edges}
    for p in cover.pieces:
        if p.weight < 0:
            raise BadSize("negative piece weight", weight=str(p.weight))
        for e in p.covered_edges():
            if e not in coverage:
                raise BadSize("piece uses a non-edge", edge=e)
            coverage[e] = coverage[e] + p.weight
    for e, tot in coverage.items():
        if tot < 1:
            raise UncoveredEdge("edge coverage below one", edge=e, got=str(tot))
    loads = _loads(g, cover.pieces)
    if tuple(loads) != tuple(cover.loads):
        bad = next(v for v in range(g.n) if loads[v] != cover.loads[v])
        raise LoadMismatch(
            "stored load differs from recomputation",
            vertex=bad, stored=str(cover.loads[bad]), got=str(loads[bad]),
        )
    if cover.loads and max(cover.loads) > cover.value:
        raise LoadMismatch("a load exceeds the claimed value")
    return True


def stinson_upper(d: int):
    """Star-cover bound for graphs of maximum degree d: (d+1)/2."""
    if d < 0:
        raise BadSize("degree must be nonnegative", got=d)
    return R(d + 1) / R(2)
