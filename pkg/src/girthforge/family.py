"""Towers of regular bipartite graphs with controllable girth.

The family is built level by level: level 2 is an even cycle, and level
d+1 takes m >= 5 disjoint level-d members of equal size and joins copy i
to copy i+1 (cyclically) by an induced perfect matching. Every member is
d-regular bipartite on the product of its part sizes.

Separately, a pi-graph is a 3-regular bipartite graph presented as a
Hamiltonian cycle b_0 a_0 b_1 a_1 ... plus a chord perfect matching
a_i - b_{pi(i)}. `build_pi_graph` grows such a graph with girth above a
requested target by greedy far-apart chord insertion, falling back to a
local surgery that trades a third of the girth for 3-regularity when the
greedy stalls. `build_large_girth` stacks the two constructions to reach
any level with verified girth.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .errors import (
    BadSize,
    InfeasibleAtBudget,
    LevelMismatch,
    NotBijection,
    RetriesExhausted,
    SizeMismatch,
    StructureUnknown,
    TooFewCopies,
)
from .graphs import (
    Bipartition,
    Graph,
    OneFactor,
    check_regular_bipartite,
    girth,
    verify_one_factor,
)

PRACTICAL = "practical"
GUARANTEED = "guaranteed"

_SIZE_LADDER_STEPS = 12


@dataclass(frozen=True)
class RandomFactors:
    """Junction policy: each junction gets a seed-deterministic uniform
    bijection."""

    seed: int


@dataclass(frozen=True)
class InducedFactors:
    """Junction policy: every junction reuses one local-label bijection
    pi, given as {a_vertex: b_vertex} over a single copy's labels."""

    pi: dict


@dataclass(frozen=True)
class GdGraph:
    """A family member plus the recursion metadata that witnesses it.

    part_sizes lists the per-level sizes from the base cycle up; copies
    and inter_factors describe the top junction level (empty at level 2).
    """

    graph: Graph
    d: int
    part_sizes: tuple
    bipartition: Bipartition
    copies: tuple = ()
    inter_factors: tuple = ()

    @property
    def in_family(self) -> bool:
        """Whether the part sizes meet the family's admission rules
        (base even and >= 6, every later level >= 5)."""
        sizes = self.part_sizes
        if not sizes or sizes[0] < 6 or sizes[0] % 2:
            return False
        return all(s >= 5 for s in sizes[1:])

    def to_json(self) -> str:
        doc = {
            "d": self.d,
            "part_sizes": list(self.part_sizes),
            "bipartition": {
                "A": list(self.bipartition.a_side),
                "B": list(self.bipartition.b_side),
            },
            "copies": [list(c) for c in self.copies],
            "factors": [[list(p) for p in f.pairs] for f in self.inter_factors],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str, graph: Graph) -> "GdGraph":
        try:
            doc = json.loads(text)
            member = cls(
                graph=graph,
                d=int(doc["d"]),
                part_sizes=tuple(int(s) for s in doc["part_sizes"]),
                bipartition=Bipartition(
                    tuple(int(v) for v in doc["bipartition"]["A"]),
                    tuple(int(v) for v in doc["bipartition"]["B"]),
                ),
                copies=tuple((int(lo), int(hi)) for lo, hi in doc["copies"]),
                inter_factors=tuple(
                    OneFactor(tuple((int(b), int(a)) for b, a in f))
                    for f in doc["factors"]
                ),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise BadSize("malformed member document", reason=str(exc))
        verify_member(member)
        return member


@dataclass(frozen=True)
class PiGraph:
    """Cycle-plus-matching presentation of a 3-regular bipartite graph.

    Vertex 2i is b_i, vertex 2i+1 is a_i; a_i is adjacent to b_i,
    b_{i+1} and b_{pi[i]}. girth is the measured value; surgery records
    whether the stall-repair path ran.
    """

    half: int
    pi: tuple
    graph: Graph
    girth: int
    surgery: bool = False

    def factor_edges(self) -> tuple:
        return tuple(
            tuple(sorted((2 * i + 1, 2 * self.pi[i]))) for i in range(self.half)
        )

    def to_json(self) -> str:
        doc = {
            "n": self.half,
            "pi": list(self.pi),
            "girth": self.girth,
            "surgery": self.surgery,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str, graph: Graph = None) -> "PiGraph":
        try:
            doc = json.loads(text)
            pi = [int(x) for x in doc["pi"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise BadSize("malformed permutation document", reason=str(exc))
        out = make_pi_graph(pi)
        if graph is not None and graph.edges != out.graph.edges:
            raise NotBijection("edge file disagrees with the permutation")
        if doc.get("girth") is not None and int(doc["girth"]) != out.girth:
            raise NotBijection(
                "recorded girth disagrees with the graph",
                recorded=int(doc["girth"]),
                measured=out.girth,
            )
        return PiGraph(out.half, out.pi, out.graph, out.girth,
                       bool(doc.get("surgery", False)))


def verify_member(member: GdGraph) -> bool:
    """Re-derive every structural claim the metadata makes.

    Raises the matching check error on the first violation; True when
    the member is d-regular bipartite with the stated classes, has the
    product size, every junction factor is an induced perfect matching,
    and cutting the junctions leaves equal regular halves.
    """
    g = member.graph
    d = member.d
    if d != len(member.part_sizes) + 1:
        raise LevelMismatch("level does not match size history",
                            d=d, sizes=list(member.part_sizes))
    total = 1
    for s in member.part_sizes:
        total *= s
    if g.n != total:
        raise SizeMismatch("vertex count is not the size product",
                           n=g.n, product=total)
    check_regular_bipartite(g, d)
    a_set = set(member.bipartition.a_side)
    b_set = set(member.bipartition.b_side)
    if a_set & b_set or len(a_set) + len(b_set) != g.n:
        raise SizeMismatch("stated sides do not partition the vertices")
    for u, v in g.edges:
        if (u in a_set) == (v in a_set):
            raise SizeMismatch("edge inside one stated side", edge=(u, v))
    if d == 2:
        return True

    m = member.part_sizes[-1]
    if len(member.copies) != m or len(member.inter_factors) != m:
        raise SizeMismatch("junction metadata count mismatch",
                           copies=len(member.copies), want=m)
    span = 0
    for lo, hi in member.copies:
        if lo != span:
            raise SizeMismatch("copy ranges are not consecutive", at=lo)
        span = hi
    if span != g.n:
        raise SizeMismatch("copy ranges do not cover the graph", covered=span)

    factor_edges = set()
    for i in range(m):
        lo, hi = member.copies[i]
        lo2, hi2 = member.copies[(i + 1) % m]
        b_side = [v for v in range(lo, hi) if v in b_set]
        a_side = [v for v in range(lo2, hi2) if v in a_set]
        chk = verify_one_factor(g, b_side, a_side, member.inter_factors[i])
        if not chk:
            raise SizeMismatch("junction factor fails verification",
                               junction=i, reason=chk.reason)
        factor_edges.update(
            tuple(sorted(p)) for p in member.inter_factors[i].pairs
        )

    inner = [e for e in g.edges if e not in factor_edges]
    comp = list(range(g.n))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for u, v in inner:
        ru, rv = find(u), find(v)
        if ru != rv:
            comp[ru] = rv
    roots = {find(v) for v in range(g.n)}
    if len(roots) != m:
        raise SizeMismatch("cutting junctions leaves wrong copy count",
                           got=len(roots), want=m)
    degs = {}
    for u, v in inner:
        degs[u] = degs.get(u, 0) + 1
        degs[v] = degs.get(v, 0) + 1
    if any(degs.get(v, 0) != d - 1 for v in range(g.n)):
        raise SizeMismatch("copies are not (d-1)-regular after the cut")
    return True


def build_cycle(n: int) -> GdGraph:
    """Level-2 member: the n-cycle, even positions on the A side."""
    if n < 6 or n % 2:
        raise BadSize("cycle length must be even and at least 6", n=n)
    edges = [(i, (i + 1) % n) for i in range(n)]
    bip = Bipartition(tuple(range(0, n, 2)), tuple(range(1, n, 2)))
    member = GdGraph(Graph(n, edges), 2, (n,), bip)
    verify_member(member)
    return member


def _junction_pairs(copies, factors):
    """Local (b, a) pairs per junction, from an explicit list or a
    policy object."""
    m = len(copies)
    if isinstance(factors, RandomFactors):
        rng = random.Random(factors.seed)
        out = []
        for i in range(m):
            bs = sorted(copies[i].bipartition.b_side)
            as_ = sorted(copies[(i + 1) % m].bipartition.a_side)
            rng.shuffle(as_)
            out.append(tuple(zip(bs, as_)))
        return out
    if isinstance(factors, InducedFactors):
        pi = dict(factors.pi)
        out = []
        for i in range(m):
            a_side = set(copies[(i + 1) % m].bipartition.a_side)
            b_side = set(copies[i].bipartition.b_side)
            if len(pi) != len(a_side):
                raise SizeMismatch("bijection domain size mismatch",
                                   got=len(pi), want=len(a_side))
            if set(pi) != a_side or set(pi.values()) != b_side:
                raise NotBijection("map is not a bijection from the A side "
                                   "onto the B side")
            out.append(tuple((pi[a], a) for a in sorted(a_side)))
        return out
    factors = list(factors)
    if len(factors) != m:
        raise SizeMismatch("need one factor per junction",
                           got=len(factors), want=m)
    out = []
    for i, f in enumerate(factors):
        pairs = tuple(f.pairs)
        bs = {b for b, _ in pairs}
        as_ = {a for _, a in pairs}
        if bs != set(copies[i].bipartition.b_side) or as_ != set(
            copies[(i + 1) % m].bipartition.a_side
        ) or len(as_) != len(pairs) or len(bs) != len(pairs):
            raise NotBijection("junction factor is not a bijection",
                               junction=i)
        out.append(pairs)
    return out


def _assemble(copies, local_pairs) -> GdGraph:
    """Glue disjoint copies with the given per-junction local pairs."""
    m = len(copies)
    size = copies[0].graph.n
    edges = []
    for i, c in enumerate(copies):
        off = i * size
        edges.extend((u + off, v + off) for u, v in c.graph.edges)
    ranges = tuple((i * size, (i + 1) * size) for i in range(m))
    factors = []
    for i, pairs in enumerate(local_pairs):
        off_b = i * size
        off_a = ((i + 1) % m) * size
        glob = tuple((b + off_b, a + off_a) for b, a in pairs)
        factors.append(OneFactor(glob))
        edges.extend(glob)
    a_side = []
    b_side = []
    for i, c in enumerate(copies):
        off = i * size
        a_side.extend(v + off for v in c.bipartition.a_side)
        b_side.extend(v + off for v in c.bipartition.b_side)
    member = GdGraph(
        graph=Graph(m * size, edges),
        d=copies[0].d + 1,
        part_sizes=copies[0].part_sizes + (m,),
        bipartition=Bipartition(tuple(sorted(a_side)), tuple(sorted(b_side))),
        copies=ranges,
        inter_factors=tuple(factors),
    )
    verify_member(member)
    return member


def extend_family(copies, factors) -> GdGraph:
    """One level up: join m >= 5 equal-size equal-level members in a
    ring of induced matchings (copy i's B side onto copy i+1's A side).

    factors is a list of per-junction OneFactors in copy-local labels,
    or RandomFactors(seed), or InducedFactors(pi).
    """
    copies = list(copies)
    if len(copies) < 5:
        raise TooFewCopies("need at least 5 copies", got=len(copies))
    size = copies[0].graph.n
    level = copies[0].d
    for c in copies[1:]:
        if c.graph.n != size:
            raise SizeMismatch("copies differ in size", got=c.graph.n,
                               want=size)
        if c.d != level:
            raise LevelMismatch("copies differ in level", got=c.d, want=level)
    return _assemble(copies, _junction_pairs(copies, factors))


def build_h(m: int, g: GdGraph, pi: dict) -> GdGraph:
    """m cyclically joined copies of one member, every junction induced
    by the same bijection: vertex pi[a] in copy i is matched to vertex a
    in copy i+1. Accepts any m >= 2; in_family additionally needs m >= 5.
    """
    if m < 2:
        raise BadSize("need at least 2 copies", got=m)
    pi = dict(pi)
    a_side = set(g.bipartition.a_side)
    b_side = set(g.bipartition.b_side)
    if set(pi) != a_side or set(pi.values()) != b_side or len(
        set(pi.values())
    ) != len(pi):
        raise NotBijection("map is not a bijection from the A side onto "
                           "the B side")
    pairs = tuple((pi[a], a) for a in sorted(a_side))
    return _assemble([g] * m, [pairs] * m)


def build_member(part_sizes, seed=None) -> GdGraph:
    """Convenience tower: fold extend_family over part_sizes with
    seed-deterministic random junctions."""
    sizes = tuple(int(s) for s in part_sizes)
    if not sizes:
        raise BadSize("need at least the base size")
    rng = random.Random(seed)
    member = build_cycle(sizes[0])
    for m in sizes[1:]:
        if m < 5:
            raise TooFewCopies("need at least 5 copies", got=m)
        member = extend_family([member] * m, RandomFactors(rng.randrange(2**32)))
    return member


def guaranteed_n(g: int) -> int:
    """Half-size above which the girth-g chord growth provably never
    needs the surgery fallback."""
    if g <= 3:
        raise BadSize("girth target must exceed 3", got=g)
    return 2 ** (12 * g + 4)


def make_pi_graph(pi) -> PiGraph:
    """PiGraph from an explicit chord permutation (0-based)."""
    pi = tuple(int(x) for x in pi)
    n = len(pi)
    if n < 3:
        raise BadSize("need at least 3 chord positions", got=n)
    if sorted(pi) != list(range(n)):
        raise NotBijection("chord map is not a permutation", length=n)
    for i in range(n):
        if pi[i] == i or pi[i] == (i + 1) % n:
            raise BadSize("chord duplicates a cycle edge", at=i)
    edges = []
    for i in range(n):
        edges.append((2 * i + 1, 2 * i))
        edges.append((2 * i + 1, 2 * ((i + 1) % n)))
        edges.append((2 * i + 1, 2 * pi[i]))
    g = Graph(2 * n, edges)
    return PiGraph(n, pi, g, int(girth(g)))


def _ball(adj, src, radius):
    """All vertices within the given distance of src."""
    seen = {src}
    frontier = [src]
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return seen


class _BPool:
    """Unmatched b-indices with O(1) seeded sampling and removal."""

    def __init__(self, items):
        self.items = list(items)
        self.pos = {j: k for k, j in enumerate(self.items)}

    def remove(self, j):
        k = self.pos.pop(j)
        last = self.items.pop()
        if last != j:
            self.items[k] = last
            self.pos[last] = k

    def __len__(self):
        return len(self.items)


def _pick_far(rng, pool: _BPool, ball):
    """A random pool entry whose b-vertex avoids the ball; None if all
    are inside."""
    k = len(pool.items)
    if not k:
        return None
    for _ in range(24):
        j = pool.items[rng.randrange(k)]
        if 2 * j not in ball:
            return j
    far = [j for j in pool.items if 2 * j not in ball]
    if not far:
        return None
    return far[rng.randrange(len(far))]


def _attempt_pi_graph(target: int, n: int, rng) -> PiGraph:
    """One seeded growth attempt; None when the stall repair cannot be
    placed at this n."""
    adj = [[] for _ in range(2 * n)]

    def link(u, v):
        adj[u].append(v)
        adj[v].append(u)

    def unlink(u, v):
        adj[u].remove(v)
        adj[v].remove(u)

    for i in range(n):
        link(2 * i + 1, 2 * i)
        link(2 * i + 1, 2 * ((i + 1) % n))

    # grow chords between far-apart 2-degree vertices
    order = list(range(n))
    rng.shuffle(order)
    pool = _BPool(range(n))
    rng.shuffle(pool.items)
    pool.pos = {j: k for k, j in enumerate(pool.items)}
    sigma = {}
    pending = order
    while pending:
        left = []
        for ai in pending:
            ball = _ball(adj, 2 * ai + 1, target - 1)
            j = _pick_far(rng, pool, ball)
            if j is None:
                left.append(ai)
                continue
            sigma[ai] = j
            pool.remove(j)
            link(2 * ai + 1, 2 * j)
        if len(left) == len(pending):
            break
        pending = left

    mate = {}
    for ai, j in sigma.items():
        mate[2 * ai + 1] = 2 * j
        mate[2 * j] = 2 * ai + 1
    surgery = bool(pending)

    if surgery:
        left_a = sorted(pending)
        left_b = sorted(pool.items)
        k = len(left_a)
        if len(left_b) != k:
            raise RuntimeError("unmatched sides disagree")

        # indices whose a- and b-vertices are far from all 2-degree
        # vertices; extended after each placed interval to keep the
        # intervals mutually far
        blocked = set()
        for ai in left_a:
            blocked.update(_ball(adj, 2 * ai + 1, target - 1))
        for bj in left_b:
            blocked.update(_ball(adj, 2 * bj, target - 1))
        half_w = 2 ** (target - 1)
        width = 2 * half_w + 1
        if width > n - 2:
            return None
        taken = set()
        chosen = []
        for mid in range(n):
            if len(chosen) == k:
                break
            idxs = [(mid + t) % n for t in range(-half_w, half_w + 1)]
            if any(
                i in taken or 2 * i in blocked or 2 * i + 1 in blocked
                for i in idxs
            ):
                continue
            pair = None
            for p in range(width - 1):
                reach = _ball(adj, 2 * idxs[p], target - 1)
                for q in range(width - 1, p, -1):
                    if 2 * idxs[q] + 1 not in reach:
                        pair = (p, q)
                        break
                if pair:
                    break
            if pair is None:
                continue
            chosen.append((idxs, pair))
            for i in idxs:
                taken.add(i)
                blocked.update(_ball(adj, 2 * i, target - 1))
                blocked.update(_ball(adj, 2 * i + 1, target - 1))
        if len(chosen) < k:
            return None

        # splice a 2-vertex bridge per leftover pair, then re-regularize
        # the host interval
        for s in range(k):
            ai, bj = left_a[s], left_b[s]
            idxs, (p, q) = chosen[s]
            astar = len(adj)
            adj.append([])
            bstar = len(adj)
            adj.append([])
            u, el = idxs[p], idxs[q]
            link(2 * bj, astar)
            link(astar, 2 * u)
            link(2 * ai + 1, bstar)
            link(bstar, 2 * el + 1)
            mate[2 * bj] = astar
            mate[astar] = 2 * bj
            mate[2 * ai + 1] = bstar
            mate[bstar] = 2 * ai + 1
            for t in range(p, q + 1):
                i = idxs[t]
                unlink(2 * i + 1, 2 * i)
            link(astar, 2 * idxs[p + 1])
            link(2 * idxs[q - 1] + 1, bstar)
            for t in range(p + 1, q):
                i = idxs[t]
                link(2 * ((i - 1) % n) + 1, 2 * ((i + 1) % n))

    total = len(adj)
    if any(len(adj[v]) != 3 for v in range(total)):
        raise RuntimeError("construction lost 3-regularity")
    if len(mate) != total:
        raise RuntimeError("matching does not saturate the graph")

    # the non-matching edges must thread a single alternating cycle
    walk = [0, min(w for w in adj[0] if w != mate[0])]
    while True:
        cur, prev = walk[-1], walk[-2]
        nxt = [w for w in adj[cur] if w != mate[cur] and w != prev]
        if len(nxt) != 1:
            raise RuntimeError("cycle thread has a branch")
        if nxt[0] == 0:
            break
        walk.append(nxt[0])
    if len(walk) != total:
        raise RuntimeError("cycle thread misses vertices")

    b_side = {v for v in range(2 * n) if v % 2 == 0}
    b_side.update(range(2 * n + 1, total, 2))
    label = {}
    for t, v in enumerate(walk):
        if (v in b_side) != (t % 2 == 0):
            raise RuntimeError("cycle thread breaks alternation")
        label[v] = t
    half = total // 2
    pi = [0] * half
    for v, t in label.items():
        if t % 2:
            pi[(t - 1) // 2] = label[mate[v]] // 2
    out = make_pi_graph(pi)

    relabeled = set()
    for u in range(total):
        for w in adj[u]:
            if u < w:
                relabeled.add(tuple(sorted((label[u], label[w]))))
    if set(out.graph.edges) != relabeled:
        raise RuntimeError("relabeled edges disagree with the chord form")

    if surgery:
        if 3 * out.girth <= target:
            raise RuntimeError("surgery girth guarantee violated",)
    elif out.girth <= target:
        raise RuntimeError("greedy girth guarantee violated")
    return PiGraph(out.half, out.pi, out.graph, out.girth, surgery)


def build_pi_graph(girth_target: int, n: int, seed=None,
                   max_retries: int = 10) -> PiGraph:
    """Grow a 2n-vertex chord graph with girth above girth_target.

    Chords join 2-degree vertices at distance >= girth_target, drawn in
    seeded random order. When the growth stalls, leftover pairs are
    spliced in via far-apart host intervals (the output then only
    guarantees girth > girth_target/3, and may gain vertices). Each
    retry restarts with a fresh order.
    """
    if girth_target <= 3:
        raise BadSize("girth target must exceed 3", got=girth_target)
    if n < 3:
        raise BadSize("need at least 3 chord positions", got=n)
    rng = random.Random(seed)
    for _ in range(max_retries):
        out = _attempt_pi_graph(girth_target, n, rng)
        if out is not None:
            return out
    raise RetriesExhausted("chord growth kept stalling",
                           girth_target=girth_target, n=n,
                           retries=max_retries)


def canonical_relabel(member: GdGraph) -> GdGraph:
    """Relabel so the two sides are exactly the even and odd positions
    and every edge stays within 3 copy-sizes along the circle.

    Copy ranges are enumerated in order; inside each copy the A side is
    interleaved first. Level 2 walks its cycle instead so labels follow
    the cycle order.
    """
    if not isinstance(member, GdGraph):
        raise StructureUnknown("no recursion metadata on a bare graph")
    g = member.graph
    if member.d == 2:
        a_set = set(member.bipartition.a_side)
        start = min(a_set)
        prev, cur = None, start
        order = []
        while True:
            order.append(cur)
            nxt = [w for w in g.neighbors(cur) if w != prev]
            prev, cur = cur, min(nxt)
            if cur == start:
                break
        perm = {v: t for t, v in enumerate(order)}
        copy_size = g.n
    else:
        if not member.copies:
            raise StructureUnknown("junction metadata missing",
                                   d=member.d)
        a_set = set(member.bipartition.a_side)
        perm = {}
        for lo, hi in member.copies:
            base = lo
            aa = sorted(v for v in range(lo, hi) if v in a_set)
            bb = sorted(v for v in range(lo, hi) if v not in a_set)
            for k, v in enumerate(aa):
                perm[v] = base + 2 * k
            for k, v in enumerate(bb):
                perm[v] = base + 2 * k + 1
        copy_size = member.copies[0][1] - member.copies[0][0]

    edges = [(perm[u], perm[v]) for u, v in g.edges]
    out = GdGraph(
        graph=Graph(g.n, edges),
        d=member.d,
        part_sizes=member.part_sizes,
        bipartition=Bipartition(tuple(range(0, g.n, 2)),
                                tuple(range(1, g.n, 2))),
        copies=member.copies,
        inter_factors=tuple(
            OneFactor(tuple((perm[b], perm[a]) for b, a in f.pairs))
            for f in member.inter_factors
        ),
    )
    verify_member(out)
    limit = 3 * copy_size
    for u, v in out.graph.edges:
        dist = abs(u - v)
        if min(dist, g.n - dist) > limit:
            raise RuntimeError("relabeling exceeded the circular span")
    return out


def far_matching(member: GdGraph, min_distance: int, seed=None,
                 max_retries: int = 10) -> dict:
    """Seeded bijection A side -> B side adding chords only between
    vertices at distance >= min_distance in the graph-so-far, so the
    graph plus chords keeps girth > min_distance."""
    g = member.graph
    rng = random.Random(seed)
    a_side = list(member.bipartition.a_side)
    for _ in range(max_retries):
        adj = [list(g.neighbors(v)) for v in range(g.n)]
        order = list(a_side)
        rng.shuffle(order)
        pool = _BPool(sorted(member.bipartition.b_side))
        rng.shuffle(pool.items)
        pool.pos = {j: k for k, j in enumerate(pool.items)}
        out = {}
        ok = True
        for a in order:
            ball = _ball(adj, a, min_distance - 1)
            cand = None
            k = len(pool.items)
            for _ in range(24):
                b = pool.items[rng.randrange(k)]
                if b not in ball:
                    cand = b
                    break
            if cand is None:
                far = [b for b in pool.items if b not in ball]
                if not far:
                    ok = False
                    break
                cand = far[rng.randrange(len(far))]
            out[a] = cand
            pool.remove(cand)
            adj[a].append(cand)
            adj[cand].append(a)
        if ok:
            return out
    raise RetriesExhausted("far matching kept stalling",
                           min_distance=min_distance,
                           retries=max_retries)


@dataclass(frozen=True)
class TowerInt:
    """coeff * 2**exp where exp is an int or again a TowerInt; sizes in
    the guaranteed policy outgrow machine integers after one level."""

    coeff: int
    exp: object

    def __str__(self):
        e = self.exp
        estr = f"({e})" if isinstance(e, TowerInt) else str(e)
        return f"{self.coeff}*2^{estr}"


@dataclass(frozen=True)
class SizeReport:
    """Per-level sizes that make the girth guarantee unconditional."""

    d: int
    girth_target: int
    levels: tuple = field(default_factory=tuple)

    def to_json(self) -> str:
        doc = {
            "d": self.d,
            "girth_target": self.girth_target,
            "levels": [
                {"level": lvl, "size": size if isinstance(size, int)
                 else str(size)}
                for lvl, size in self.levels
            ],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def guaranteed_sizes(d: int, girth_target: int) -> SizeReport:
    """Worst-case sizes for each level, without building anything.

    Level 2 needs 2**(12g+4) chord positions; each next level needs
    about 12 * 2**(36 * g * previous). Values are exact ints while they
    fit; past that they stay as coeff*2^exp towers.
    """
    if d < 2:
        raise BadSize("level must be at least 2", got=d)
    if girth_target <= 3:
        raise BadSize("girth target must exceed 3", got=girth_target)
    g = girth_target
    levels = [(2, guaranteed_n(g))]
    for lvl in range(3, d + 1):
        prev = levels[-1][1]
        if isinstance(prev, int):
            levels.append((lvl, TowerInt(12, 36 * g * prev)))
        else:
            levels.append(
                (lvl, TowerInt(12, TowerInt(36 * g * prev.coeff, prev.exp)))
            )
    return SizeReport(d, g, tuple(levels))


def _base_pair(girth_target: int, rng, max_retries: int):
    """(cycle member, chord bijection) with verified girth of cycle
    plus chords >= girth_target, found by scanning sizes upward."""
    chord_target = max(girth_target - 1, 4)
    n = max(girth_target + 1, 7)
    last = None
    for _ in range(_SIZE_LADDER_STEPS):
        try:
            pg = build_pi_graph(chord_target, n,
                                seed=rng.randrange(2**32),
                                max_retries=max_retries)
            if pg.girth >= girth_target:
                cycle_edges = []
                for i in range(pg.half):
                    cycle_edges.append((2 * i + 1, 2 * i))
                    cycle_edges.append((2 * i + 1, 2 * ((i + 1) % pg.half)))
                member = GdGraph(
                    graph=Graph(2 * pg.half, cycle_edges),
                    d=2,
                    part_sizes=(2 * pg.half,),
                    bipartition=Bipartition(
                        tuple(range(1, 2 * pg.half, 2)),
                        tuple(range(0, 2 * pg.half, 2)),
                    ),
                )
                chords = {2 * i + 1: 2 * pg.pi[i] for i in range(pg.half)}
                return member, chords
        except RetriesExhausted as err:
            last = err
        n = (n * 3 + 1) // 2
    raise last if last is not None else RetriesExhausted(
        "no base reached the girth target", girth_target=girth_target)


def build_large_girth(d: int, girth_target: int, policy: str = PRACTICAL,
                      seed=None, max_retries: int = 10):
    """Family member of level d with verified girth >= girth_target.

    PRACTICAL searches real sizes: a chord-graph base gives the level-2
    cycle plus a far bijection, each later level joins 5 copies through
    it and re-verifies the girth directly, then derives the next far
    bijection. Returns (member, chords) where chords extend the member
    one level further (None at level 2). GUARANTEED returns the
    worst-case SizeReport instead of graphs.
    """
    if d < 2:
        raise BadSize("level must be at least 2", got=d)
    if girth_target <= 3:
        raise BadSize("girth target must exceed 3", got=girth_target)
    if policy == GUARANTEED:
        return guaranteed_sizes(d, girth_target)
    if policy != PRACTICAL:
        raise BadSize("unknown size policy", policy=policy)
    rng = random.Random(seed)
    if d == 2:
        length = girth_target + 1
        if length % 2:
            length += 1
        return build_cycle(max(length, 6)), None

    member, chords = _base_pair(girth_target, rng, max_retries)
    for level in range(3, d + 1):
        member = build_h(5, member, chords)
        got = girth(member.graph)
        if got < girth_target:
            raise RuntimeError("stacked member lost the girth target")
        try:
            chords = far_matching(member, girth_target - 1,
                                  seed=rng.randrange(2**32),
                                  max_retries=max_retries)
        except RetriesExhausted as err:
            raise InfeasibleAtBudget("no onward bijection at this level",
                                     level=level) from err
    return member, chords
