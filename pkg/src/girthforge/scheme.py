"""Executable secret sharing from star decompositions, checked by
exhaustive enumeration.

Each vertex's star (the vertex plus all incident edges) becomes one
ideal sub-scheme: the star's sub-secret is masked by fresh randomness,
the center holds the mask, every leaf holds the masked value. Sub-
secrets are evaluations of a polynomial whose coefficient vector is the
secret, so any edge (covered by both endpoint stars) interpolates the
polynomial, while an independent set sees only one value per star and
learns nothing. Perfectness is established by enumerating the full
(secret, randomness) space and counting: a functional-dependency check
per edge and an equal-count independence check per maximal independent
set, all in exact integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadSize,
    BudgetExceeded,
    FieldTooSmall,
    IsolatedVertex,
    NonuniformShare,
    SizeLimit,
)
from .graphs import Graph
from .rational import R, ratio_str

ENUM_BUDGET = 10**8
_KEY_BITS = 62
_CHUNK = 1 << 20
_TABLE_CAP = 1 << 26
_MIS_VERTEX_CAP = 16


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldElement:
    """Residue in GF(q), q prime."""

    value: int
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise BadSize("field size must be prime", q=self.q)
        if not 0 <= self.value < self.q:
            raise BadSize("value outside the field", value=self.value,
                          q=self.q)

    def _like(self, other):
        if not isinstance(other, FieldElement) or other.q != self.q:
            raise BadSize("mixed fields", q=self.q)
        return other.value

    def __add__(self, other):
        return FieldElement((self.value + self._like(other)) % self.q, self.q)

    def __sub__(self, other):
        return FieldElement((self.value - self._like(other)) % self.q, self.q)

    def __mul__(self, other):
        return FieldElement((self.value * self._like(other)) % self.q, self.q)


@dataclass(frozen=True)
class Star:
    center: int
    leaves: tuple


@dataclass(frozen=True)
class DecompositionScheme:
    """Star decomposition, optionally realized over GF(q).

    A skeleton has q == None. Realized schemes carry one distinct
    nonzero evaluation point per star; multiplicities are all 1 for the
    plain star decomposition.
    """

    graph: Graph
    stars: tuple
    multiplicity: tuple
    lam: int
    q: int = None
    points: tuple = None

    @property
    def realized(self) -> bool:
        return self.q is not None

    def star_members(self, i: int):
        s = self.stars[i]
        return (s.center,) + tuple(s.leaves)

    def vertex_coords(self, v: int):
        """Per-vertex share layout: (star index, holds_mask) in star
        order; holds_mask marks the center role."""
        out = []
        for i, s in enumerate(self.stars):
            if s.center == v:
                out.append((i, True))
            elif v in s.leaves:
                out.append((i, False))
        return tuple(out)

    def to_json(self) -> str:
        doc = {
            "q": self.q,
            "lambda": self.lam,
            "stars": [
                {
                    "center": s.center,
                    "leaves": list(s.leaves),
                    "x": None if self.points is None
                    else self.points[i].value,
                }
                for i, s in enumerate(self.stars)
            ],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def check_coverage(s: DecompositionScheme) -> bool:
    """Every edge lies in at least lam subgraphs, with multiplicity."""
    for u, v in s.graph.edges:
        got = 0
        for i, st in enumerate(s.stars):
            members = set(s.star_members(i))
            if u in members and v in members:
                got += s.multiplicity[i]
        if got < s.lam:
            return False
    return True


def make_star_decomposition(g: Graph) -> DecompositionScheme:
    """One full star per vertex, multiplicity 1, covering multiplicity
    2: an edge lies in exactly its two endpoint stars."""
    for v in range(g.n):
        if g.degree(v) == 0:
            raise IsolatedVertex("isolated vertex has no star", vertex=v)
    stars = tuple(Star(v, tuple(g.neighbors(v))) for v in range(g.n))
    out = DecompositionScheme(g, stars, (1,) * g.n, 2)
    if not check_coverage(out):
        raise BadSize("star decomposition failed to cover an edge")
    return out


def realize_scheme(skel: DecompositionScheme, q: int) -> DecompositionScheme:
    """Attach GF(q) with evaluation points x_i = i+1 per star.

    The secret is the lam coefficients of a polynomial P; star i's
    sub-secret is P(x_i), masked for the leaves by the star's fresh
    randomness. Needs q prime and q > number of stars so the points
    stay distinct and nonzero.
    """
    if not is_prime(q):
        raise BadSize("field size must be prime", q=q)
    t = len(skel.stars)
    if q <= t:
        raise FieldTooSmall("need one distinct nonzero point per star",
                            q=q, stars=t)
    points = tuple(FieldElement(i + 1, q) for i in range(t))
    return DecompositionScheme(skel.graph, skel.stars, skel.multiplicity,
                               skel.lam, q, points)


class JointDistribution:
    """Uniform joint distribution of all shares and the secret.

    States are the q**(lam + slots) assignments of secret coefficients
    and per-star randomness, enumerated exhaustively in chunks; exact
    counts come back from `counts`. rand_slots (default: one slot per
    star) exists so tests can alias two stars' randomness and watch the
    independence check fail.
    """

    def __init__(self, scheme: DecompositionScheme, rand_slots=None):
        if not scheme.realized:
            raise BadSize("scheme has no field attached")
        self.scheme = scheme
        t = len(scheme.stars)
        self.rand_slots = tuple(range(t)) if rand_slots is None \
            else tuple(rand_slots)
        if len(self.rand_slots) != t:
            raise BadSize("need one randomness slot per star", got=len(
                self.rand_slots), want=t)
        self.slots = max(self.rand_slots) + 1
        self.digits = scheme.lam + self.slots
        self.states = scheme.q ** self.digits
        if self.states > ENUM_BUDGET:
            raise BudgetExceeded("enumeration over budget",
                                 states=self.states, budget=ENUM_BUDGET)

    def _columns(self, coords, chunk_lo, chunk_hi):
        """Share-coordinate columns for one chunk of state indices."""
        q = self.scheme.q
        lam = self.scheme.lam
        idx = np.arange(chunk_lo, chunk_hi, dtype=np.int64)
        digit = {}

        def dig(j):
            if j not in digit:
                digit[j] = (idx // q ** (self.digits - 1 - j)) % q
            return digit[j]

        cols = []
        for star_i, holds_mask in coords:
            r = dig(lam + self.rand_slots[star_i])
            if holds_mask:
                cols.append(r)
            else:
                x = self.scheme.points[star_i].value
                c = np.zeros_like(idx)
                for k in range(lam):
                    c = c + dig(k) * pow(x, k, q)
                cols.append((c + r) % q)
        return cols, [dig(k) for k in range(lam)]

    def counts(self, coords, with_secret: bool):
        """Exact state counts keyed by the share coordinates (and the
        secret coefficients when asked). Returns (keys, counts) sorted
        by key; key digits are base q, secret last."""
        q = self.scheme.q
        width = len(coords) + (self.scheme.lam if with_secret else 0)
        if q ** width > 2 ** _KEY_BITS:
            raise BudgetExceeded("key space too wide", digits=width, q=q)
        space = q ** width
        table = space <= _TABLE_CAP
        acc = np.zeros(space, dtype=np.int64) if table else None
        keys_parts, cnt_parts = [], []
        for lo in range(0, self.states, _CHUNK):
            hi = min(lo + _CHUNK, self.states)
            cols, secret = self._columns(coords, lo, hi)
            if with_secret:
                cols = cols + secret
            key = np.zeros(hi - lo, dtype=np.int64)
            for c in cols:
                key = key * q + c
            if table:
                acc += np.bincount(key, minlength=space)
            else:
                ks, cs = np.unique(key, return_counts=True)
                keys_parts.append(ks)
                cnt_parts.append(cs)
        if table:
            keys = np.nonzero(acc)[0]
            return keys, acc[keys]
        keys = np.concatenate(keys_parts)
        cnts = np.concatenate(cnt_parts)
        out_keys, inv = np.unique(keys, return_inverse=True)
        out = np.zeros(len(out_keys), dtype=np.int64)
        np.add.at(out, inv, cnts)
        return out_keys, out


def _maximal_independent_sets(g: Graph):
    if g.n > _MIS_VERTEX_CAP:
        raise SizeLimit("too many vertices for exhaustive set checks",
                        n=g.n, limit=_MIS_VERTEX_CAP)
    nbr = [0] * g.n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    out = []
    for mask in range(1, 1 << g.n):
        ok = True
        for v in range(g.n):
            if mask >> v & 1:
                if nbr[v] & mask:
                    ok = False
                    break
            elif not (nbr[v] & mask):
                ok = False
                break
        if ok:
            out.append(tuple(v for v in range(g.n) if mask >> v & 1))
    return out


def _set_coords(scheme: DecompositionScheme, vertices):
    coords = []
    for v in vertices:
        coords.extend(scheme.vertex_coords(v))
    return coords


def _equal_per_group(group_keys, counts, group_size):
    """True when every group of consecutive equal group_keys has
    exactly group_size rows, all with the same count."""
    uniq, start, per = np.unique(group_keys, return_index=True,
                                 return_counts=True)
    if not np.all(per == group_size):
        return False
    firsts = counts[start]
    spread = np.repeat(firsts, per)
    return bool(np.all(counts == spread))


@dataclass(frozen=True)
class PerfectnessReport:
    """Exhaustive verification verdicts plus the measured ratio (None
    when some check failed or a share was not uniform)."""

    determinism: tuple
    independence: tuple
    supports: tuple
    ratio: object

    @property
    def perfect(self) -> bool:
        return all(ok for _, ok in self.determinism) and all(
            ok for _, ok in self.independence)

    def to_json(self) -> str:
        doc = {
            "determinism": [
                {"edge": list(e), "ok": ok} for e, ok in self.determinism
            ],
            "independence": [
                {"set": list(s), "ok": ok} for s, ok in self.independence
            ],
            "supports": [
                {"vertex": v, "size": size, "uniform": uni}
                for v, size, uni in self.supports
            ],
            "perfect": self.perfect,
            "ratio": None if self.ratio is None else ratio_str(self.ratio),
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def verify_perfect(g: Graph, jd: JointDistribution) -> PerfectnessReport:
    """Check both perfectness requirements by exact counting.

    Recovery: per edge, every attainable share pair maps to exactly one
    secret (edges generate all qualified sets). Privacy: per maximal
    independent set, every attainable share tuple appears equally often
    under every secret (smaller independent sets follow by summing).
    """
    scheme = jd.scheme
    q = scheme.q
    lam = scheme.lam
    secret_space = q ** lam

    determinism = []
    for u, v in g.edges:
        coords = _set_coords(scheme, (u, v))
        keys, _ = jd.counts(coords, with_secret=True)
        share_part = keys // secret_space
        uniq = np.unique(share_part)
        determinism.append(((u, v), len(uniq) == len(share_part)))

    independence = []
    for vs in _maximal_independent_sets(g):
        coords = _set_coords(scheme, vs)
        keys, cnts = jd.counts(coords, with_secret=True)
        independence.append(
            (vs, _equal_per_group(keys // secret_space, cnts, secret_space)))

    supports = []
    for v in range(g.n):
        coords = scheme.vertex_coords(v)
        keys, cnts = jd.counts(coords, with_secret=False)
        full = q ** len(coords)
        uniform = len(keys) == full and bool(np.all(cnts == cnts[0]))
        supports.append((v, int(len(keys)), uniform))

    ratio = None
    if all(ok for _, ok in determinism) and all(
            ok for _, ok in independence) and all(
            uni for _, _, uni in supports):
        top = max(len(scheme.vertex_coords(v)) for v in range(g.n))
        ratio = R(top, lam)
    return PerfectnessReport(tuple(determinism), tuple(independence),
                             tuple(supports), ratio)


def measured_ratio(jd: JointDistribution):
    """max_v H(share_v) / H(secret) from the enumerated distribution.

    Valid as a coordinate count ratio only because every share vector
    is verified uniform on a full product support (entropy then scales
    with the coordinate count) and the secret is verified uniform.
    """
    scheme = jd.scheme
    q = scheme.q
    skeys, scnts = jd.counts((), with_secret=True)
    if len(skeys) != q ** scheme.lam or not np.all(scnts == scnts[0]):
        raise NonuniformShare("secret is not uniform")
    top = 0
    for v in range(scheme.graph.n):
        coords = scheme.vertex_coords(v)
        keys, cnts = jd.counts(coords, with_secret=False)
        if len(keys) != q ** len(coords) or not np.all(cnts == cnts[0]):
            raise NonuniformShare("share support is not a uniform product",
                                  vertex=v)
        top = max(top, len(coords))
    return R(top, scheme.lam)


def structural_ratio(scheme: DecompositionScheme):
    """Ratio implied by the share layout alone: max coordinates per
    vertex over the covering multiplicity. No perfectness claim."""
    top = max(len(scheme.vertex_coords(v)) for v in range(scheme.graph.n))
    return R(top, scheme.lam)
