"""Machine-checked certificates for the summed share-size lower bound.

A certificate is a materialized proof tree over a family member. Leaf
level: the even cycle, where a telescoping decomposition into mutual-
information terms plus small induced-matching witnesses gives
sum_v f(v) - f(V) >= |V| - 1. Junction level: the copy blocks V_i feed
the same telescoping identity, each term bounded through an independent
side connected to its neighbor copy by the junction matching, and the
copies recurse. The root assembles sum_v f(v) >= (d+1)/2 * |V|.

Every term carries an explicit combinatorial witness (the independent
set and the matching) that `verify_term` re-checks against the graph,
and `audit_certificate` re-derives the telescoping identity on random
rational set functions, so a certificate is only as trusted as the
checks that anyone can re-run.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .errors import (
    BadSize,
    LevelMismatch,
    MissingSubset,
    StructureUnknown,
    WitnessFailure,
)
from .graphs import Graph, OneFactor, is_independent, is_qualified, verify_one_factor
from .rational import R, parse_ratio, ratio_str

TERM_SLACK = "slack"
TERM_COND = "cond"
TERM_MATCHING = "matching"
TERM_VALUE = "value"
TERM_MATCHING_PLUS = "matching_plus"


class SetFunction:
    """Sparse rational-valued function on vertex subsets."""

    __slots__ = ("_vals",)

    def __init__(self, values=None):
        self._vals = {}
        if values:
            for k, v in dict(values).items():
                self._vals[frozenset(k)] = R(v)

    def set(self, subset, value):
        self._vals[frozenset(subset)] = R(value)

    def value(self, subset):
        key = frozenset(subset)
        try:
            return self._vals[key]
        except KeyError:
            raise MissingSubset("set function has no value here",
                                subset=tuple(sorted(key))) from None

    def __contains__(self, subset):
        return frozenset(subset) in self._vals

    def __len__(self):
        return len(self._vals)


def eval_I(f: SetFunction, a, b, c=None):
    """Mutual-information form: f(A)+f(B)-f(AB), or with conditioning
    f(AC)+f(BC)-f(C)-f(ABC)."""
    av, bv = frozenset(a), frozenset(b)
    if c is None:
        return f.value(av) + f.value(bv) - f.value(av | bv)
    cv = frozenset(c)
    return f.value(av | cv) + f.value(bv | cv) - f.value(cv) - f.value(
        av | bv | cv)


def fact1_terms(blocks):
    """Pair list of the telescoping identity over n >= 5 blocks.

    sum_i f(E_i) - f(E_1..E_n) equals the sum of I(A;B) over exactly
    these pairs: (E1,E2), (E1E2,E3), (E1E2E3, E4..En), then (E4,E5),
    (E4E5,E6), ..., (E4..E_{n-1}, En).
    """
    n = len(blocks)
    if n < 5:
        raise BadSize("identity needs at least 5 blocks", got=n)

    def union(seq):
        out = set()
        for s in seq:
            out.update(s)
        return tuple(sorted(out))

    pairs = [
        (tuple(blocks[0]), tuple(blocks[1])),
        (union(blocks[:2]), tuple(blocks[2])),
        (union(blocks[:3]), union(blocks[3:])),
    ]
    for k in range(4, n):
        pairs.append((union(blocks[3:k]), tuple(blocks[k])))
    return pairs


def check_decomposition_identity(n: int, trials: int = 1000,
                                 seed=None) -> bool:
    """Exercise the telescoping identity on random rational functions
    over n abstract blocks; exact equality every trial.

    A False return would mean the identity (an algebraic fact) was
    implemented wrong; the counterexample values are then irrelevant.
    """
    if n < 5:
        raise BadSize("identity needs at least 5 blocks", got=n)
    blocks = [(i,) for i in range(n)]
    pairs = fact1_terms(blocks)
    needed = {frozenset(range(n))}
    needed.update(frozenset(b) for b in blocks)
    for a, b in pairs:
        needed.add(frozenset(a))
        needed.add(frozenset(b))
        needed.add(frozenset(a) | frozenset(b))
    rng = random.Random(seed)
    full = frozenset(range(n))
    for _ in range(trials):
        f = SetFunction()
        for s in needed:
            f.set(s, R(rng.randrange(-10**9, 10**9), rng.randrange(1, 10**4)))
        lhs = sum((f.value(frozenset(b)) for b in blocks), R(0)) - f.value(full)
        rhs = sum((eval_I(f, a, b) for a, b in pairs), R(0))
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class TermBound:
    """One bounded term with its combinatorial witness.

    kinds: slack (nonnegative, no witness), cond (conditional term with
    independent C and qualified AC, BC), matching (independent B with an
    induced matching into qualified A bounds I(A;B) by |B|), value (same
    premises bound f(A) by |B|+1), matching_plus (qualified A and B, an
    independent b_prime inside B with an induced matching into A bounds
    I(A;B) by |b_prime|+1).
    """

    kind: str
    a_set: tuple
    b_set: tuple
    bound: object
    c_set: tuple = None
    b_prime: tuple = None
    factor: OneFactor = None

    def to_doc(self) -> dict:
        return {
            "kind": self.kind,
            "A": list(self.a_set),
            "B": list(self.b_set),
            "C": None if self.c_set is None else list(self.c_set),
            "B_prime": None if self.b_prime is None else list(self.b_prime),
            "factor": None if self.factor is None
            else [list(p) for p in self.factor.pairs],
            "bound": ratio_str(self.bound),
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "TermBound":
        return cls(
            kind=doc["kind"],
            a_set=tuple(int(v) for v in doc["A"]),
            b_set=tuple(int(v) for v in doc["B"]),
            bound=parse_ratio(doc["bound"]),
            c_set=None if doc.get("C") is None
            else tuple(int(v) for v in doc["C"]),
            b_prime=None if doc.get("B_prime") is None
            else tuple(int(v) for v in doc["B_prime"]),
            factor=None if doc.get("factor") is None
            else OneFactor(tuple((int(b), int(a)) for b, a in doc["factor"])),
        )


def verify_term(g: Graph, t: TermBound) -> bool:
    """True iff the witness satisfies its premises on g and the claimed
    bound does not exceed what the premises entitle."""
    a_set, b_set = set(t.a_set), set(t.b_set)
    if t.kind == TERM_SLACK:
        return t.bound <= 0

    if t.kind == TERM_COND:
        c_set = set(t.c_set or ())
        if not is_independent(g, c_set):
            return False
        if not is_qualified(g, a_set | c_set):
            return False
        if not is_qualified(g, b_set | c_set):
            return False
        return t.bound <= 1

    if t.kind in (TERM_MATCHING, TERM_VALUE):
        plus = 1 if t.kind == TERM_VALUE else 0
        if a_set & b_set:
            return False
        if not b_set:
            # empty independent side: the matching bound degenerates to
            # 0, the value bound still needs qualified A for its +1
            if plus and not is_qualified(g, a_set):
                return False
            return t.bound <= plus
        if not is_independent(g, b_set):
            return False
        if not is_qualified(g, a_set):
            return False
        if t.factor is None:
            return False
        if not verify_one_factor(g, sorted(b_set), sorted(a_set), t.factor):
            return False
        return t.bound <= len(b_set) + plus

    if t.kind == TERM_MATCHING_PLUS:
        if a_set & b_set:
            return False
        if not is_qualified(g, a_set) or not is_qualified(g, b_set):
            return False
        prime = set(t.b_prime or ())
        if not prime <= b_set:
            return False
        if not is_independent(g, prime):
            return False
        if t.factor is None:
            return False
        if not verify_one_factor(g, sorted(prime), sorted(a_set), t.factor):
            return False
        return t.bound <= len(prime) + 1

    return False


@dataclass(frozen=True)
class Certificate:
    """Node of the proof tree.

    kind "gap" claims sum_{v in vertices} f(v) - f(vertices) >= total;
    kind "sum" (the root) claims sum_{v in vertices} f(v) >= total.
    blocks are the decomposition sets in order; terms align 1:1 with the
    telescoping pairs on gap nodes and carry one value witness per block
    on sum nodes; children prove the per-block recursion.
    """

    kind: str
    level: int
    vertices: tuple
    blocks: tuple
    terms: tuple
    children: tuple
    total: object

    def to_doc(self) -> dict:
        return {
            "kind": self.kind,
            "level": self.level,
            "vertices": list(self.vertices),
            "blocks": [list(b) for b in self.blocks],
            "terms": [t.to_doc() for t in self.terms],
            "children": [c.to_doc() for c in self.children],
            "subtotal": ratio_str(self.total),
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "Certificate":
        return cls(
            kind=doc["kind"],
            level=int(doc["level"]),
            vertices=tuple(int(v) for v in doc["vertices"]),
            blocks=tuple(tuple(int(v) for v in b) for b in doc["blocks"]),
            terms=tuple(TermBound.from_doc(t) for t in doc["terms"]),
            children=tuple(cls.from_doc(c) for c in doc["children"]),
            total=parse_ratio(doc["subtotal"]),
        )


def certificate_to_json(cert: Certificate) -> str:
    return json.dumps(cert.to_doc(), sort_keys=True,
                      separators=(",", ":")) + "\n"


def certificate_from_json(text: str) -> Certificate:
    try:
        return Certificate.from_doc(json.loads(text))
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise BadSize("malformed certificate document", reason=str(exc))


def _cycle_order(g: Graph, lo: int, hi: int):
    """Vertices of the induced cycle on [lo, hi) in traversal order."""
    inside = lambda v: lo <= v < hi
    start = lo
    prev, cur = None, start
    order = []
    while True:
        order.append(cur)
        nxt = [w for w in g.neighbors(cur) if inside(w) and w != prev]
        if not nxt:
            raise StructureUnknown("base range is not a cycle", at=cur)
        prev, cur = cur, min(nxt)
        if cur == start:
            break
    if len(order) != hi - lo:
        raise StructureUnknown("base range is not a single cycle",
                               lo=lo, hi=hi, reached=len(order))
    return order


def _junction(g: Graph, a_set, lo1, hi1, lo2, hi2):
    """Junction matching between consecutive ranges, as (b, a) pairs
    from the first range's B side into the second range's A side."""
    pairs = []
    for u in range(lo1, hi1):
        for v in g.neighbors(u):
            if lo2 <= v < hi2:
                if u in a_set or v not in a_set:
                    raise WitnessFailure(
                        "junction edge with unexpected orientation",
                        edge=(u, v))
                pairs.append((u, v))
    return tuple(sorted(pairs))


def _base_gap(g: Graph, lo: int, hi: int) -> Certificate:
    """Cycle-level gap certificate: total |V| - 1."""
    order = _cycle_order(g, lo, hi)
    n = len(order)
    if n < 6 or n % 2:
        raise StructureUnknown("base cycle length unusable", n=n)
    c = order
    blocks = tuple((v,) for v in c)
    terms = [
        TermBound(TERM_SLACK, (c[0],), (c[1],), R(0)),
        TermBound(TERM_MATCHING, tuple(sorted(c[:2])), (c[2],), R(1),
                  factor=OneFactor(((c[2], c[1]),))),
        TermBound(TERM_MATCHING_PLUS, tuple(sorted(c[:3])),
                  tuple(sorted(c[3:])), R(3),
                  b_prime=tuple(sorted((c[3], c[n - 1]))),
                  factor=OneFactor(((c[3], c[2]), (c[n - 1], c[0])))),
        TermBound(TERM_SLACK, (c[3],), (c[4],), R(0)),
    ]
    for k in range(5, n):
        terms.append(
            TermBound(TERM_MATCHING, tuple(sorted(c[3:k])), (c[k],), R(1),
                      factor=OneFactor(((c[k], c[k - 1]),))))
    total = sum((t.bound for t in terms), R(0))
    return Certificate("gap", 2, tuple(range(lo, hi)), blocks, tuple(terms),
                       (), total)


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _side(rng_lo, rng_hi, a_set, want_a):
    return tuple(v for v in range(rng_lo, rng_hi)
                 if (v in a_set) == want_a)


def _gap_cert(g: Graph, a_set, sizes, lo: int) -> Certificate:
    """Gap certificate for the member on [lo, lo + prod(sizes)) built
    with the given size history."""
    level = len(sizes) + 1
    if level == 2:
        return _base_gap(g, lo, lo + sizes[0])
    s = _prod(sizes[:-1])
    m = sizes[-1]
    if m < 5:
        raise BadSize("junction level too small for the identity", got=m)
    ranges = [(lo + i * s, lo + (i + 1) * s) for i in range(m)]
    junc = [
        _junction(g, a_set, *ranges[i], *ranges[(i + 1) % m])
        for i in range(m)
    ]
    blocks = tuple(tuple(range(r[0], r[1])) for r in ranges)

    def rev(pairs):
        return OneFactor(tuple(sorted((a, b) for b, a in pairs)))

    def a_side(i):
        return _side(*ranges[i], a_set, True)

    def b_side(i):
        return _side(*ranges[i], a_set, False)

    def union(seq):
        out = []
        for b in seq:
            out.extend(b)
        return tuple(sorted(out))

    half = R(s, 2) + 1
    terms = [
        TermBound(TERM_MATCHING_PLUS, blocks[0], blocks[1], half,
                  b_prime=a_side(1), factor=rev(junc[0])),
        TermBound(TERM_MATCHING_PLUS, union(blocks[:2]), blocks[2], half,
                  b_prime=a_side(2), factor=rev(junc[1])),
        TermBound(TERM_MATCHING_PLUS, union(blocks[:3]), union(blocks[3:]),
                  R(s + 1),
                  b_prime=tuple(sorted(a_side(3) + b_side(m - 1))),
                  factor=OneFactor(tuple(sorted(
                      tuple((a, b) for b, a in junc[2])
                      + junc[m - 1])))),
    ]
    for k in range(4, m):
        terms.append(
            TermBound(TERM_MATCHING_PLUS, union(blocks[3:k]), blocks[k],
                      half, b_prime=a_side(k), factor=rev(junc[k - 1])))
    children = tuple(_gap_cert(g, a_set, sizes[:-1], r[0]) for r in ranges)
    total = sum((t.bound for t in terms), R(0)) + sum(
        (ch.total for ch in children), R(0))
    return Certificate("gap", level, tuple(range(lo, lo + s * m)), blocks,
                       tuple(terms), children, total)


def _verify_tree(g: Graph, node: Certificate):
    for idx, t in enumerate(node.terms):
        if not verify_term(g, t):
            raise WitnessFailure("certificate term failed verification",
                                 level=node.level, term=idx)
    for ch in node.children:
        _verify_tree(g, ch)


def certify_sum_bound(member) -> Certificate:
    """Proof tree for sum_v f(v) >= (d+1)/2 * |V| on a family member.

    Witnesses come from the recursion layout (copy ranges, junction
    matchings, cycle order), never from search. Every term is verified
    before the certificate is returned.
    """
    g = member.graph
    sizes = tuple(member.part_sizes)
    d = member.d
    if d != len(sizes) + 1:
        raise LevelMismatch("level does not match size history", d=d,
                            sizes=list(sizes))
    if g.n != _prod(sizes):
        raise StructureUnknown("vertex count is not the size product",
                               n=g.n)
    a_set = set(member.bipartition.a_side)

    if d == 2:
        order = _cycle_order(g, 0, g.n)
        n = g.n
        c = order
        blocks = []
        terms = []
        for k in range(0, n, 2):
            pair = tuple(sorted((c[k], c[k + 1])))
            outer = tuple(sorted((c[(k - 1) % n], c[(k + 2) % n])))
            blocks.append(pair)
            terms.append(
                TermBound(TERM_VALUE, pair, outer, R(3),
                          factor=OneFactor(((c[(k - 1) % n], c[k]),
                                            (c[(k + 2) % n], c[k + 1])))))
        total = sum((t.bound for t in terms), R(0))
        root = Certificate("sum", 2, tuple(range(n)), tuple(blocks),
                           tuple(terms), (), total)
    else:
        s = _prod(sizes[:-1])
        m = sizes[-1]
        if m < 5:
            raise BadSize("junction level too small for the identity",
                          got=m)
        ranges = [(i * s, (i + 1) * s) for i in range(m)]
        junc = [
            _junction(g, a_set, *ranges[i], *ranges[(i + 1) % m])
            for i in range(m)
        ]
        blocks = tuple(tuple(range(r[0], r[1])) for r in ranges)
        terms = []
        for i in range(m):
            nxt_a = _side(*ranges[(i + 1) % m], a_set, True)
            prv_b = _side(*ranges[(i - 1) % m], a_set, False)
            pairs = tuple(sorted(
                tuple((a, b) for b, a in junc[i]) + junc[(i - 1) % m]))
            terms.append(
                TermBound(TERM_VALUE, blocks[i],
                          tuple(sorted(nxt_a + prv_b)), R(s + 1),
                          factor=OneFactor(pairs)))
        children = tuple(
            _gap_cert(g, a_set, sizes[:-1], r[0]) for r in ranges)
        total = sum((t.bound for t in terms), R(0)) + sum(
            (ch.total for ch in children), R(0))
        root = Certificate("sum", d, tuple(range(g.n)), blocks,
                           tuple(terms), children, total)

    want = R((d + 1) * g.n, 2)
    if root.total != want:
        raise WitnessFailure("certificate arithmetic off target",
                             total=ratio_str(root.total),
                             want=ratio_str(want))
    _verify_tree(g, root)
    return root


def _blocks_partition(node: Certificate) -> bool:
    seen = set()
    for b in node.blocks:
        bs = set(b)
        if seen & bs:
            return False
        seen |= bs
    return seen == set(node.vertices)


def _identity_probe(blocks, pairs, trials, rng) -> bool:
    """Numeric re-check of the telescoping identity on these blocks."""
    needed = set()
    fb = [frozenset(b) for b in blocks]
    full = frozenset().union(*fb)
    needed.add(full)
    needed.update(fb)
    for a, b in pairs:
        needed.add(frozenset(a))
        needed.add(frozenset(b))
        needed.add(frozenset(a) | frozenset(b))
    for _ in range(trials):
        f = SetFunction()
        for sset in needed:
            f.set(sset, R(rng.randrange(-10**9, 10**9),
                          rng.randrange(1, 10**4)))
        lhs = sum((f.value(b) for b in fb), R(0)) - f.value(full)
        rhs = sum((eval_I(f, a, b) for a, b in pairs), R(0))
        if lhs != rhs:
            return False
    return True


def audit_explain(g: Graph, cert: Certificate, trials: int = 32,
                  seed=None):
    """Re-verify a certificate independently of how it was built.

    Returns (ok, reason): every term witness re-checked against g, the
    telescoping identity re-derived structurally and probed numerically
    at every gap node, block partitions confirmed, and the arithmetic
    re-summed exactly. reason names the first failing node.
    """
    rng = random.Random(seed)

    def walk(node, path):
        tot = sum((t.bound for t in node.terms), R(0)) + sum(
            (ch.total for ch in node.children), R(0))
        if tot != node.total:
            return False, f"{path}: subtotal mismatch"
        for idx, t in enumerate(node.terms):
            if not verify_term(g, t):
                return False, f"{path}: term {idx} fails verification"
        if not _blocks_partition(node):
            return False, f"{path}: blocks do not partition the vertices"

        if node.kind == "gap":
            try:
                pairs = fact1_terms(node.blocks)
            except BadSize:
                return False, f"{path}: too few blocks for the identity"
            if len(node.terms) != len(pairs):
                return False, f"{path}: term count differs from identity"
            for idx, (t, (pa, pb)) in enumerate(zip(node.terms, pairs)):
                got = {frozenset(t.a_set), frozenset(t.b_set)}
                want = {frozenset(pa), frozenset(pb)}
                if got != want:
                    return False, f"{path}: term {idx} not an identity pair"
            if not _identity_probe(node.blocks, pairs, trials, rng):
                return False, f"{path}: identity probe failed"
            if node.children:
                if len(node.children) != len(node.blocks):
                    return False, f"{path}: child count differs from blocks"
                for i, ch in enumerate(node.children):
                    if ch.kind != "gap":
                        return False, f"{path}: child {i} is not a gap node"
                    if set(ch.vertices) != set(node.blocks[i]):
                        return False, f"{path}: child {i} block mismatch"
            elif any(len(b) != 1 for b in node.blocks):
                return False, f"{path}: leaf blocks must be singletons"
        elif node.kind == "sum":
            if len(node.terms) != len(node.blocks):
                return False, f"{path}: need one value term per block"
            for i, t in enumerate(node.terms):
                if t.kind != TERM_VALUE:
                    return False, f"{path}: term {i} is not a value bound"
                if set(t.a_set) != set(node.blocks[i]):
                    return False, f"{path}: term {i} not on its block"
            if node.children:
                if len(node.children) != len(node.blocks):
                    return False, f"{path}: child count differs from blocks"
                for i, ch in enumerate(node.children):
                    if ch.kind != "gap":
                        return False, f"{path}: child {i} is not a gap node"
                    if set(ch.vertices) != set(node.blocks[i]):
                        return False, f"{path}: child {i} block mismatch"
        else:
            return False, f"{path}: unknown node kind {node.kind!r}"

        for i, ch in enumerate(node.children):
            ok, why = walk(ch, f"{path}.{i}")
            if not ok:
                return False, why
        return True, "ok"

    return walk(cert, "root")


def audit_certificate(g: Graph, cert: Certificate, trials: int = 32,
                      seed=None) -> bool:
    """Boolean form of audit_explain."""
    ok, _ = audit_explain(g, cert, trials=trials, seed=seed)
    return ok
