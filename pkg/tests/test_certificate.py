import json
import random
from fractions import Fraction

import pytest

from girthforge.certificate import (
    Certificate,
    SetFunction,
    TermBound,
    audit_certificate,
    audit_explain,
    certificate_from_json,
    certificate_to_json,
    certify_sum_bound,
    check_decomposition_identity,
    eval_I,
    fact1_terms,
    verify_term,
)
from girthforge.errors import BadSize, MissingSubset
from girthforge.family import build_cycle, build_h, build_member
from girthforge.graphs import Graph
from girthforge.rational import R


def test_set_function_access():
    f = SetFunction({frozenset(): R(0), frozenset({1}): R(2)})
    assert f.value(frozenset({1})) == 2
    assert frozenset({1}) in f
    assert frozenset({2}) not in f
    assert len(f) == 2
    with pytest.raises(MissingSubset):
        f.value(frozenset({7}))


def test_eval_i_plain_and_conditional():
    keys = {
        (): 0, (0,): 1, (1,): 1, (2,): 1,
        (0, 1): 2, (0, 2): 2, (1, 2): 2, (0, 1, 2): 2,
    }
    f = SetFunction({frozenset(k): R(v) for k, v in keys.items()})
    # 0 and 1 are independent, both determined together with 2
    assert eval_I(f, (0,), (1,)) == 0
    assert eval_I(f, (0, 1), (2,)) == 1
    assert eval_I(f, (0,), (1,), (2,)) == 1


def test_fact1_terms_structure():
    blocks = [frozenset({i}) for i in range(6)]
    terms = fact1_terms(blocks)
    assert terms[0] == ((0,), (1,))
    assert terms[1] == ((0, 1), (2,))
    assert terms[2] == ((0, 1, 2), (3, 4, 5))
    assert terms[3] == ((3,), (4,))
    assert terms[4] == ((3, 4), (5,))
    assert len(terms) == 5
    with pytest.raises(BadSize):
        fact1_terms(blocks[:4])


def test_fact1_identity_against_local_oracle():
    # same identity, evaluated here from scratch with Fraction arithmetic
    rng = random.Random(2718)
    for n in (5, 6, 7, 9):
        blocks = [frozenset({i}) for i in range(n)]
        terms = fact1_terms(blocks)
        needed = {frozenset(), frozenset(range(n))}
        for a, b in terms:
            needed |= {frozenset(a), frozenset(b), frozenset(a) | frozenset(b)}
        for i in range(n):
            needed.add(frozenset(range(i + 1)))
        vals = {s: Fraction(rng.randrange(-10 ** 6, 10 ** 6),
                            rng.randrange(1, 100)) for s in needed}
        vals[frozenset()] = Fraction(0)
        lhs = sum(vals[frozenset({i})] for i in range(n))
        lhs -= vals[frozenset(range(n))]
        rhs = sum(vals[frozenset(a)] + vals[frozenset(b)]
                  - vals[frozenset(a) | frozenset(b)] for a, b in terms)
        assert lhs == rhs
        f = SetFunction({s: R(v.numerator, v.denominator)
                         for s, v in vals.items()})
        lib = sum(eval_I(f, a, b) for a, b in terms)
        assert lib == R(lhs.numerator, lhs.denominator)


def test_check_decomposition_identity():
    assert check_decomposition_identity(5, trials=50, seed=0)
    assert check_decomposition_identity(8, trials=20, seed=1)
    with pytest.raises(BadSize):
        check_decomposition_identity(4, trials=1, seed=0)


def test_verify_term_cond(c6):
    good = TermBound("cond", (0,), (2,), R(1), c_set=(1,))
    assert verify_term(c6, good)
    assert not verify_term(c6, TermBound("cond", (0,), (2,), R(2),
                                         c_set=(1,)))
    # conditioning set must be independent
    assert not verify_term(c6, TermBound("cond", (0,), (3,), R(1),
                                         c_set=(1, 2)))
    # both unions must contain an edge
    assert not verify_term(c6, TermBound("cond", (0,), (2,), R(1),
                                         c_set=(4,)))


def test_verify_term_slack(c6):
    assert verify_term(c6, TermBound("slack", (0,), (2,), R(0)))
    assert verify_term(c6, TermBound("slack", (0,), (2,), R(-1)))
    assert not verify_term(c6, TermBound("slack", (0,), (2,), R(1)))


def test_verify_term_matching_and_value(c6, c6_member):
    cert = certify_sum_bound(c6_member)
    base = cert.terms[0]
    assert base.kind == "value" and base.bound == 3
    assert verify_term(c6, base)
    matching = TermBound("matching", base.a_set, base.b_set, R(2),
                         factor=base.factor)
    assert verify_term(c6, matching)
    # matching caps at |B|, value at |B|+1
    assert not verify_term(c6, TermBound("matching", base.a_set, base.b_set,
                                         R(3), factor=base.factor))
    assert not verify_term(c6, TermBound("value", base.a_set, base.b_set,
                                         R(4), factor=base.factor))
    # B must stay independent
    assert not verify_term(c6, TermBound("value", (0, 1), (2, 3), R(3),
                                         factor=base.factor))
    # A must be qualified
    assert not verify_term(c6, TermBound("value", (0, 2), (1, 4), R(3),
                                         factor=base.factor))


def test_verify_term_empty_b(c6):
    assert verify_term(c6, TermBound("matching", (0, 1), (), R(0),
                                     factor=None))
    assert not verify_term(c6, TermBound("matching", (0, 1), (), R(1),
                                         factor=None))
    assert verify_term(c6, TermBound("value", (0, 1), (), R(1), factor=None))
    assert not verify_term(c6, TermBound("value", (0, 2), (), R(1),
                                         factor=None))


def test_verify_term_matching_plus(c6):
    from girthforge.graphs import OneFactor
    t = TermBound("matching_plus", (0, 1), (2, 3), R(2), b_prime=(2,),
                  factor=OneFactor(((2, 1),)))
    assert verify_term(c6, t)
    assert not verify_term(c6, TermBound("matching_plus", (0, 1), (2, 3),
                                         R(3), b_prime=(2,),
                                         factor=OneFactor(((2, 1),))))
    # B' must sit inside B
    assert not verify_term(c6, TermBound("matching_plus", (0, 1), (2, 3),
                                         R(2), b_prime=(4,),
                                         factor=OneFactor(((4, 3),))))


def test_certify_cycle_total(c6_member):
    cert = certify_sum_bound(c6_member)
    assert cert.total == 9
    assert cert.kind == "sum"
    assert [t.bound for t in cert.terms] == [3, 3, 3]
    assert not cert.children
    union = sorted(v for b in cert.blocks for v in b)
    assert union == list(range(6))


def test_certify_three_level_member(g3_member):
    cert = certify_sum_bound(g3_member)
    assert cert.total == 60
    assert cert.total == R(3 + 1) * g3_member.graph.n / 2
    assert len(cert.terms) == 5 and len(cert.children) == 5
    for term in cert.terms:
        assert verify_term(g3_member.graph, term)
    for child in cert.children:
        assert child.kind == "gap"
        assert child.total == 5
        # two slack terms where adjacent singletons admit no edge bound
        assert [t.bound for t in child.terms] == [0, 1, 3, 0, 1]


def test_certify_rejects_small_junction_level(c6_member):
    member = build_h(2, c6_member, {0: 3, 2: 5, 4: 1})
    with pytest.raises(BadSize):
        certify_sum_bound(member)


def test_certificate_json_round_trip(g3_member):
    cert = certify_sum_bound(g3_member)
    text = certificate_to_json(cert)
    again = certificate_from_json(text)
    assert again == cert
    assert certificate_to_json(again) == text
    assert audit_certificate(g3_member.graph, again, trials=4, seed=0)


def test_certificate_from_json_rejects_garbage():
    with pytest.raises(BadSize):
        certificate_from_json("{}")
    with pytest.raises(BadSize):
        certificate_from_json("not json at all")


def test_audit_passes_on_honest_certificates(c6_member, g3_member):
    for member in (c6_member, g3_member):
        cert = certify_sum_bound(member)
        ok, reason = audit_explain(member.graph, cert, trials=8, seed=3)
        assert ok and reason == "ok"


def test_audit_rejects_missing_edge(g3_member):
    cert = certify_sum_bound(g3_member)
    b, a = cert.terms[0].factor.pairs[0]
    dropped = tuple(sorted((a, b)))
    g2 = Graph(g3_member.graph.n,
               [e for e in g3_member.graph.edges if e != dropped])
    ok, reason = audit_explain(g2, cert, trials=4, seed=0)
    assert not ok
    assert reason == "root: term 0 fails verification"
    assert not audit_certificate(g2, cert, trials=4, seed=0)


def test_audit_rejects_inflated_bound(g3_member):
    cert = certify_sum_bound(g3_member)
    doc = json.loads(certificate_to_json(cert))
    doc["terms"][0]["bound"] = "8"
    stale = certificate_from_json(json.dumps(doc))
    ok, reason = audit_explain(g3_member.graph, stale, trials=4, seed=0)
    assert not ok and reason == "root: subtotal mismatch"
    doc["subtotal"] = "61"
    fixed = certificate_from_json(json.dumps(doc))
    ok, reason = audit_explain(g3_member.graph, fixed, trials=4, seed=0)
    assert not ok and reason == "root: term 0 fails verification"


def test_audit_rejects_tampered_blocks(g3_member):
    cert = certify_sum_bound(g3_member)
    doc = json.loads(certificate_to_json(cert))
    doc["children"][0]["blocks"][0] = doc["children"][0]["blocks"][0][:-1]
    bad = certificate_from_json(json.dumps(doc))
    ok, reason = audit_explain(g3_member.graph, bad, trials=4, seed=0)
    assert not ok
    assert reason == "root.0: blocks do not partition the vertices"


def test_audit_is_deterministic(g3_member):
    cert = certify_sum_bound(g3_member)
    first = audit_explain(g3_member.graph, cert, trials=8, seed=11)
    second = audit_explain(g3_member.graph, cert, trials=8, seed=11)
    assert first == second


def test_term_doc_round_trip(g3_member):
    cert = certify_sum_bound(g3_member)
    for term in cert.terms + cert.children[0].terms:
        assert TermBound.from_doc(term.to_doc()) == term
