import random

import pytest

from parcross import (Context, FinitePoint, FreeGroup, RelationSet, alpha, char, cp_equal_mod, instantiate,
                      monomial, omega_contains, omega_violations, pi, proj, vanishes_on_omega, word_image, zero)
from parcross.coordinate_algebra import consistent_assignments
from parcross.errors import EnumerationCapError, GroupError
from parcross.expressions import parse_boolfn, parse_point
from parcross.presentations import DirectedGraph, Edge, Matrix01, build_ck, build_graph
from parcross.relations import constraint_system, recording, sample_omega_points

F1 = Context(FreeGroup(["a"]), ("1",))


def random_relation(rng, ctx, max_len=1):
    f = ctx.zero()
    words = ctx.group.ball(max_len)
    for _ in range(rng.randint(1, 3)):
        cs = [(rng.choice(words), rng.randint(0, len(ctx.labels))) for _ in range(rng.randint(0, 2))]
        f = f + monomial(ctx, cs, rng.choice([1, -1, 2]))
    return f


def brute_vanishes(f, R, L):
    """Exhaustive search over every consistent assignment of the universe."""
    ctx = R.ctx
    cons = [alpha(t, r) for t in ctx.group.ball(L) for r in instantiate(R, L)]
    support = set()
    for g in cons + [f]:
        support |= set(g.closed_support())
    for pt in consistent_assignments(ctx, support):
        if all(not c.evaluate(pt) for c in cons) and f.evaluate(pt):
            return False
    return True


def test_exact_against_enumeration():
    rng = random.Random(11)
    checked = 0
    for _ in range(150):
        rels = tuple(random_relation(rng, F1) for _ in range(rng.randint(1, 2)))
        rels = tuple(r for r in rels if r)
        R = RelationSet(F1, rels)
        f = random_relation(rng, F1)
        L = rng.randint(0, 1)
        cons = [alpha(t, r) for t in F1.group.ball(L) for r in rels]
        support = set(f.closed_support())
        for c in cons:
            support |= set(c.closed_support())
        if len(support) > 14:
            continue
        res = vanishes_on_omega(f, R, L)
        assert res.vanishes == brute_vanishes(f, R, L), (rels, f, L)
        if not res.vanishes and f:
            assert f.evaluate(res.witness)
            assert all(not c.evaluate(res.witness) for c in cons)
        checked += 1
    assert checked > 80


def test_exact_against_enumeration_two_generators():
    ctx = Context(FreeGroup(["a", "b"]), ())
    rng = random.Random(12)
    for _ in range(60):
        rels = tuple(r for r in (random_relation(rng, ctx) for _ in range(2)) if r)
        R = RelationSet(ctx, rels)
        f = random_relation(rng, ctx)
        res = vanishes_on_omega(f, R, 0)
        assert res.vanishes == brute_vanishes(f, R, 0)


def test_instantiate_examples():
    ctx = Context(FreeGroup(["a"]), ())
    R = RelationSet(ctx, (char(ctx, (1,)),))
    assert instantiate(R, 5) == list(R.explicit)
    LA = RelationSet(ctx, (), True)
    inst = instantiate(LA, 2)
    a2, ai2 = (1, 1), (-1, -1)
    assert inst == [char(ctx, a2) * char(ctx, (1,)) - char(ctx, a2),
                    char(ctx, ai2) * char(ctx, (-1,)) - char(ctx, ai2)]
    assert instantiate(LA, 0) == []
    F2 = FreeGroup(["a", "b"])
    c2 = Context(F2, ())
    assert len(instantiate(RelationSet(c2, (), True), 2)) == 12
    with pytest.raises(EnumerationCapError):
        instantiate(RelationSet(c2, (), True), 8, cap=1000)


def test_length_additivity_needs_free_group():
    from parcross import FiniteGroup

    with pytest.raises(GroupError):
        RelationSet(Context(FiniteGroup.cyclic(2), ()), (), True)


def test_omega_contains_examples():
    P = build_ck(Matrix01([[1, 1], [1, 0]]), Matrix01.identity(2))
    ctx, R = P.ctx, P.relations
    xi = parse_point(ctx, "e;1")
    res = omega_contains(xi, R)
    assert not res
    target = parse_boolfn(ctx, "1[2^-1] - 1[;1]")
    hits = [v for v in omega_violations(xi, R) if v.relation == target]
    assert hits and hits[0].t == () and hits[0].value == -1

    G = build_graph(DirectedGraph(("v",), (Edge("a", "v", "v"),)))
    assert omega_contains(FinitePoint(G.ctx, [((), 0)]), G.relations)

    c = Context(FreeGroup(["a", "b"]), ())
    bad = FinitePoint(c, [((), 0), ((1, 2), 0)])
    res = omega_contains(bad, RelationSet(c, (), True))
    assert not res and res.value == -1
    assert res.relation == char(c, (1, 2)) * char(c, (1,)) - char(c, (1, 2))


def test_vanish_examples():
    A = Matrix01([[1, 1], [1, 0]])
    for B in (Matrix01.identity(2), Matrix01([[0, 1], [1, 0]])):
        P = build_ck(A, B)
        ctx, R = P.ctx, P.relations
        for f in R.explicit:
            for L in (0, 1):
                assert vanishes_on_omega(f, R, L)
        assert vanishes_on_omega(char(ctx, (), 1) * char(ctx, (), 2), R, 0)
        res = vanishes_on_omega(char(ctx, (), 1), R, 2)
        assert not res and res.verdict == "Unknown"
        assert ((), 1) in res.witness.coords


def test_cp_equal_examples():
    G = build_graph(DirectedGraph(("v",), (Edge("a", "v", "v"),)))
    ctx, R = G.ctx, G.relations
    x = word_image(ctx, "a")
    assert cp_equal_mod(x, x, R, 0)
    for L in (0, 1, 2):
        assert cp_equal_mod(x * x.star(), proj(ctx, "v"), R, L)
    res = cp_equal_mod(pi(ctx, (1,)), zero(ctx), R)
    assert not res and res.g == (1,)


def test_soundness_against_sampled_points():
    """Vanishes verdicts hold at every sampled point of Omega."""
    rng = random.Random(21)
    ctx = Context(FreeGroup(["a", "b"]), ("1",))
    for _ in range(25):
        rels = tuple(r for r in (random_relation(rng, ctx) for _ in range(2)) if r)
        R = RelationSet(ctx, rels, rng.random() < 0.5)
        pts = sample_omega_points(R, random.Random(rng.random()), 20, radius=3)
        for pt in pts:
            assert omega_contains(pt, R)
        for _ in range(5):
            f = random_relation(rng, ctx, 2)
            if vanishes_on_omega(f, R, 1):
                assert all(not f.evaluate(pt) for pt in pts)


def test_monotone_in_bound():
    rng = random.Random(5)
    ctx = Context(FreeGroup(["a"]), ("1",))
    for _ in range(40):
        rels = tuple(r for r in (random_relation(rng, ctx) for _ in range(2)) if r)
        R = RelationSet(ctx, rels, True)
        f = random_relation(rng, ctx)
        verdicts = [vanishes_on_omega(f, R, L).vanishes for L in range(4)]
        for a, b in zip(verdicts, verdicts[1:]):
            assert b or not a


def test_translates_of_relations_vanish():
    P = build_graph(DirectedGraph(("u", "v"), (Edge("a", "u", "v"), Edge("b", "v", "v"))))
    R = P.relations
    L = 1
    for f in R.explicit:
        for t in P.ctx.group.ball(L):
            assert vanishes_on_omega(alpha(t, f), R, L)


def test_constraint_system_invariants():
    P = build_ck(Matrix01([[1, 1], [1, 0]]), Matrix01.identity(2))
    S = constraint_system(P.relations, 1)
    U = set(S.universe)
    for c in S.constraints:
        assert set(c.closed_support()) <= U
    assert ((), 0) in U


def test_recording():
    P = build_ck(Matrix01([[1]]), Matrix01([[1]]))
    with recording() as log:
        vanishes_on_omega(P.relations.explicit[0], P.relations, 0)
    assert len(log) == 1 and log[0][2].vanishes


def test_unitary_example():
    # n = 1, A = B = [1]: the generator becomes unitary
    P = build_ck(Matrix01([[1]]), Matrix01([[1]]))
    ctx, R = P.ctx, P.relations
    one_ = ctx.unit()
    for text in ["1[;1]", "1[1]", "1[1^-1]", "1[1 1]", "1[1^-1 1^-1]"]:
        f = parse_boolfn(ctx, text)
        assert vanishes_on_omega(f - one_, R, 2), text
