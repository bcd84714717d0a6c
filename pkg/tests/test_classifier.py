import random

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from wittkit import (
    BlockGroupElement,
    Cocycle,
    Derivation,
    NumberField,
    RawSpec,
    StandardSpec,
    Subgroup,
    WittElement,
    apply_derivation,
    block_act,
    build_sigma,
    bracket,
    decide_isomorphic,
    standard_form,
    structure_key,
    trivialize_cocycle,
    verify_homomorphism,
)
from wittkit.classifier import untwisted
from wittkit.errors import PreconditionViolation
from wittkit.field_lattice import orbit_decide
from wittkit.sampling import random_block_element, random_element, random_witt

from conftest import unit_lattice

QQ_ = NumberField.of([0, 1])
K2 = NumberField.of([-2, 0, 1])


# -- cocycle trivialisation

def test_trivial_cocycle_gives_one(Q):
    triv = trivialize_cocycle(Cocycle.trivial(), unit_lattice(2, Q))
    assert all(triv((a, b)) == 1 for a in range(-3, 4) for b in range(-3, 4))


def test_rank_one_example(Q):
    triv = trivialize_cocycle(Cocycle([(Q(2), [[1]])]), unit_lattice(1, Q))
    for a in range(-5, 6):
        assert triv((a,)) == Q(2) ** (-(a * (a - 1) // 2))
        for b in range(-5, 6):
            assert triv((a,)) * triv((b,)) / triv((a + b,)) == Q(2) ** (a * b)


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=2, max_size=2),
       st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
def test_coboundary_identity(pts, s00, s01, s11):
    f = Cocycle([(QQ_(3), [[s00, s01], [s01, s11]]), (QQ_(mpq(-2, 5)), [[1, 0], [0, 0]])])
    triv = trivialize_cocycle(f, unit_lattice(2, QQ_))
    a, b = pts
    ab = tuple(x + y for x, y in zip(a, b))
    assert f.value(a, b) * triv(ab) == triv(a) * triv(b)


def test_product_of_base_points_multiplies(Q):
    s1, s2 = [[1, 2], [2, 0]], [[0, 1], [1, 3]]
    both = trivialize_cocycle(Cocycle([(Q(2), s1), (Q(5), s2)]), unit_lattice(2, Q))
    one = trivialize_cocycle(Cocycle([(Q(2), s1)]), unit_lattice(2, Q))
    two = trivialize_cocycle(Cocycle([(Q(5), s2)]), unit_lattice(2, Q))
    for a in [(1, 0), (2, -3), (-1, 4)]:
        assert both(a) == one(a) * two(a)


def test_transport_is_algebra_isomorphism(K):
    spec = StandardSpec(1, 1, 1, unit_lattice(2, K), Cocycle([(K([1, 1]), [[2, 1], [1, -1]])]))
    plain = untwisted(spec)
    triv = trivialize_cocycle(spec.cocycle, spec.gamma)
    rng = random.Random(1)
    for _ in range(60):
        u, v = random_element(spec, rng), random_element(spec, rng)
        assert triv.transport(u * v, plain) == triv.transport(u, plain) * triv.transport(v, plain)
        d = Derivation.standard(rng.randint(1, 3))
        assert triv.transport(apply_derivation(d, u), plain) == apply_derivation(d, triv.transport(u, plain))


# -- standard form

def test_standard_form_examples(Q):
    spec, _ = standard_form(RawSpec(1, 0, unit_lattice(1, Q)))
    assert spec.triple == (0, 1, 0)
    spec, rec = standard_form(RawSpec(0, 2, Subgroup([[1, 2]], Q, 2)))
    assert spec.triple == (0, 0, 1) and spec.gamma == unit_lattice(1, Q)
    # d*_2 = 2 d*_1 on A: both raw derivations map into the single standard one
    assert rec.map_derivation(2) == Derivation.combination([Q(2) * rec.map_derivation(1).coeffs[0]])
    # already standard: l1 = 1 pure variable, one mixed, one pure grading
    raw = RawSpec(2, 1, Subgroup([[0, 1, 0], [0, 0, 1]], Q, 3))
    spec, _ = standard_form(raw)
    assert spec.triple == (1, 1, 1)


def test_standard_form_idempotent_on_standard_specs(K):
    rng = random.Random(2)
    cases = [
        StandardSpec(1, 1, 1, unit_lattice(2, QQ_)),
        StandardSpec(0, 1, 1, Subgroup([[1, 0], [0, 1], [K.theta, 0]], K, 2)),
        StandardSpec(2, 0, 1, unit_lattice(1, QQ_), Cocycle([(QQ_(3), [[2]])])),
        StandardSpec(1, 0, 0, Subgroup.zero(QQ_, 0)),
    ]
    for s in cases:
        s2, _ = standard_form(s.as_raw())
        assert s2.triple == s.triple
        if s.l2 + s.l3:
            assert orbit_decide(s.gamma, s2.gamma, s.l2, s.l3).__class__.__name__ == "Equivalent"
        assert s2.cocycle.is_trivial == s.cocycle.is_trivial


def _random_raw(rng, field):
    k1, k2 = rng.randint(0, 2), rng.randint(0, 2)
    if k1 + k2 == 0:
        k1 = 1
    k = k1 + k2
    # Gamma: random integer rows, optionally with a dependent coordinate and a zero coordinate
    rows = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(rng.randint(1, k + 1))]
    if k >= 2 and rng.random() < 0.4:
        for r in rows:
            r[-1] = 2 * r[0]
    if k1 and rng.random() < 0.3:
        for r in rows:
            r[0] = 0
    mixing = [[rng.randint(-2, 2) for _ in range(k1)] for _ in range(k2)]
    gamma = Subgroup(rows, field, k)
    cocycle = None
    if gamma.rank and rng.random() < 0.3:
        n = gamma.rank
        s = [[0] * n for _ in range(n)]
        i, j = rng.randrange(n), rng.randrange(n)
        s[i][j] = s[j][i] = rng.randint(1, 2)
        cocycle = Cocycle([(field(rng.choice([2, 3, mpq(1, 2)])), s)])
    return RawSpec(k1, k2, gamma, mixing, cocycle)


def test_standard_form_record_is_an_isomorphism():
    rng = random.Random(3)
    done = 0
    while done < 30:
        raw = _random_raw(rng, QQ_)
        try:
            spec, rec = standard_form(raw)
        except PreconditionViolation:
            continue    # all raw derivations vanish
        done += 1
        assert spec.gamma.is_nondegenerate()
        assert sum(spec.triple) == spec.ell and spec.l1 + spec.l2 == raw.k1
        for _ in range(8):
            u, v = random_element(raw, rng), random_element(raw, rng)
            assert rec.map_element(u * v) == rec.map_element(u) * rec.map_element(v)
            for i in range(1, raw.k + 1):
                lhs = rec.map_element(apply_derivation(Derivation.standard(i), u))
                assert lhs == apply_derivation(rec.map_derivation(i), rec.map_element(u))
        # the raw derivations span the new D
        from wittkit.field_lattice.matrices import rank
        assert rank([list(r) for r in rec.derivation_matrix], spec.field) == spec.ell


def test_standard_form_rejects_empty_derivation_set(Q):
    with pytest.raises(PreconditionViolation):
        standard_form(RawSpec(0, 1, Subgroup.zero(Q, 1)))


# -- structure keys

def test_structure_key_examples(Q, K):
    a = structure_key(StandardSpec(1, 0, 0, Subgroup.zero(Q, 0)))
    b = structure_key(StandardSpec(0, 0, 1, unit_lattice(1, Q)))
    assert a != b
    z = structure_key(StandardSpec(0, 0, 1, unit_lattice(1, K)))
    zt = structure_key(StandardSpec(0, 0, 1, Subgroup([[1], [K.theta]], K, 1)))
    assert z != zt and (z.invariants[0], zt.invariants[0]) == (1, 2)
    assert z.complete and not zt.complete and zt.representative == "invariants-only"


def test_structure_key_is_orbit_invariant(K):
    rng = random.Random(4)
    gammas = [
        (1, 1, Subgroup([[1, 0], [0, 1], [K.theta, 0]], K, 2)),
        (0, 2, unit_lattice(2, K)),
        (2, 0, Subgroup([[1, 0], [0, 1], [0, K.theta]], K, 2)),
        (1, 1, Subgroup([[1, 0], [0, 1], [0, K.theta]], K, 2)),
    ]
    for k in range(100):
        l2, l3, gamma = gammas[k % 4]
        s = StandardSpec(k % 2, l2, l3, gamma)
        g = random_block_element(l2, l3, K, rng)
        assert structure_key(s) == structure_key(StandardSpec(k % 2, l2, l3, block_act(g, gamma)))


# -- witnesses

def test_identity_witness(spec111, rng):
    w = build_sigma(BlockGroupElement.identity(1, 1, spec111.field), spec111, spec111)
    for _ in range(20):
        u = random_witt(spec111, rng)
        assert w(u) == u


def test_scaling_witness(Q):
    lam = Q(mpq(3, 2))
    s = StandardSpec(0, 0, 1, unit_lattice(1, Q))
    g = BlockGroupElement([], [[]], [[lam]], Q, 0, 1)
    s2 = StandardSpec(0, 0, 1, block_act(g, s.gamma))
    w = build_sigma(g, s, s2)
    for a in range(-3, 4):
        u = WittElement.basis(s, 1, s.x((a,)))
        # x^alpha d  ->  x^(alpha / lam) (lam d')
        assert w(u) == WittElement.basis(s2, 1, s2.x((Q(a) / lam,))) * lam
    assert verify_homomorphism(w, 50, seed=1).passed


def test_generic_witness_and_inverse(K):
    rng = random.Random(5)
    gamma = Subgroup([[1, 0], [0, 1], [0, K.theta]], K, 2)
    for cocycle in (None, Cocycle([(K(2), [[1, 0, 0], [0, 0, 1], [0, 1, 0]])])):
        s = StandardSpec(1, 1, 1, gamma, cocycle)
        for _ in range(3):
            g = random_block_element(1, 1, K, rng)
            s2 = StandardSpec(1, 1, 1, block_act(g, gamma), cocycle)
            w = build_sigma(g, s, s2)
            rep = verify_homomorphism(w, 100, seed=7)
            assert rep.passed and rep.samples == 100
            back = w.inverse()
            for _ in range(10):
                u = random_witt(s, rng)
                assert back(w(u)) == u


def test_corrupted_witness_is_caught(Q):
    s = StandardSpec(0, 1, 1, unit_lattice(2, Q))
    g = BlockGroupElement([[2]], [[1]], [[1]], Q)
    s2 = StandardSpec(0, 1, 1, block_act(g, s.gamma))
    bad = build_sigma(g, s, s2).corrupted()
    rep = verify_homomorphism(bad, 100, seed=0)
    assert not rep.passed
    u, v, lhs, rhs = rep.counterexample
    assert bad(bracket(u, v)) == lhs != rhs == bracket(bad(u), bad(v))


def test_zero_samples_flagged_untested(spec111):
    w = build_sigma(BlockGroupElement.identity(1, 1, spec111.field), spec111, spec111)
    rep = verify_homomorphism(w, 0)
    assert rep.passed and rep.untested and rep.samples == 0


def test_build_sigma_preconditions(Q):
    s = StandardSpec(0, 0, 1, unit_lattice(1, Q))
    g = BlockGroupElement([], [[]], [[2]], Q, 0, 1)
    with pytest.raises(PreconditionViolation):
        build_sigma(g, s, s)
    with pytest.raises(PreconditionViolation):
        build_sigma(g, s, StandardSpec(1, 0, 1, unit_lattice(1, Q)))


# -- decisions

def test_decide_examples(Q, K):
    s = StandardSpec(0, 0, 1, unit_lattice(1, Q))
    res = decide_isomorphic(s, s)
    assert res.name == "EQUIVALENT" and res.method == "identity"
    assert res.report.samples >= 100
    res = decide_isomorphic(s, StandardSpec(0, 0, 1, Subgroup([[2]], Q, 1)))
    assert res.name == "EQUIVALENT" and res.witness.g.C == ((Q(mpq(1, 2)),),)
    res = decide_isomorphic(StandardSpec(1, 0, 0, Subgroup.zero(Q, 0)), s)
    assert res.name == "INEQUIVALENT" and res.reason == "triple"
    res = decide_isomorphic(StandardSpec(0, 0, 1, unit_lattice(1, K)), StandardSpec(0, 0, 1, Subgroup([[1], [K.theta]], K, 1)))
    assert res.name == "INEQUIVALENT" and res.reason == "zrank" and (res.left, res.right) == (1, 2)


def test_decide_is_symmetric(K):
    rng = random.Random(6)
    for gamma, l2, l3 in [(Subgroup([[1, 0], [0, 1], [K.theta, 0]], K, 2), 1, 1),
                          (Subgroup([[1, 0], [0, 1], [0, K.theta]], K, 2), 1, 1),
                          (unit_lattice(2, K), 0, 2)]:
        s = StandardSpec(1, l2, l3, gamma)
        g = random_block_element(l2, l3, K, rng)
        s2 = StandardSpec(1, l2, l3, block_act(g, gamma))
        ab, ba = decide_isomorphic(s, s2), decide_isomorphic(s2, s)
        assert ab.name == ba.name == "EQUIVALENT"
        for _ in range(5):
            u = random_witt(s, rng)
            assert bool(ba.witness(ab.witness(u))) == bool(u)
        assert verify_homomorphism(ba.witness, 30, seed=2).passed
    other = StandardSpec(1, 1, 1, Subgroup([[1, 0], [0, 1], [0, K.theta]], K, 2))
    first = StandardSpec(1, 1, 1, Subgroup([[1, 0], [0, 1], [K.theta, 0]], K, 2))
    assert decide_isomorphic(first, other).name == decide_isomorphic(other, first).name == "INEQUIVALENT"


def test_decide_unknown_on_tiny_budget(Q):
    # two rank-2 lattices in Q^2 related by a g whose search needs more than one candidate
    s = StandardSpec(0, 1, 1, Subgroup([[1, 0], [0, 1]], Q, 2))
    s2 = StandardSpec(0, 1, 1, Subgroup([[3, 0], [1, 5]], Q, 2))
    res = decide_isomorphic(s, s2, budget=0)
    assert res.name in ("EQUIVALENT", "UNKNOWN")
    if res.name == "EQUIVALENT":
        assert res.method in ("identity", "adapted-basis")
