import itertools
import random

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, strategies as st

from wittkit.errors import DegenerateSubgroup, DimensionMismatch, ReducibleMinPoly
from wittkit.field_lattice import (
    BlockGroupElement,
    NumberField,
    Subgroup,
    adapted_basis,
    block_act,
    canonical_basis,
    is_irreducible,
    is_nondegenerate,
    member,
    orbit_decide,
    orbit_invariants,
    zrank,
)
from wittkit.field_lattice import polynomials as poly
from wittkit.field_lattice.matrices import QQ, RowSpace, det, inverse, mat_mul, nullspace, rank, rref, solve_left
from wittkit.sampling import random_block_element, random_scalar

from conftest import unit_lattice

X = sympy.Symbol("x")


def _sym(field, s):
    """A scalar as a sympy polynomial in theta (reduced)."""
    return sum(sympy.Rational(int(c.numerator), int(c.denominator)) * X**i for i, c in enumerate(s.coords()))


def _sym_minpoly(field):
    return sum(sympy.Rational(int(c.numerator), int(c.denominator)) * X**i for i, c in enumerate(field.min_poly))


# -- number fields

@pytest.mark.parametrize("coeffs, expected", [
    ([4, 0, 0, 0, 1], False),          # x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
    ([1, 0, -10, 0, 1], True),         # minimal polynomial of sqrt2 + sqrt3
    ([-2, 0, 1], True),
    ([-4, 0, 1], False),
    ([1, 0, 1], True),
    ([-2, 0, 0, 1], True),
    ([0, 0, 1], False),
    (["1/4", 0, 1], True),
    (["-1/4", 0, 1], False),
    ([1, 0, 2, 0, 1], False),          # (x^2+1)^2
])
def test_irreducibility_examples(coeffs, expected):
    assert is_irreducible([mpq(c) if isinstance(c, str) else c for c in coeffs]) is expected


def test_irreducibility_matches_sympy():
    rng = random.Random(11)
    for _ in range(400):
        d = rng.randint(1, 4)
        coeffs = [rng.randint(-6, 6) for _ in range(d)] + [1]
        oracle = sympy.Poly(sum(c * X**i for i, c in enumerate(coeffs)), X).is_irreducible
        assert is_irreducible(coeffs) == oracle, coeffs


def test_reducible_and_high_degree_fields_rejected():
    with pytest.raises(ReducibleMinPoly):
        NumberField.of([-4, 0, 1])
    with pytest.raises(ReducibleMinPoly):
        NumberField.of([-2, 0, 0, 0, 0, 1])
    f = NumberField.of([-2, 0, 0, 0, 0, 1], assume_irreducible=True)
    assert f.degree == 5
    with pytest.raises(ValueError):
        NumberField.of([1, 2])          # not monic


def test_fields_are_interned(K):
    assert NumberField.of(["-2", "0", "1"]) is K
    assert NumberField.rationals() is NumberField.of([0, 1])


def test_scalar_inverse_1000(K):
    rng = random.Random(5)
    fields = [K, NumberField.of([-2, 0, 0, 1]), NumberField.of([1, 0, -10, 0, 1])]
    for k in range(1000):
        f = fields[k % 3]
        a = random_scalar(f, rng, nonzero=True)
        assert a * a.inverse() == f.one


def test_scalar_product_matches_sympy_remainder():
    rng = random.Random(6)
    f = NumberField.of([1, 0, -10, 0, 1])
    mp = _sym_minpoly(f)
    for _ in range(100):
        a, b = random_scalar(f, rng), random_scalar(f, rng)
        want = sympy.rem(sympy.expand(_sym(f, a) * _sym(f, b)), mp, X)
        assert sympy.expand(_sym(f, a * b) - want) == 0


def test_scalar_canonical_form(K):
    a = K([mpq(2, 4), mpq(-3, 6)])
    assert a.coords() == (mpq(1, 2), mpq(-1, 2))
    assert a == K(["1/2", "-1/2"])
    assert K.theta * K.theta == K(2)
    assert str(K(["1/2", 1])) in {"1/2+θ", "1/2 + θ", "1/2+1*θ"} or "1/2" in str(K(["1/2", 1]))
    with pytest.raises(ZeroDivisionError):
        K.zero.inverse()


# -- matrices

def _sym_matrix(m):
    return sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in r] for r in m])


def test_matrix_kernels_against_sympy():
    rng = random.Random(7)
    for _ in range(60):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = [[mpq(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(c)] for _ in range(r)]
        sm = _sym_matrix(m)
        assert rank(m, QQ) == sm.rank()
        ns = nullspace(m, QQ)
        assert len(ns) == c - sm.rank()
        for v in ns:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
        red, piv = rref(m, QQ)
        sred, spiv = sm.rref()
        assert list(piv) == list(spiv)
        if piv:
            assert _sym_matrix(red[:len(piv)]) == sred[:len(piv), :]
        if r == c:
            assert det(m, QQ) == mpq(str(sm.det()))
            if sm.det():
                assert _sym_matrix(inverse(m, QQ)) == sm.inv()


def test_solve_left_and_rowspace(K):
    m = [[K(1), K.theta], [K(0), K(1)]]
    b = [[K(2), K(3)]]
    x = solve_left(m, b, K)
    assert mat_mul(x, m, K) == b
    assert solve_left([[K(1), K(0)]], [[K(0), K(1)]], K) is None
    rs = RowSpace(2, K)
    assert rs.add([K(1), K.theta])
    assert not rs.add([K(2), K.theta * 2])
    assert rs.contains([K(-1), -K.theta])
    assert len(rs) == 1


# -- subgroups

def test_canonical_basis_examples(Q, K):
    g = canonical_basis([[2], [3]], Q, 1)
    assert g.rank == 1 and g.basis == ((Q(1),),)
    assert canonical_basis([[1, 0], [0, 1]], Q, 2) == unit_lattice(2, Q)
    h = canonical_basis([[1], [K.theta]], K, 1)
    assert zrank(h) == 2
    assert set(h.basis) == {(K(1),), (K.theta,)}
    with pytest.raises(DimensionMismatch):
        canonical_basis([[1, 2]], Q, 1)


def test_membership_examples(Q):
    g = Subgroup([[2], [3]], Q, 1)
    assert member(g, [0]) and member(g, [1])
    assert not member(Subgroup([[1]], Q, 1), [mpq(1, 2)])
    assert member(Subgroup.zero(Q, 0), [])


def test_nondegeneracy_examples(Q):
    assert is_nondegenerate(unit_lattice(2, Q))
    assert not is_nondegenerate(Subgroup([[1, 1], [2, 2]], Q, 2))
    assert is_nondegenerate(Subgroup.zero(Q, 0))
    assert not is_nondegenerate(Subgroup([[1, 0], [mpq(1, 2), 0], [0, 0]], Q, 2))


def _int_gens(draw, n, k):
    return [[draw(st.integers(-4, 4)) for _ in range(n)] for _ in range(k)]


@st.composite
def generator_sets(draw):
    n = draw(st.integers(1, 3))
    gens = _int_gens(draw, n, draw(st.integers(1, 4)))
    den = draw(st.integers(1, 3))
    return n, [[mpq(x, den) for x in g] for g in gens]


@given(generator_sets(), st.randoms(use_true_random=False))
def test_normal_form_uniqueness(data, r):
    n, gens = data
    Q = NumberField.of([0, 1])
    base = Subgroup(gens, Q, n)
    shuffled = list(gens)
    r.shuffle(shuffled)
    extra = []
    for _ in range(2):
        cs = [r.randint(-2, 2) for _ in gens]
        extra.append([sum(c * g[i] for c, g in zip(cs, gens)) for i in range(n)])
    assert Subgroup(shuffled + extra, Q, n) == base
    assert Subgroup(list(base.basis), Q, n) == base
    # unimodular change of generators
    if len(gens) >= 2:
        c = r.randint(-3, 3)
        moved = [list(gens[0]), [a + c * b for a, b in zip(gens[1], gens[0])]] + [list(g) for g in gens[2:]]
        assert Subgroup(moved, Q, n) == base


@given(generator_sets())
def test_membership_matches_brute_force(data):
    n, gens = data
    Q = NumberField.of([0, 1])
    g = Subgroup(gens, Q, n)
    combos = set()
    for cs in itertools.product(range(-2, 3), repeat=len(gens)):
        combos.add(tuple(sum(c * gen[i] for c, gen in zip(cs, gens)) for i in range(n)))
    for v in combos:
        assert member(g, v)
    # basis rows generate the generators with integer coordinates
    for gen in gens:
        coords = g.coordinates(gen)
        assert coords is not None and g.vector(coords) == tuple(Q(x) for x in gen)


def test_membership_against_sympy_solve(Q):
    rng = random.Random(9)
    for _ in range(80):
        rows = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        if rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0] == 0:
            continue
        g = Subgroup(rows, Q, 2)
        v = [mpq(rng.randint(-6, 6), rng.choice([1, 2])) for _ in range(2)]
        sol = sympy.Matrix(rows).T.solve(sympy.Matrix([sympy.Rational(int(x.numerator), int(x.denominator)) for x in v]))
        assert member(g, v) == all(x.is_integer for x in sol)


# -- block group

def test_block_group_axioms(K):
    rng = random.Random(10)
    for l2, l3 in [(1, 1), (2, 1), (0, 2), (2, 0), (1, 2)]:
        e = BlockGroupElement.identity(l2, l3, K)
        for _ in range(10):
            a, b, c = (random_block_element(l2, l3, K, rng) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * a.inverse() == e == a.inverse() * a
            m = (a * b).matrix()
            assert all(not m[i][j] for i in range(l2) for j in range(l2, l2 + l3))


def test_block_shape_checks(Q):
    with pytest.raises(DimensionMismatch):
        BlockGroupElement([[1]], [[0, 0]], [[1]], Q)
    with pytest.raises(ValueError):
        BlockGroupElement.from_matrix([[1, 1], [0, 1]], 1, 1, Q)
    with pytest.raises(ZeroDivisionError):
        BlockGroupElement([[0]], [[0]], [[1]], Q)


def test_block_act_examples(Q):
    z = unit_lattice(1, Q)
    assert block_act(BlockGroupElement.identity(0, 1, Q), z) == z
    half = BlockGroupElement([], [[]], [[mpq(1, 2)]], Q, 0, 1)
    assert block_act(half, z) == Subgroup([[2]], Q, 1)
    g = BlockGroupElement([[1]], [[mpq(-1, 2)]], [[1]], Q)   # inverse is [[1,0],[1/2,1]]
    assert g.inverse().matrix() == [[Q(1), Q(0)], [Q(mpq(1, 2)), Q(1)]]
    assert block_act(g, unit_lattice(2, Q)) == Subgroup([[1, 0], [mpq(1, 2), 1]], Q, 2)


def test_action_law_and_invariants(K):
    rng = random.Random(12)
    gammas = [
        (1, 1, Subgroup([[1, 0], [K.theta, 0], [0, 1]], K, 2)),
        (1, 1, Subgroup([[1, 0], [0, 1], [0, K.theta]], K, 2)),
        (2, 1, Subgroup([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, K.theta, 0]], K, 3)),
        (0, 2, unit_lattice(2, K)),
    ]
    for l2, l3, gamma in gammas:
        inv = orbit_invariants(gamma, l2, l3)
        for _ in range(8):
            g1, g2 = random_block_element(l2, l3, K, rng), random_block_element(l2, l3, K, rng)
            moved = block_act(g1, block_act(g2, gamma))
            assert block_act(g1 * g2, gamma) == moved
            assert orbit_invariants(moved, l2, l3) == inv


def test_orbit_decide_examples(Q, K):
    z = unit_lattice(1, Q)
    res = orbit_decide(z, Subgroup([[2]], Q, 1), 0, 1)
    assert res.__class__.__name__ == "Equivalent"
    assert block_act(res.g, z) == Subgroup([[2]], Q, 1)
    assert res.g.C == ((Q(mpq(1, 2)),),)
    res = orbit_decide(unit_lattice(1, K), Subgroup([[1], [K.theta]], K, 1), 0, 1)
    assert res.__class__.__name__ == "Inequivalent" and res.invariant == "zrank"
    assert (res.left, res.right) == (1, 2)
    with pytest.raises(DegenerateSubgroup):
        orbit_decide(Subgroup([[1, 1]], Q, 2), unit_lattice(2, Q), 1, 1)


def test_orbit_decide_round_trip(K):
    rng = random.Random(13)
    for gamma, l2, l3 in [(Subgroup([[1, 0], [0, 1], [K.theta, 0]], K, 2), 1, 1),
                          (Subgroup([[1, 0], [0, 1], [0, K.theta]], K, 2), 1, 1),
                          (unit_lattice(2, K), 2, 0)]:
        for _ in range(6):
            g = random_block_element(l2, l3, K, rng)
            res = orbit_decide(gamma, block_act(g, gamma), l2, l3)
            assert res.__class__.__name__ == "Equivalent"
            assert block_act(res.g, gamma) == block_act(g, gamma)


def test_adapted_basis_spans_gamma(Q):
    gamma = Subgroup([[2, 0], [1, 3]], Q, 2)
    rows = adapted_basis(gamma, 1, 1)
    assert rows is not None
    assert Subgroup(rows, Q, 2) == gamma
    assert not any(rows[0][1:])   # first row lies in the l2-slice


# -- polynomials over F

def _rand_similar(rng, blocks, field):
    """P J P^-1 for a block-diagonal Jordan matrix J with the given (eigenvalue, size) blocks."""
    n = sum(s for _, s in blocks)
    J = [[field.zero] * n for _ in range(n)]
    pos = 0
    for lam, s in blocks:
        for i in range(s):
            J[pos + i][pos + i] = field(lam)
            if i + 1 < s:
                J[pos + i][pos + i + 1] = field.one
        pos += s
    while True:
        P = [[field(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if det(P, field):
            break
    D = [[J[i][j] if i == j else field.zero for j in range(n)] for i in range(n)]
    Pi = inverse(P, field)
    conj = lambda M: mat_mul(mat_mul(P, M, field), Pi, field)
    return conj(J), conj(D)


def test_minimal_polynomial_and_jordan_against_construction():
    Q = NumberField.of([0, 1])
    rng = random.Random(14)
    for _ in range(40):
        blocks = [(rng.randint(-2, 2), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
        M, S_want = _rand_similar(rng, blocks, Q)
        # oracle: prod (x - lam)^(largest block size for lam)
        sizes = {}
        for lam, s in blocks:
            sizes[lam] = max(sizes.get(lam, 0), s)
        want = [Q.one]
        for lam, s in sizes.items():
            for _ in range(s):
                want = poly.mul(want, [Q(-lam), Q.one], Q)
        assert poly.minimal_polynomial(M, Q) == want
        S, N, mp = poly.jordan_decomposition(M, Q)
        assert S == S_want
        n = len(M)
        assert mat_mul(S, N, Q) == mat_mul(N, S, Q)
        assert [[S[i][j] + N[i][j] for j in range(n)] for i in range(n)] == M


def test_minimal_polynomial_matches_sympy_over_extension(K):
    rng = random.Random(15)
    for _ in range(20):
        n = rng.randint(1, 4)
        M = [[random_scalar(K, rng) if rng.random() < 0.6 else K.zero for _ in range(n)] for _ in range(n)]
        mp = poly.minimal_polynomial(M, K)
        assert poly.eval_matrix(mp, M, K) == [[K.zero] * n for _ in range(n)]
        # minimality: no proper monic divisor of the characteristic polynomial of lower degree kills M
        cp = sympy.Matrix([[_sym(K, x).subs(X, sympy.sqrt(2)) for x in r] for r in M]).charpoly().as_expr()
        assert len(mp) - 1 <= sympy.degree(cp, sympy.Symbol("lambda"))
        for k in range(len(mp) - 1):
            # lower-degree annihilators cannot exist: the powers I, M, ..., M^k are independent
            powers = []
            P = [[K.one if i == j else K.zero for j in range(n)] for i in range(n)]
            for _ in range(k + 1):
                powers.append([x for r in P for x in r])
                P = mat_mul(P, M, K)
            assert rank(powers, K) == k + 1


def test_polynomial_helpers(Q):
    p = [Q(-1), Q(0), Q(1)]          # x^2 - 1
    q = [Q(1), Q(1)]                 # x + 1
    quo, rem = poly.divmod_poly(p, q, Q)
    assert quo == [Q(-1), Q(1)] and rem == []
    assert poly.gcd(p, poly.mul(q, q, Q), Q) == q
    sq = poly.mul(p, p, Q)
    assert not poly.is_squarefree(sq, Q)
    assert poly.squarefree_part(sq, Q) == p
    assert poly.is_monomial_power([Q(0), Q(0), Q(1)])
    assert not poly.is_monomial_power(q)
