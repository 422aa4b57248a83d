import random
from fractions import Fraction

import pytest

from qgc.errors import NotDominant
from qgc.rootdata import RootSystemB, WeylElement


@pytest.fixture(scope="module")
def b2():
    return RootSystemB(2)


def half_sum_oracle(n):
    """Independent half-sum of the positive roots, enumerated from scratch."""
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            for sj in (1, -1):
                vec = [0] * n
                vec[i], vec[j] = 1, sj
                roots.append(vec)
        vec = [0] * n
        vec[i] = 1
        roots.append(vec)
    total = [sum(r[k] for r in roots) for k in range(n)]
    return tuple(Fraction(t, 2) for t in total)


def test_simple_root_lengths(b2):
    a1, a2 = b2.simple_roots
    assert b2.inner(a1, a1) == 2
    assert b2.inner(a2, a2) == 1
    assert b2.inner(a1, a2) == -1


def test_fundamental_weights_dual_to_coroots(b2):
    for i, w in enumerate(b2.fundamental_weights, start=1):
        for j in range(1, b2.n + 1):
            assert b2.coroot_pair(w, j) == (1 if i == j else 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rho_is_half_sum(n):
    rs = RootSystemB(n)
    expect = half_sum_oracle(n)
    assert tuple(Fraction(x, 2) for x in rs.rho) == expect
    for i in range(1, n + 1):
        assert rs.coroot_pair(rs.rho, i) == 1


def test_rho_values():
    assert RootSystemB(2).rho == (3, 1)
    assert RootSystemB(4).rho == (7, 5, 3, 1)


def test_reflections(b2):
    eps2 = (0, 2)
    assert b2.reflect(2, eps2) == (0, -2)
    w1 = b2.fundamental_weights[0]
    a1 = b2.simple_roots[0]
    assert b2.reflect(1, w1) == tuple(x - y for x, y in zip(w1, a1))
    rng = random.Random(3)
    for _ in range(30):
        lam = tuple(rng.randint(-4, 4) * 2 for _ in range(2))
        for i in (1, 2):
            assert b2.reflect(i, b2.reflect(i, lam)) == lam


def test_weyl_orbit(b2):
    orbit = b2.weyl_orbit((2, 0))
    assert orbit == {(2, 0), (-2, 0), (0, 2), (0, -2)}
    # orbit of a dominant weight has exactly one dominant element
    for lam in [(2, 0), (2, 2), (3, 1), (4, 2)]:
        orb = b2.weyl_orbit(lam)
        assert sum(1 for w in orb if b2.is_dominant(w)) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_weyl_group_order(n):
    rs = RootSystemB(n)
    group = rs.weyl_group()
    assert len(set(group)) == 2 ** n * [1, 1, 2, 6][n]
    rng = random.Random(5)
    vec = tuple(rng.randint(-5, 5) for _ in range(n))
    for _ in range(20):
        w1, w2 = rng.choice(group), rng.choice(group)
        assert (w1 * w2).act(vec) == w1.act(w2.act(vec))
        assert w1.inverse().act(w1.act(vec)) == vec
    ident = WeylElement.identity(n)
    assert ident.act(vec) == vec


def test_coroot_pairs(b2):
    w1 = b2.fundamental_weights[0]
    assert b2.coroot_pair(w1, 1) == 1
    assert b2.coroot_pair(w1, 2) == 0
    # direct dot-product oracle for eps1 + eps2 against the short coroot
    eps_sum = (2, 2)
    alpha2 = b2.simple_roots[1]
    dot = sum(a * b for a, b in zip(eps_sum, alpha2)) / 4
    norm = sum(a * a for a in alpha2) / 4
    assert b2.coroot_pair(eps_sum, 2) == 2 * dot / norm == 2


def test_alpha_coords(b2):
    assert b2.alpha_coords(b2.fundamental_weights[0]) == (1, 1)
    assert b2.alpha_coords(b2.fundamental_weights[1]) == (Fraction(1, 2), 1)
    for i, a in enumerate(b2.simple_roots):
        coords = b2.alpha_coords(a)
        assert coords == tuple(1 if k == i else 0 for k in range(2))
    # round trip and inner-product consistency
    rng = random.Random(9)
    for _ in range(20):
        lam = tuple(rng.randint(-4, 4) * 2 for _ in range(2))
        coords = b2.alpha_coords(lam)
        assert b2.from_alpha(coords) == lam
        for i, a in enumerate(b2.simple_roots):
            via_alpha = sum(c * b2.inner(b2.simple_roots[k], a)
                            for k, c in enumerate(coords))
            assert via_alpha == b2.inner(lam, a)


def test_freudenthal_vector_rep(b2):
    mults = b2.freudenthal_mults((2, 0))
    assert mults == {(2, 0): 1, (-2, 0): 1, (0, 2): 1, (0, -2): 1, (0, 0): 1}
    assert sum(mults.values()) == b2.weyl_dim((2, 0)) == 5


def test_freudenthal_trivial(b2):
    assert b2.freudenthal_mults((0, 0)) == {(0, 0): 1}
    assert b2.weyl_dim((0, 0)) == 1


def test_freudenthal_adjoint(b2):
    mults = b2.freudenthal_mults((2, 2))
    assert mults[(0, 0)] == 2
    assert sum(mults.values()) == b2.weyl_dim((2, 2)) == 10


def test_freudenthal_weyl_invariant_and_totals():
    for n in (2, 3):
        rs = RootSystemB(n)
        fund = rs.fundamental_weights
        sample = [fund[0], fund[-1], tuple(a + b for a, b in zip(fund[0], fund[-1]))]
        if n == 2:
            sample.append((4, 0))
        for lam in sample:
            if rs.weyl_dim(lam) > 200:
                continue
            mults = rs.freudenthal_mults(lam)
            assert sum(mults.values()) == rs.weyl_dim(lam)
            for mu, m in mults.items():
                for i in range(1, n + 1):
                    assert mults[rs.reflect(i, mu)] == m


def test_not_dominant_errors(b2):
    with pytest.raises(NotDominant):
        b2.freudenthal_mults((-2, 0))
    with pytest.raises(NotDominant):
        b2.weyl_dim((0, 2))


def test_kostant_counts(b2):
    assert b2.kostant_count((1, 0)) == 1
    assert b2.kostant_count((1, 1)) == 2
    assert b2.kostant_count((2, 1)) == 2
    assert b2.kostant_count((1, 2)) == 3
    assert b2.kostant_count((2, 2)) == 4


def test_dominance(b2):
    w1 = b2.fundamental_weights[0]
    assert b2.dominance_leq((0, 0), w1)
    assert b2.dominance_leq((0, 2), w1)
    # spin weights are incomparable with integer weights
    assert not b2.dominance_leq((1, 1), w1)
    assert not b2.dominance_leq(w1, (1, 1))
