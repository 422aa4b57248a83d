import random

import pytest

from qgc.errors import NotDominant, TruncationOverflow
from qgc.qgroup import Algebra
from qgc.repn import (
    ColMatrix,
    act,
    char_value,
    irreducible,
    matrix_coeff,
    qint_action_identity,
    theta,
    trace_fn,
    verma,
)
from qgc.scalars import ONE, ZERO, Scalar, rs_ratio_power, rs_product_power, r_power


@pytest.fixture(scope="module")
def alg2():
    return Algebra(2)


def columns_below_depth(module, h):
    return [c for c, (nu, _) in enumerate(module.labels) if sum(nu) <= h]


def assert_equal_on_columns(m1, m2, cols):
    for c in cols:
        assert m1.cols[c] == m2.cols[c], f"column {c} differs"


def test_verma_grading_and_highest_weight(alg2):
    lam, mu = (2, 0), (1, 1)
    M = verma(alg2, lam, mu, depth=3)
    for row, (nu, _) in enumerate(M.labels):
        expect = tuple(a - b for a, b in zip(lam, alg2.rs.from_alpha(nu)))
        assert M.weights[row] == expect
    # raising kills the highest weight vector
    for i in (1, 2):
        assert M.e_col(i, 0) == {}
    # toral action on the highest weight vector is the character value
    diag = M.char_diag((0, 1), (1, 0))
    assert diag[0] == char_value(alg2, lam, mu, (0, 1), (1, 0))


def test_char_value_closed_form(alg2):
    # <w'_lam, w_n> = r^(2 (eps_n, lam)) (r s)^(-lam_n) for the short root
    rng = random.Random(59)
    n = alg2.n
    unit_n = tuple(1 if k == n - 1 else 0 for k in range(n))
    for _ in range(15):
        lam_alpha = tuple(rng.randint(-3, 3) for _ in range(n))
        lam = alg2.rs.from_alpha(lam_alpha)
        got = char_value(alg2, lam, (0,) * n, (0,) * n, unit_n)
        eps_n = alg2.rs.inner(tuple(0 if k < n - 1 else 2 for k in range(n)), lam)
        expect = r_power(2 * eps_n) * rs_product_power(-lam_alpha[n - 1])
        assert got == expect


def test_defining_relations_on_truncation(alg2):
    lam, mu = (3, 1), (2, 0)
    depth = 3
    M = verma(alg2, lam, mu, depth)
    safe = columns_below_depth(M, depth - 1)
    for i in (1, 2):
        for j in (1, 2):
            ef = act(alg2.e(i), M).compose(act(alg2.f(j), M))
            fe = act(alg2.f(j), M).compose(act(alg2.e(i), M))
            lhs = ef - fe
            if i == j:
                inv = (alg2.r_i(i) - alg2.s_i(i)).inverse()
                rhs = (act(alg2.omega(i), M) - act(alg2.omega_prime(i), M)).scale(inv)
            else:
                rhs = ColMatrix(M.dim)
            assert_equal_on_columns(lhs, rhs, safe)


def test_irreducible_trivial(alg2):
    L = irreducible(alg2, (0, 0))
    assert L.dim == 1
    for i in (1, 2):
        assert act(alg2.e(i), L).is_zero()
        assert act(alg2.f(i), L).is_zero()


def test_irreducible_vector_rep(alg2):
    L = irreducible(alg2, (2, 0))
    assert L.dim == 5
    assert L.weight_multiplicities() == alg2.rs.freudenthal_mults((2, 0))
    # Weyl symmetry of the multiplicities on the constructed module
    mults = L.weight_multiplicities()
    for w, m in mults.items():
        for i in (1, 2):
            assert mults[alg2.rs.reflect(i, w)] == m


def test_irreducible_spin(alg2):
    # the spin weight has half-integer epsilon coordinates throughout
    L = irreducible(alg2, (1, 1))
    assert L.dim == 4
    mults = L.weight_multiplicities()
    assert mults == {(1, 1): 1, (1, -1): 1, (-1, 1): 1, (-1, -1): 1}
    assert mults == alg2.rs.freudenthal_mults((1, 1))
    # defining commutators hold on the spin module
    for i in (1, 2):
        ef = act(alg2.e(i), L).compose(act(alg2.f(i), L))
        fe = act(alg2.f(i), L).compose(act(alg2.e(i), L))
        inv = (alg2.r_i(i) - alg2.s_i(i)).inverse()
        rhs = (act(alg2.omega(i), L) - act(alg2.omega_prime(i), L)).scale(inv)
        assert ef - fe == rhs
    # grading-operator exponents are half-integral but stay representable
    th = theta(L)
    by_weight = {w: th[r] for r, w in enumerate(L.weights)}
    assert by_weight[(1, 1)] == rs_ratio_power(-2)
    assert by_weight[(1, -1)] == rs_ratio_power(-1)


def test_irreducible_adjoint(alg2):
    L = irreducible(alg2, (2, 2))
    assert L.dim == 10
    mults = L.weight_multiplicities()
    assert mults == alg2.rs.freudenthal_mults((2, 2))
    assert mults[(0, 0)] == 2


def test_relations_hold_on_irreducible(alg2):
    L = irreducible(alg2, (2, 0))
    for i in (1, 2):
        for j in (1, 2):
            ef = act(alg2.e(i), L).compose(act(alg2.f(j), L))
            fe = act(alg2.f(j), L).compose(act(alg2.e(i), L))
            lhs = ef - fe
            if i == j:
                inv = (alg2.r_i(i) - alg2.s_i(i)).inverse()
                rhs = (act(alg2.omega(i), L) - act(alg2.omega_prime(i), L)).scale(inv)
                assert lhs == rhs
            else:
                assert lhs.is_zero()
    # Serre relators act by zero
    for sign in "+-":
        gen = alg2.e if sign == "+" else alg2.f
        for rel in alg2.serre_relators(sign):
            total = ColMatrix(L.dim)
            for word, c in rel.items():
                term = alg2.one()
                for k in word:
                    term = term * gen(k)
                total = total.add_scaled(act(term, L), c)
            assert total.is_zero()


def test_theta_trivial_and_values(alg2):
    L0 = irreducible(alg2, (0, 0))
    assert theta(L0) == [ONE]
    L = irreducible(alg2, (2, 0))
    by_weight = {w: theta(L)[r] for r, w in enumerate(L.weights)}
    # at the top weight the factor is (r s^-1)^(-2 (rho, eps1)) = (r s^-1)^-3
    assert by_weight[(2, 0)] == rs_ratio_power(-3)
    assert by_weight[(0, 0)] == ONE


def test_theta_conjugates_antipode_square(alg2):
    L = irreducible(alg2, (2, 0))
    th = theta(L)
    th_mat = ColMatrix(L.dim, [{r: th[r]} for r in range(L.dim)])
    gens = [alg2.e(1), alg2.e(2), alg2.f(1), alg2.f(2),
            alg2.omega(1), alg2.omega(2), alg2.omega_prime(1), alg2.omega_prime(2)]
    for u in gens:
        lhs = th_mat.compose(act(u, L))
        rhs = act(alg2.antipode(alg2.antipode(u)), L).compose(th_mat)
        assert lhs == rhs


def test_qint_action_identity(alg2):
    # all simple directions, string lengths up to 2, integer and spin mu
    mus = [(0, 0), (2, 0), (1, 1)]
    for i in (1, 2):
        for m in (0, 1, 2):
            for mu in mus:
                lam = tuple(m * x for x in alg2.rs.fundamental_weights[i - 1])
                assert int(alg2.rs.coroot_pair(lam, i)) == m
                assert qint_action_identity(alg2, lam, mu, i)
    # a weight with both components positive
    lam = tuple(a + b for a, b in zip(alg2.rs.fundamental_weights[0],
                                      alg2.rs.fundamental_weights[1]))
    for i in (1, 2):
        assert qint_action_identity(alg2, lam, (1, -1), i)


def test_singular_vectors_killed(alg2):
    lam, mu = (2, 2), (0, 2)
    for i in (1, 2):
        m = int(alg2.rs.coroot_pair(lam, i))
        M = verma(alg2, lam, mu, depth=m + 2)
        vec = {0: ONE}
        for _ in range(m + 1):
            vec = M._apply_cols(M.f_col, i, vec, strict=True)
        assert vec, "singular vector itself must be nonzero"
        for j in (1, 2):
            assert M._apply_cols(M.e_col, j, vec, strict=True) == {}


def test_trace_fn(alg2):
    assert trace_fn(alg2, (0, 0), alg2.one()) == ONE
    # trace of a toral monomial matches the weight-sum formula
    L = irreducible(alg2, (2, 0))
    mults = alg2.rs.freudenthal_mults((2, 0))
    for eta, phi in [((0, 0), (0, 0)), ((1, 0), (0, 0)), ((1, 1), (-1, 0))]:
        expect = ZERO
        for w, m in mults.items():
            expect = expect + Scalar.from_int(m) * \
                rs_ratio_power(-2 * alg2.rs.inner(alg2.rs.rho, w)) * \
                char_value(alg2, w, (0, 0), eta, phi)
        assert trace_fn(alg2, (2, 0), alg2.toral(eta, phi)) == expect


def test_trace_decomposes_into_matrix_coeffs(alg2):
    L = irreducible(alg2, (2, 0))
    th = theta(L)
    rng = random.Random(61)
    xs = [alg2.one(), alg2.f(1) * alg2.e(1), alg2.toral((1, 0), (-1, 0))]
    for x in xs:
        total = ZERO
        for idx in range(L.dim):
            total = total + matrix_coeff(L, idx, idx, x) * th[idx]
        assert total == trace_fn(alg2, (2, 0), x)
    assert matrix_coeff(L, 0, 0, alg2.one()) == ONE
    assert matrix_coeff(L, 1, 0, alg2.one()) == ZERO


def test_truncation_overflow_strict(alg2):
    M = verma(alg2, (2, 0), (0, 0), depth=1)
    with pytest.raises(TruncationOverflow):
        vec = {M.index[((1, 0), 0)]: ONE}
        M._apply_cols(M.f_col, 1, vec, strict=True)
    # non-strict application silently truncates
    vec = {M.index[((1, 0), 0)]: ONE}
    assert M._apply_cols(M.f_col, 1, vec, strict=False) == {}


def test_irreducible_requires_dominant(alg2):
    with pytest.raises(NotDominant):
        irreducible(alg2, (0, 2))
    with pytest.raises(NotDominant):
        irreducible(alg2, (1, 0))
