"""Universal and quotient differential calculi and the partial order."""

from fractions import Fraction

from bimodconn.calculus import (preceq, quotient_calculus, universal_graded)
from bimodconn.fixtures import (a2, a2_quotient, a2_universal, m2,
                                m2_universal)
from bimodconn.linalg import is_zero_vec, zeros

F = Fraction


def emb_e1e2():
    v = zeros(4)
    v[0 * 2 + 1] = F(1)          # e1 (x) e2
    return v


def test_dim_omega1_two_point():
    assert a2_universal().dim(1) == 2


def test_dim_omega1_matrix():
    assert m2_universal().dim(1) == 12


def test_d_of_e1():
    cal = a2_universal()
    d = cal.universal.d_emb(a2().basis_vec(0), 0)
    # d e1 = e2 (x) e1 - e1 (x) e2 in plain tensor-square coordinates
    assert d == [F(0), F(-1), F(1), F(0)]


def test_d_of_unit_is_zero():
    cal = a2_universal()
    assert is_zero_vec(cal.universal.d_emb(a2().unit_vec(), 0))


def test_graded_dims_two_point():
    assert a2_universal().dims() == [2, 2, 2, 2]


def test_graded_dims_matrix():
    assert m2_universal().dims() == [4, 12, 36, 108]


def test_degree_zero_is_algebra():
    assert a2_universal().dim(0) == a2().dim
    assert m2_universal().dim(0) == m2().dim


def test_d_squared_zero():
    for cal in (a2_universal(), a2_quotient()):
        for r in range(cal.D - 1):
            for col in range(cal.dim(r)):
                e = zeros(cal.dim(r))
                e[col] = F(1)
                assert is_zero_vec(cal.d_apply(r + 1, cal.d_apply(r, e)))


def test_graded_leibniz_spot():
    cal = a2_universal()
    for i in range(cal.dim(1)):
        for j in range(cal.dim(1)):
            u, v = zeros(cal.dim(1)), zeros(cal.dim(1))
            u[i], v[j] = F(1), F(1)
            lhs = cal.d_apply(2, cal.product(1, u, 1, v))
            rhs = [a - b for a, b in
                   zip(cal.product(2, cal.d_apply(1, u), 1, v),
                       cal.product(1, u, 2, cal.d_apply(1, v)))]
            assert lhs == rhs


def test_quotient_empty_generators_is_universal():
    cal = quotient_calculus(a2_universal(), [])
    assert cal.dims() == a2_universal().dims()


def test_quotient_by_e1e2():
    cal = a2_quotient()
    assert cal.dim(1) == 1


def test_quotient_by_everything():
    base = a2_universal()
    gens = []
    for k in (1, 2):             # e1 (x) e2 and e2 (x) e1 span all of degree 1
        e = zeros(base.universal.emb_dim(1))
        e[k] = F(1)
        gens.append((1, e))
    cal = quotient_calculus(base, gens)
    assert cal.dims() == [2, 0, 0, 0]


def test_quotient_idempotent():
    first = a2_quotient()
    second = quotient_calculus(a2_universal(), [(1, emb_e1e2())])
    assert first.dims() == second.dims()


def test_preceq_reflexive():
    rho, _ = preceq(a2_quotient(), a2_quotient())
    assert rho is not None
    assert rho.verify()


def test_preceq_quotient_below_universal():
    rho, _ = preceq(a2_quotient(), a2_universal())
    assert rho is not None
    assert rho.verify()


def test_preceq_converse_fails_with_witness():
    rho, wit = preceq(a2_universal(), a2_quotient())
    assert rho is None
    deg, bar = wit
    assert deg == 1
    # the witness lies in the quotient's defining ideal
    emb = a2_universal().universal.to_emb(1, bar)
    assert is_zero_vec(a2_quotient().class_of_emb(1, emb))


def test_preceq_zero_calculus_below_everything():
    base = a2_universal()
    gens = [(1, e) for e in ([F(0), F(1), F(0), F(0)],
                             [F(0), F(0), F(1), F(0)])]
    zero_cal = quotient_calculus(base, gens)
    assert zero_cal.dims() == [2, 0, 0, 0]
    rho, _ = preceq(zero_cal, a2_universal())
    assert rho is not None
    assert rho.verify()


def test_preceq_transitive_on_chain():
    rho1, _ = preceq(a2_quotient(), a2_universal())
    rho2, _ = preceq(a2_quotient(), a2_quotient())
    assert rho1 is not None and rho2 is not None
