"""Algebras, bimodules, balanced tensor products, hom spaces, kappa0."""

from fractions import Fraction

from bimodconn.algebra import (Algebra, Bimodule, check_algebra,
                               check_bimodule, kappa0, right_hom_space,
                               tensor_over_A)
from bimodconn.fixtures import a2, a2_universal, m2
from bimodconn.linalg import identity_mat, mat_vec, zero_mat, zeros

F = Fraction


def test_check_algebra_two_point():
    assert check_algebra(a2()).status == "pass"


def test_check_algebra_matrix():
    assert check_algebra(m2()).status == "pass"


def test_check_algebra_bad_unit():
    bad = Algebra.from_table([[[F(2)]]], [F(1)])
    v = check_algebra(bad)
    assert v.status == "fail"
    assert v.witness is not None


def test_check_bimodule_regular():
    assert check_bimodule(a2().regular_bimodule()).status == "pass"


def test_check_bimodule_degree_one():
    omega1 = a2_universal().degree_bimodule(1)
    assert check_bimodule(omega1).status == "pass"


def test_check_bimodule_zero_left_action():
    reg = a2().regular_bimodule()
    bad = Bimodule.from_actions(a2(), [zero_mat(2, 2), zero_mat(2, 2)],
                                reg.right_matrices())
    assert check_bimodule(bad).status == "fail"


def test_tensor_unit_balancing():
    reg = a2().regular_bimodule()
    assert tensor_over_A(reg, reg).dim == 2


def test_tensor_omega1_squared():
    omega1 = a2_universal().degree_bimodule(1)
    t = tensor_over_A(omega1, omega1)
    assert t.plain_dim == 4
    assert t.dim == 2


def test_tensor_balancing_relation():
    x = a2_universal().degree_bimodule(1)
    t = tensor_over_A(x, x)
    alg = a2()
    for i in range(x.dim):
        for k in range(alg.dim):
            for j in range(x.dim):
                xv, yv = x.basis_vec(i), x.basis_vec(j)
                fv = alg.basis_vec(k)
                lhs = t.project_pure(x.act_right(xv, fv), yv)
                rhs = t.project_pure(xv, x.act_left(fv, yv))
                assert lhs == rhs


def test_end_of_regular_module():
    reg = a2().regular_bimodule().as_right_module()
    assert right_hom_space(reg, reg).dim == 2


def test_hom_space_contains_identity():
    reg = a2().regular_bimodule().as_right_module()
    assert right_hom_space(reg, reg).contains(identity_mat(2))


def test_hom_into_degree_one():
    reg = a2().regular_bimodule().as_right_module()
    omega1 = a2_universal().degree_bimodule(1).as_right_module()
    assert right_hom_space(reg, omega1).dim == 2


def test_kappa0_idempotent_projector():
    k0 = kappa0(a2(), a2().regular_bimodule())
    op = k0.operator(a2().basis_vec(0))
    assert mat_vec(op, a2().basis_vec(0)) == a2().basis_vec(0)
    assert mat_vec(op, a2().basis_vec(1)) == zeros(2)


def test_kappa0_unit_is_identity():
    k0 = kappa0(a2(), a2().regular_bimodule())
    assert k0.operator(a2().unit_vec()) == identity_mat(2)


def test_kappa0_faithful_on_matrix_algebra():
    k0 = kappa0(m2(), m2().regular_bimodule())
    assert k0.image_rank() == 4
    assert k0.injective
