"""Tensor-product connections: degeneracy submodules, nu-hat, both routes,
and the associated connection."""

from fractions import Fraction

from _shared import FIXTURES, induced, pipeline
from bimodconn.algebra import Bimodule, RightModule, check_bimodule
from bimodconn.calculus import preceq
from bimodconn.connection import (Connection, check_right_leibniz,
                                  sigma_exists, vec_sum)
from bimodconn.fixtures import a2, a2_universal, conn_d
from bimodconn.forms import Forms
from bimodconn.linalg import is_zero_vec, mat, zeros
from bimodconn.tensorconn import (RightConnection, associated_connection,
                                  check_compatibility, check_right_connection,
                                  degeneracy_brute, degeneracy_submodules,
                                  nu_hat, tensor_connection_induced,
                                  tensor_connection_original)

F = Fraction


def kappa_hat(which: str):
    conn = pipeline(which)[0]
    return preceq(induced(which).calculus, conn.calculus)[0]


def rc_of(which: str) -> RightConnection:
    conn = pipeline(which)[0]
    return RightConnection(conn.module, conn.calculus, conn.nabla)


# ---------------------------------------------------------------------------
# degeneracy submodules
# ---------------------------------------------------------------------------

def test_regular_pairing_is_faithful():
    conn = conn_d("universal")
    pair = degeneracy_submodules(conn.module.as_right_module(), conn.module)
    assert pair.n0.dim == 0
    assert pair.m0.dim == 0
    assert all(v.ok for v in pair.verdicts)


def test_degeneracy_brute_oracle_everywhere():
    for which in FIXTURES:
        conn = pipeline(which)[0]
        pair = degeneracy_submodules(conn.module.as_right_module(),
                                     conn.module)
        assert degeneracy_brute(pair).ok


# A right module N = x ⊕ y with x·e1 = 0, x·e2 = x, y·e1 = y, y·e2 = 0,
# paired with the one-dimensional e1-column bimodule M: then x⊗m = 0 for
# every m, so N0 = span(x) while y⊗m stays nonzero and M0 = 0.

def column_module() -> Bimodule:
    left = [mat([[1]]), mat([[0]])]
    right = [mat([[1]]), mat([[0]])]
    m = Bimodule.from_actions(a2(), left, right)
    assert check_bimodule(m).ok
    return m


def skew_right_module() -> RightModule:
    right = [mat([[0, 0], [0, 1]]), mat([[1, 0], [0, 0]])]
    return RightModule.from_action(a2(), right)


def column_connection() -> Connection:
    m = column_module()
    cal = a2_universal()
    forms = Forms(m, cal)
    emb = zeros(4)
    emb[0 * 2 + 1] = F(1)                           # e1 (x) e2
    col = [-x for x in forms.class_of_pair_emb(1, [F(1)], emb)]
    c = Connection(m, cal, [[x] for x in col])
    assert check_right_leibniz(c).ok
    return c


def skew_connection(perturbed: bool = False) -> RightConnection:
    n = skew_right_module()
    cal = a2_universal()
    forms = Forms(n, cal)
    uni = cal.universal
    cols = []
    for i, j in ((0, 1), (1, 0)):                   # x⊗de2, y⊗de1
        bar = uni.from_emb(1, uni.d_emb(a2().basis_vec(j), 0))
        cols.append(forms.class_of_pair_bar(1, n.basis_vec(i), bar))
    if perturbed:
        emb = zeros(4)
        emb[0 * 2 + 1] = F(1)                       # add y⊗(e1⊗e2) to ∇′x
        cols[0] = vec_sum(cols[0],
                          forms.class_of_pair_emb(1, n.basis_vec(1), emb))
    nabla = [[cols[c][r] for c in range(2)] for r in range(forms.dim(1))]
    rc = RightConnection(n, cal, nabla)
    assert check_right_connection(rc).ok
    return rc


def test_nonzero_degeneracy_kernel():
    pair = degeneracy_submodules(skew_right_module(), column_module())
    assert pair.tensor.dim == 1
    assert pair.n0.dim == 1
    assert pair.n0.basis[0] == [F(1), F(0)]         # N0 = span(x)
    assert pair.m0.dim == 0
    assert all(v.ok for v in pair.verdicts)
    assert degeneracy_brute(pair).ok


def test_compatibility_pass_and_fail():
    pair = degeneracy_submodules(skew_right_module(), column_module())
    c = column_connection()
    assert check_compatibility(c, skew_connection(), pair).ok
    # a right-linear perturbation pushes ∇′x out of N0⊗Ω¹
    v = check_compatibility(c, skew_connection(perturbed=True), pair)
    assert v.status == "fail"
    assert v.witness is not None


# ---------------------------------------------------------------------------
# nu-hat and the two tensor-connection routes
# ---------------------------------------------------------------------------

def test_nu_hat_iso_in_degree_one_flat():
    nu = nu_hat(rc_of("flat").module, kappa_hat("flat"))
    assert nu.available
    assert all(v.ok for v in nu.verdicts)
    assert nu.rank(1) == nu.source.dim(1) == 2


def test_nu_hat_unavailable_without_kappa_hat():
    assert kappa_hat("twist") is None
    nu = nu_hat(rc_of("twist").module, None)
    assert not nu.available
    assert any(v.status == "unavailable" for v in nu.verdicts)


def test_both_routes_flat():
    for which in ("flat", "flatq"):
        conn = pipeline(which)[0]
        ic = induced(which)
        rc = rc_of(which)
        nu = nu_hat(rc.module, kappa_hat(which))
        sig = sigma_exists(conn)
        tco = tensor_connection_original(rc, conn, ic, nu, sig)
        assert tco.available
        assert all(v.ok for v in tco.verdicts)
        ids = {v.check_id for v in tco.verdicts}
        assert "tensor-right-leibniz" in ids
        assert "tensor-route-agreement" in ids
        assoc = associated_connection(rc, nu)
        assert assoc.exists
        assert all(v.ok for v in assoc.verdicts)
        tci = tensor_connection_induced(assoc.connection, conn, ic)
        assert all(v.ok for v in tci.verdicts)
        # the two routes build the same connection matrix on N⊗M
        assert tci.matrix == tco.matrix


def test_associated_connection_of_d_is_d_nabla():
    # ∇′ = d on N = A: the associated connection is d against (Ω_∇, d_∇)
    rc = rc_of("flat")
    nu = nu_hat(rc.module, kappa_hat("flat"))
    assoc = associated_connection(rc, nu)
    assert assoc.exists
    am = assoc.connection
    uni = am.calculus.universal
    unit = a2().unit_vec()
    for i in range(a2().dim):
        bar = uni.from_emb(1, uni.d_emb(a2().basis_vec(i), 0))
        expected = am.forms.class_of_pair_bar(1, unit, bar)
        assert am.nabla_apply(rc.module.basis_vec(i)) == expected
    assert is_zero_vec(am.nabla_apply(unit))
