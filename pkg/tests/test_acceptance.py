"""Acceptance gate: the ten headline properties of the analysis engine,
checked end to end on the shipped fixtures and model files."""

from pathlib import Path

from _shared import FIXTURES, induced, pipeline
from bimodconn import cli
from bimodconn.calculus import preceq
from bimodconn.connection import (check_right_leibniz, induced_first_order,
                                  kappa0_op, kappa1, nabla_hat, sigma_exists)
from bimodconn.curvature import curvature, sigma_full
from bimodconn.fixtures import a2_universal, conn_d, m2_universal, twist
from bimodconn.linalg import is_zero_vec
from bimodconn.model import parse_model
from bimodconn.tensorconn import (RightConnection, associated_connection,
                                  degeneracy_brute, degeneracy_submodules,
                                  nu_hat, tensor_connection_induced,
                                  tensor_connection_original)

MODELS = Path(__file__).resolve().parents[1] / "models"


def test_01_universal_dimension_law():
    # dim of the degree-one universal calculus is n^2 - n
    assert a2_universal().dim(1) == 2
    assert m2_universal().dim(1) == 12


def test_02_right_leibniz_and_derivation_law():
    for which in FIXTURES:
        conn = pipeline(which)[0]
        assert check_right_leibniz(conn).ok
        ifo = induced_first_order(conn)
        ids = {v.check_id: v for v in ifo.verdicts}
        assert ids["d-nabla-derivation"].ok
        assert ids["left-leibniz-induced"].ok


def test_03_kappa1_diagram_commutes():
    for which in FIXTURES:
        conn = pipeline(which)[0]
        k1 = kappa1(conn)
        ids = {v.check_id: v for v in k1.verdicts}
        assert ids["kappa1-diagram"].ok
        assert ids["kappa1-bimodule-linear"].ok


def test_04_sigma_dichotomy():
    for level in ("universal", "quotient"):
        res = sigma_exists(conn_d(level))
        assert res.exists
        ids = {v.check_id: v for v in res.verdicts}
        assert ids["sigma-left-leibniz"].ok
    c = twist()
    k1 = kappa1(c)
    res = sigma_exists(c, k1)
    assert not res.exists
    assert res.witness_bar is not None
    assert not k1.op(res.witness_bar).is_zero()


def test_05_curvature_linearity_report():
    for which in FIXTURES:
        conn, _, _, om = pipeline(which)
        res = curvature(conn)
        assert any(v.check_id == "curvature-right-omega-linear" and v.ok
                   for v in res.verdicts)
        ids = {v.check_id: v for v in om.verdicts}
        assert ids["curvature-left-linear-on-omega-m"].ok
    grass_res = curvature(pipeline("grass")[0])
    assert not grass_res.left_linear
    assert grass_res.witness is not None


def test_06_j_closure():
    for which in FIXTURES:
        j = pipeline(which)[2]
        assert j.dims()[0] == 0 and j.dims()[1] == 0
        ids = {v.check_id: v for v in j.verdicts}
        assert ids["j-degrees-0-1-vanish"].ok
        assert ids["j-closure"].ok


def test_07_d_nabla_squared_zero():
    for which in FIXTURES:
        ic = induced(which)
        assert any(v.check_id == "d-nabla-squared-zero" and v.ok
                   for v in ic.verdicts)
    # on the gauge fixture the unfactored nabla-hat square is nonzero
    conn = pipeline("grass")[0]
    squares = []
    for i in range(conn.module.algebra.dim):
        f_hat = kappa0_op(conn, conn.module.algebra.basis_vec(i))
        squares.append(nabla_hat(conn, nabla_hat(conn, f_hat)))
    assert any(not s.is_zero() for s in squares)


def test_08_sigma_u_full_degree_identities():
    for which in ("flat", "flatq"):
        sf = sigma_full(induced(which))
        ids = {v.check_id: v for v in sf.verdicts}
        assert ids["sigma-u-multiplicative"].ok
        assert ids["sigma-u-derivation"].ok
        assert ids["sigma-all-degrees"].ok


def test_09_tensor_product_routes():
    for which in FIXTURES:
        conn = pipeline(which)[0]
        pair = degeneracy_submodules(conn.module.as_right_module(),
                                     conn.module)
        assert degeneracy_brute(pair).ok
    for which in ("flat", "flatq"):
        conn = pipeline(which)[0]
        ic = induced(which)
        rc = RightConnection(conn.module, conn.calculus, conn.nabla)
        kap = preceq(ic.calculus, conn.calculus)[0]
        nu = nu_hat(rc.module, kap)
        tco = tensor_connection_original(rc, conn, ic, nu, sigma_exists(conn))
        assert all(v.ok for v in tco.verdicts)
        assert any(v.check_id == "tensor-route-agreement"
                   for v in tco.verdicts)
        assoc = associated_connection(rc, nu)
        assert assoc.exists
        assert any(v.check_id == "associated-square" and v.ok
                   for v in assoc.verdicts)
        tci = tensor_connection_induced(assoc.connection, conn, ic)
        assert all(v.ok for v in tci.verdicts)
        assert tci.matrix == tco.matrix


def test_10_deterministic_reports():
    first = cli.run("all", parse_model(str(MODELS / "a2_flat.model")))
    second = cli.run("all", parse_model(str(MODELS / "a2_flat.model")))
    assert first.to_json().encode() == second.to_json().encode()
    assert first.summary == "pass"
