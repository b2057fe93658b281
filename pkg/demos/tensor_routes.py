"""Walkthrough: two routes to a connection on a tensor product N⊗M.

Given a right-module connection on N and a bimodule connection on M, one
can either push the N-side derivative down to the induced calculus with
nu-hat = id⊗kappa-hat and add b⊗(nabla a), or first build the associated
connection on N against (Omega_nabla, d_nabla) and use the interpretation
rule (b⊗Phi)a := b⊗Phi(a).  Both routes are constructed here for the flat
fixture and shown to produce the same matrix.
"""

from bimodconn import preceq, sigma_exists
from bimodconn.curvature import InducedCalculus, OmegaHat, OmegaM, j_ideal
from bimodconn.fixtures import conn_d
from bimodconn.tensorconn import (RightConnection, associated_connection,
                                  degeneracy_brute, degeneracy_submodules,
                                  nu_hat, tensor_connection_induced,
                                  tensor_connection_original)


def main() -> None:
    conn = conn_d("universal")
    ic = InducedCalculus(conn, OmegaM(conn, j_ideal(conn, OmegaHat(conn))))

    pair = degeneracy_submodules(conn.module.as_right_module(), conn.module)
    print("degeneracy kernels N0, M0:", pair.n0.dim, pair.m0.dim)
    print("brute-force pairing oracle:", degeneracy_brute(pair).status)

    rc = RightConnection(conn.module, conn.calculus, conn.nabla)
    kap = preceq(ic.calculus, conn.calculus)[0]
    nu = nu_hat(rc.module, kap)
    print("nu-hat rank in degree 1:", nu.rank(1))

    tco = tensor_connection_original(rc, conn, ic, nu, sigma_exists(conn))
    assoc = associated_connection(rc, nu)
    tci = tensor_connection_induced(assoc.connection, conn, ic)
    for v in tco.verdicts + assoc.verdicts:
        print(" ", v.check_id, "->", v.status)
    print("routes agree entrywise:", tci.matrix == tco.matrix)


if __name__ == "__main__":
    main()
