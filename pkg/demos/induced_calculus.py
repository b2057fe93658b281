"""Walkthrough: the differential calculus a connection induces.

A connection on a bimodule M turns left multiplications f-hat into
degree-raising operators via the commutator nabla-hat; the span of
f-hat∘(nabla-hat g-hat)∘h-hat is a new first-order calculus on the algebra,
and iterating the construction gives a full graded calculus (Omega_nabla,
d_nabla).  This script builds it for the flat connection nabla = d on
M = A over the two-point algebra and shows it reproduces the calculus we
started from.
"""

from bimodconn import induced_first_order, kappa1
from bimodconn.curvature import InducedCalculus, OmegaHat, OmegaM, j_ideal
from bimodconn.fixtures import conn_d


def main() -> None:
    conn = conn_d("universal")
    print("calculus dims (degrees 0..3):", conn.calculus.dims())

    ifo = induced_first_order(conn)
    print("dim of the induced degree-one space:", ifo.dim)
    for v in ifo.verdicts:
        print(" ", v.check_id, "->", v.status)

    k1 = kappa1(conn, ifo)
    print("kappa1 rank:", k1.rank(), "(injective)" if k1.injective else "")

    oh = OmegaHat(conn)
    om = OmegaM(conn, j_ideal(conn, oh))
    ic = InducedCalculus(conn, om)
    print("induced calculus dims:", ic.calculus.dims())
    cmp = ic.compare()
    print("induced ⪯ original:", cmp.dims["induced_preceq_calculus"])
    print("original ⪯ induced:", cmp.dims["calculus_preceq_induced"])


if __name__ == "__main__":
    main()
