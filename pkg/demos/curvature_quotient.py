"""Walkthrough: curvature is only bilinear after quotienting by J.

The square of an extended connection is always right-linear over the
calculus, but in general fails to be left-linear over the algebra.  The
rank-2 module over the 2x2 matrix algebra with a gauge potential shows the
failure with an explicit witness; factoring M⊗Omega by the graded
submodule J generated by second-commutator images repairs it, and on the
quotient both linearities hold.  (This demo runs the full pipeline on the
matrix-algebra fixture and takes a few seconds.)
"""

from bimodconn import curvature
from bimodconn.curvature import OmegaHat, OmegaM, j_ideal
from bimodconn.fixtures import grass
from bimodconn.report import rat_str


def main() -> None:
    conn = grass()
    res = curvature(conn)
    print("curvature is zero:", res.operator.is_zero())
    print("curvature left-linear upstairs:", res.left_linear)
    w = res.witness
    print("witness: algebra basis", w["algebra_basis"],
          "module basis", w["module_basis"],
          "difference", [rat_str(x) for x in w["difference"]])

    j = j_ideal(conn, OmegaHat(conn))
    print("J dims per degree:", j.dims())
    om = OmegaM(conn, j)
    print("Omega(M) dims per degree:", om.dims())
    for v in om.verdicts:
        if v.check_id.startswith("curvature"):
            print(" ", v.check_id, "->", v.status)


if __name__ == "__main__":
    main()
