"""Exact linear algebra over arbitrary-precision rationals.

Vectors are lists of :class:`fractions.Fraction`, matrices are lists of rows.
Everything is computed exactly; there is no floating point anywhere, so every
equality test in the rest of the package is decidable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Vec = list[Fraction]
Mat = list[list[Fraction]]


class DimensionError(ValueError):
    """Raised when shapes or containments do not line up."""


class SurjectivityError(ValueError):
    """Raised when an operation requires a surjective map and got none."""


def frac(x) -> Fraction:
    """Coerce ints, strings like '3/4', or Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def vec(xs) -> Vec:
    return [frac(x) for x in xs]


def mat(rows) -> Mat:
    return [vec(r) for r in rows]


def zeros(n: int) -> Vec:
    return [Fraction(0)] * n


def zero_mat(r: int, c: int) -> Mat:
    return [zeros(c) for _ in range(r)]


def identity_mat(n: int) -> Mat:
    m = zero_mat(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def is_zero_vec(v: Vec) -> bool:
    return all(x == 0 for x in v)


def vec_add(u: Vec, v: Vec) -> Vec:
    return [a + b for a, b in zip(u, v, strict=True)]


def vec_sub(u: Vec, v: Vec) -> Vec:
    return [a - b for a, b in zip(u, v, strict=True)]


def vec_scale(c: Fraction, v: Vec) -> Vec:
    return [c * a for a in v]


_ZERO = Fraction(0)


def mat_vec(m: Mat, v: Vec) -> Vec:
    nz = [(j, c) for j, c in enumerate(v) if c]
    if not nz:
        return [_ZERO] * len(m)
    return [sum((row[j] * c for j, c in nz), _ZERO) for row in m]


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a and b and len(a[0]) != len(b):
        raise DimensionError("matrix product shape mismatch")
    # column-at-a-time so sparse right factors cost O(rows · nnz(column))
    cols = [mat_vec(a, list(cb)) for cb in zip(*b)] if b else []
    return [[col[i] for col in cols] for i in range(len(a))]


def mat_add(a: Mat, b: Mat) -> Mat:
    return [vec_add(ra, rb) for ra, rb in zip(a, b, strict=True)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [vec_sub(ra, rb) for ra, rb in zip(a, b, strict=True)]


def mat_scale(c: Fraction, a: Mat) -> Mat:
    return [vec_scale(c, r) for r in a]


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)] if a else []


def row_reduce(matrix: Mat) -> tuple[int, Mat, list[int]]:
    """Reduced row echelon form with exact arithmetic.

    Returns (rank, rref, pivot_columns).  Deterministic given the input row
    order: pivots are chosen left to right, first nonzero row wins.
    """
    m = [row[:] for row in matrix]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        pr = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return r, m, pivots


def null_space(matrix: Mat, n_cols: int | None = None) -> list[Vec]:
    """Basis of {x : matrix @ x = 0}, deterministic (free columns ascending)."""
    if n_cols is None:
        n_cols = len(matrix[0]) if matrix else 0
    rows = [r for r in matrix if any(x != 0 for x in r)]
    rank, rref, pivots = row_reduce(rows) if rows else (0, [], [])
    pivot_set = set(pivots)
    basis = []
    for fc in range(n_cols):
        if fc in pivot_set:
            continue
        v = zeros(n_cols)
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][fc]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class Space:
    """A finite-dimensional rational vector space.

    A plain coordinate space has ``ambient is None``.  A subspace records the
    enclosing space and a basis given by vectors in ambient coordinates.
    """

    dim: int
    ambient: "Space | None" = None
    basis_in_ambient: tuple[tuple[Fraction, ...], ...] | None = None

    @staticmethod
    def standard(n: int) -> "Space":
        return Space(n)

    @staticmethod
    def subspace(ambient: "Space", basis_vectors: list[Vec]) -> "Space":
        for v in basis_vectors:
            if len(v) != ambient.dim:
                raise DimensionError("basis vector does not live in ambient")
        rank, _, _ = row_reduce(basis_vectors) if basis_vectors else (0, [], [])
        if rank != len(basis_vectors):
            raise DimensionError("basis vectors are linearly dependent")
        return Space(len(basis_vectors), ambient,
                     tuple(tuple(v) for v in basis_vectors))

    @property
    def basis(self) -> list[Vec]:
        if self.basis_in_ambient is None:
            raise DimensionError("plain coordinate space has no ambient basis")
        return [list(v) for v in self.basis_in_ambient]


@dataclass(frozen=True)
class LinMap:
    """Linear map stored as a (codomain.dim x domain.dim) matrix."""

    domain: Space
    codomain: Space
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.matrix) != self.codomain.dim:
            raise DimensionError("matrix row count != codomain dim")
        for row in self.matrix:
            if len(row) != self.domain.dim:
                raise DimensionError("matrix column count != domain dim")

    @staticmethod
    def from_matrix(domain: Space, codomain: Space, m: Mat) -> "LinMap":
        return LinMap(domain, codomain, tuple(tuple(frac(x) for x in row)
                                              for row in m))

    @staticmethod
    def identity(space: Space) -> "LinMap":
        return LinMap.from_matrix(space, space, identity_mat(space.dim))

    @staticmethod
    def zero(domain: Space, codomain: Space) -> "LinMap":
        return LinMap.from_matrix(domain, codomain,
                                  zero_mat(codomain.dim, domain.dim))

    def mat(self) -> Mat:
        return [list(r) for r in self.matrix]

    def apply(self, v: Vec) -> Vec:
        return mat_vec(self.mat(), v)

    def compose(self, other: "LinMap") -> "LinMap":
        """self after other."""
        if other.codomain.dim != self.domain.dim:
            raise DimensionError("composition shape mismatch")
        return LinMap.from_matrix(other.domain, self.codomain,
                                  mat_mul(self.mat(), other.mat()))

    def add(self, other: "LinMap") -> "LinMap":
        return LinMap.from_matrix(self.domain, self.codomain,
                                  mat_add(self.mat(), other.mat()))

    def sub(self, other: "LinMap") -> "LinMap":
        return LinMap.from_matrix(self.domain, self.codomain,
                                  mat_sub(self.mat(), other.mat()))

    def scale(self, c) -> "LinMap":
        return LinMap.from_matrix(self.domain, self.codomain,
                                  mat_scale(frac(c), self.mat()))

    def rank(self) -> int:
        r, _, _ = row_reduce(self.mat()) if self.matrix else (0, [], [])
        return r

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinMap) and self.matrix == other.matrix
                and self.domain.dim == other.domain.dim
                and self.codomain.dim == other.codomain.dim)


def kernel(f: LinMap) -> Space:
    """Kernel of f as a subspace of f.domain."""
    basis = null_space(f.mat(), f.domain.dim)
    return Space.subspace(f.domain, basis)


@dataclass(frozen=True)
class QuotientSpace:
    """total / sub, with a deterministic projection/section pair."""

    total: Space
    sub: Space
    projection: LinMap
    section: LinMap

    @property
    def dim(self) -> int:
        return self.projection.codomain.dim

    @property
    def space(self) -> Space:
        return self.projection.codomain

    def project(self, v: Vec) -> Vec:
        if self.sub.dim == 0:
            return v[:]
        return self.projection.apply(v)

    def lift(self, q: Vec) -> Vec:
        if self.sub.dim == 0:
            return q[:]
        return self.section.apply(q)


def quotient(total: Space, sub: Space) -> QuotientSpace:
    """Quotient of `total` by the subspace `sub`.

    The section maps quotient coordinates to the pivot-complement basis of the
    row reduction of sub's basis, so results are reproducible given input
    ordering.
    """
    if sub.dim == 0:
        sub_basis: Mat = []
    else:
        if sub.ambient is None or sub.ambient.dim != total.dim:
            raise DimensionError("sub is not presented inside total")
        sub_basis = sub.basis
    rank, rref, pivots = (row_reduce(sub_basis) if sub_basis else (0, [], []))
    if rank != sub.dim:
        raise DimensionError("sub basis is degenerate")
    free = [c for c in range(total.dim) if c not in set(pivots)]
    qdim = total.dim - sub.dim
    qspace = Space.standard(qdim)
    # projection: reduce e_i modulo sub, read off free coordinates
    proj = zero_mat(qdim, total.dim)
    for i in range(total.dim):
        v = zeros(total.dim)
        v[i] = Fraction(1)
        for r, pc in enumerate(pivots):
            if v[pc] != 0:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, rref[r])]
        for k, fc in enumerate(free):
            proj[k][i] = v[fc]
    sect = zero_mat(total.dim, qdim)
    for k, fc in enumerate(free):
        sect[fc][k] = Fraction(1)
    q = QuotientSpace(total, sub,
                      LinMap.from_matrix(total, qspace, proj),
                      LinMap.from_matrix(qspace, total, sect))
    return q


def factor_through(f: LinMap, g: LinMap) -> tuple[LinMap | None, Vec | None]:
    """Factor g through the surjection f.

    Returns (h, None) with h∘f = g when kernel(f) ⊆ kernel(g); h is unique
    because f is surjective.  Otherwise returns (None, witness) with a vector
    in ker(f) \\ ker(g).  Raises SurjectivityError when f is not onto.
    """
    if f.domain.dim != g.domain.dim:
        raise DimensionError("f and g must share a domain")
    if f.rank() != f.codomain.dim:
        raise SurjectivityError("factor_through requires f surjective")
    for v in null_space(f.mat(), f.domain.dim):
        if not is_zero_vec(g.apply(v)):
            return None, v
    solver = LinSolver(f.mat())
    cols = []
    for i in range(f.codomain.dim):
        e = zeros(f.codomain.dim)
        e[i] = Fraction(1)
        x = solver.solve(e)
        assert x is not None  # f surjective
        cols.append(g.apply(x))
    h = LinMap.from_matrix(f.codomain, g.codomain, transpose(cols))
    return h, None


class LinSolver:
    """Repeated exact solves of A x = b for a fixed matrix A."""

    def __init__(self, a: Mat):
        self.n_rows = len(a)
        self.n_cols = len(a[0]) if a else 0
        aug = [row[:] + [Fraction(1) if i == j else Fraction(0)
                         for j in range(self.n_rows)]
               for i, row in enumerate(a)]
        rank, rref, pivots = row_reduce(aug) if aug else (0, [], [])
        # keep only pivots within the A block
        self.pivots = [p for p in pivots if p < self.n_cols]
        self.rref = rref
        self.rank = len(self.pivots)
        # sparse view of the transform block, for fast repeated solves
        self._t_rows = [[(j, row[self.n_cols + j])
                         for j in range(self.n_rows) if row[self.n_cols + j]]
                        for row in rref]

    def solve(self, b: Vec) -> Vec | None:
        """One solution of A x = b, or None when inconsistent."""
        if len(b) != self.n_rows:
            raise DimensionError("rhs length mismatch")
        zero = Fraction(0)
        tb = [sum((c * b[j] for j, c in trow if b[j]), zero)
              for trow in self._t_rows]
        for r in range(self.rank, len(self.rref)):
            if tb[r] != 0:
                return None
        x = zeros(self.n_cols)
        for r, pc in enumerate(self.pivots):
            x[pc] = tb[r]
        return x


class SpanBuilder:
    """Incrementally built span with an echelonized internal basis.

    ``add`` returns True when the vector enlarged the span; independent input
    vectors are remembered so callers can recover coordinates in terms of the
    vectors they actually inserted.
    """

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.rows: list[Vec] = []        # echelon rows, pivot-normalized
        self.row_pivots: list[int] = []
        self.row_exprs: list[dict[int, Fraction]] = []  # in inserted basis
        self.basis: list[Vec] = []       # independent inserted vectors

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, v: Vec) -> tuple[Vec, dict[int, Fraction]]:
        v = v[:]
        combo: dict[int, Fraction] = {}
        for row, pc, expr in zip(self.rows, self.row_pivots, self.row_exprs):
            c = v[pc]
            if c != 0:
                v = [a - c * b for a, b in zip(v, row)]
                for k, ce in expr.items():
                    combo[k] = combo.get(k, Fraction(0)) + c * ce
        return v, combo

    def add(self, v: Vec) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionError("vector does not live in the ambient space")
        res, combo = self._reduce(v)
        pc = next((i for i, x in enumerate(res) if x != 0), None)
        if pc is None:
            return False
        idx = len(self.basis)
        self.basis.append(v[:])
        pv = res[pc]
        row = [x / pv for x in res]
        # expression of `row` in inserted vectors: (v - combo·basis)/pv
        expr = {k: -c / pv for k, c in combo.items()}
        expr[idx] = expr.get(idx, Fraction(0)) + Fraction(1) / pv
        # keep rows ordered by pivot for determinism of coords
        pos = next((i for i, p in enumerate(self.row_pivots) if p > pc),
                   len(self.rows))
        self.rows.insert(pos, row)
        self.row_pivots.insert(pos, pc)
        self.row_exprs.insert(pos, expr)
        return True

    def contains(self, v: Vec) -> bool:
        res, _ = self._reduce(v)
        return is_zero_vec(res)

    def coords(self, v: Vec) -> Vec | None:
        """Coordinates of v in the inserted independent basis, or None."""
        res, combo = self._reduce(v)
        if not is_zero_vec(res):
            return None
        out = zeros(len(self.basis))
        for k, c in combo.items():
            out[k] = c
        return out

    def to_space(self, ambient: Space) -> Space:
        return Space.subspace(ambient, [b[:] for b in self.basis])
