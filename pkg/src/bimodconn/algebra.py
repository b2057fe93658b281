"""Finite-dimensional algebras, bimodules, tensor products over A, Hom spaces.

An algebra is given by structure constants on a fixed basis; modules are
given by dense action matrices per algebra basis element.  All constructions
reduce to kernels and images of explicit rational matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import anchors
from .linalg import (DimensionError, LinMap, Mat, Space, SpanBuilder, Vec,
                     frac, identity_mat, is_zero_vec, mat_mul, mat_sub,
                     mat_vec, null_space, quotient, QuotientSpace, row_reduce,
                     vec_add, vec_scale, zero_mat, zeros)
from .report import Verdict, failed, passed


@dataclass(frozen=True)
class Algebra:
    """Associative unital algebra via structure constants.

    ``structure[i][j]`` holds the coordinates of e_i · e_j; ``unit`` the
    coordinates of the two-sided identity.
    """

    dim: int
    structure: tuple[tuple[tuple[Fraction, ...], ...], ...]
    unit: tuple[Fraction, ...]

    @staticmethod
    def from_table(structure, unit) -> "Algebra":
        n = len(structure)
        return Algebra(n,
                       tuple(tuple(tuple(frac(x) for x in cell)
                                   for cell in row) for row in structure),
                       tuple(frac(x) for x in unit))

    def basis_vec(self, i: int) -> Vec:
        v = zeros(self.dim)
        v[i] = Fraction(1)
        return v

    def unit_vec(self) -> Vec:
        return list(self.unit)

    def mult(self, u: Vec, v: Vec) -> Vec:
        out = zeros(self.dim)
        for i, ci in enumerate(u):
            if ci == 0:
                continue
            for j, cj in enumerate(v):
                if cj == 0:
                    continue
                c = ci * cj
                for k, s in enumerate(self.structure[i][j]):
                    if s:
                        out[k] += c * s
        return out

    def left_mult_matrix(self, v: Vec) -> Mat:
        """Matrix of x ↦ v·x on A."""
        m = zero_mat(self.dim, self.dim)
        for j in range(self.dim):
            col = self.mult(v, self.basis_vec(j))
            for k in range(self.dim):
                m[k][j] = col[k]
        return m

    def right_mult_matrix(self, v: Vec) -> Mat:
        """Matrix of x ↦ x·v on A."""
        m = zero_mat(self.dim, self.dim)
        for j in range(self.dim):
            col = self.mult(self.basis_vec(j), v)
            for k in range(self.dim):
                m[k][j] = col[k]
        return m

    def multiplication_map(self) -> LinMap:
        """μ: A⊗A → A on the plain tensor basis e_i⊗e_j (index i·n + j)."""
        n = self.dim
        m = zero_mat(n, n * n)
        for i in range(n):
            for j in range(n):
                col = self.structure[i][j]
                for k in range(n):
                    m[k][i * n + j] = col[k]
        return LinMap.from_matrix(Space.standard(n * n), Space.standard(n), m)

    def regular_bimodule(self) -> "Bimodule":
        """A as a bimodule over itself via left/right multiplication."""
        left = [self.left_mult_matrix(self.basis_vec(i)) for i in range(self.dim)]
        right = [self.right_mult_matrix(self.basis_vec(i)) for i in range(self.dim)]
        return Bimodule.from_actions(self, left, right)


def check_algebra(a: Algebra) -> Verdict:
    """Associativity on all basis triples, unit two-sided on all basis elements."""
    for i in range(a.dim):
        e = a.basis_vec(i)
        if a.mult(a.unit_vec(), e) != e:
            return failed("check-algebra", anchors.ALGEBRA,
                          {"axiom": "left-unit", "basis": i})
        if a.mult(e, a.unit_vec()) != e:
            return failed("check-algebra", anchors.ALGEBRA,
                          {"axiom": "right-unit", "basis": i})
    for i in range(a.dim):
        for j in range(a.dim):
            ij = a.mult(a.basis_vec(i), a.basis_vec(j))
            for k in range(a.dim):
                lhs = a.mult(ij, a.basis_vec(k))
                rhs = a.mult(a.basis_vec(i),
                             a.mult(a.basis_vec(j), a.basis_vec(k)))
                if lhs != rhs:
                    return failed("check-algebra", anchors.ALGEBRA,
                                  {"axiom": "associativity",
                                   "triple": [i, j, k]})
    return passed("check-algebra", anchors.ALGEBRA, {"dim": a.dim})


def _action_matrix(actions: list[Mat], f: Vec) -> Mat:
    out = zero_mat(len(actions[0]), len(actions[0]))
    for i, c in enumerate(f):
        if c == 0:
            continue
        m = actions[i]
        for r in range(len(out)):
            row = m[r]
            orow = out[r]
            for s in range(len(orow)):
                if row[s]:
                    orow[s] += c * row[s]
    return out


@dataclass(frozen=True)
class RightModule:
    """Finite-dimensional right module via one action matrix per basis element."""

    dim: int
    algebra: Algebra
    right_action: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @staticmethod
    def from_action(algebra: Algebra, right: list[Mat]) -> "RightModule":
        return RightModule(len(right[0]), algebra,
                           tuple(tuple(tuple(frac(x) for x in row) for row in m)
                                 for m in right))

    def right_matrices(self) -> list[Mat]:
        return [[list(r) for r in m] for m in self.right_action]

    def act_right(self, m: Vec, f: Vec) -> Vec:
        return mat_vec(_action_matrix(self.right_matrices(), f), m)

    def right_matrix(self, f: Vec) -> Mat:
        return _action_matrix(self.right_matrices(), f)

    def basis_vec(self, i: int) -> Vec:
        v = zeros(self.dim)
        v[i] = Fraction(1)
        return v


@dataclass(frozen=True)
class Bimodule:
    """Finite-dimensional A-bimodule with commuting left and right actions."""

    dim: int
    algebra: Algebra
    left_action: tuple[tuple[tuple[Fraction, ...], ...], ...]
    right_action: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @staticmethod
    def from_actions(algebra: Algebra, left: list[Mat], right: list[Mat]) -> "Bimodule":
        freeze = lambda ms: tuple(tuple(tuple(frac(x) for x in row)
                                        for row in m) for m in ms)
        return Bimodule(len(left[0]), algebra, freeze(left), freeze(right))

    def left_matrices(self) -> list[Mat]:
        return [[list(r) for r in m] for m in self.left_action]

    def right_matrices(self) -> list[Mat]:
        return [[list(r) for r in m] for m in self.right_action]

    def left_matrix(self, f: Vec) -> Mat:
        return _action_matrix(self.left_matrices(), f)

    def right_matrix(self, f: Vec) -> Mat:
        return _action_matrix(self.right_matrices(), f)

    def act_left(self, f: Vec, m: Vec) -> Vec:
        return mat_vec(self.left_matrix(f), m)

    def act_right(self, m: Vec, f: Vec) -> Vec:
        return mat_vec(self.right_matrix(f), m)

    def basis_vec(self, i: int) -> Vec:
        v = zeros(self.dim)
        v[i] = Fraction(1)
        return v

    def as_right_module(self) -> RightModule:
        return RightModule(self.dim, self.algebra, self.right_action)


def right_module_generators(mod) -> list[int]:
    """Greedy minimal-ish generating set of basis indices over the right
    action: every basis vector lies in the right submodule the chosen
    indices generate.  Deterministic (ascending basis order)."""
    from .linalg import SpanBuilder
    gens: list[int] = []
    reached = SpanBuilder(mod.dim)
    mats = mod.right_matrices()
    for i in range(mod.dim):
        v = mod.basis_vec(i)
        if reached.contains(v):
            continue
        gens.append(i)
        stack = [v]
        reached.add(v)
        while stack:
            w = stack.pop()
            for m in mats:
                u = mat_vec(m, w)
                if reached.add(u):
                    stack.append(u)
    return gens


def _check_one_sided(mod, matrices: list[Mat], side: str, check_id: str,
                     anchor: str) -> Verdict | None:
    a = mod.algebra
    unit_m = _action_matrix(matrices, a.unit_vec())
    if unit_m != identity_mat(mod.dim):
        return failed(check_id, anchor, {"axiom": f"{side}-unit"})
    for i in range(a.dim):
        for j in range(a.dim):
            prod = a.mult(a.basis_vec(i), a.basis_vec(j))
            m_prod = _action_matrix(matrices, prod)
            if side == "left":
                m_comp = mat_mul(matrices[i], matrices[j])
            else:
                m_comp = mat_mul(matrices[j], matrices[i])
            if m_prod != m_comp:
                return failed(check_id, anchor,
                              {"axiom": f"{side}-associativity", "pair": [i, j]})
    return None


def check_right_module(n: RightModule) -> Verdict:
    bad = _check_one_sided(n, n.right_matrices(), "right",
                           "check-right-module", anchors.RIGHT_MODULE)
    if bad is not None:
        return bad
    return passed("check-right-module", anchors.RIGHT_MODULE, {"dim": n.dim})


def check_bimodule(m: Bimodule) -> Verdict:
    """Unitality, action associativity and left/right commutation, all basis tuples."""
    left, right = m.left_matrices(), m.right_matrices()
    for side, mats in (("left", left), ("right", right)):
        bad = _check_one_sided(m, mats, side, "check-bimodule", anchors.BIMODULE)
        if bad is not None:
            return bad
    for i in range(m.algebra.dim):
        for j in range(m.algebra.dim):
            if mat_mul(right[j], left[i]) != mat_mul(left[i], right[j]):
                return failed("check-bimodule", anchors.BIMODULE,
                              {"axiom": "left-right-commutation", "pair": [i, j]})
    return passed("check-bimodule", anchors.BIMODULE, {"dim": m.dim})


@dataclass
class BalancedTensor:
    """X ⊗_A Y: the plain tensor product modulo balancing relations.

    Retains the lift (section) and project maps so elements can move between
    representative and class form deterministically.
    """

    left_factor: object   # Bimodule or RightModule
    right_factor: Bimodule
    quotient: QuotientSpace

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def plain_dim(self) -> int:
        return self.left_factor.dim * self.right_factor.dim

    def pure_index(self, i: int, j: int) -> int:
        return i * self.right_factor.dim + j

    def pure(self, x: Vec, y: Vec) -> Vec:
        """Plain-tensor coordinates of x⊗y."""
        out = zeros(self.plain_dim)
        for i, ci in enumerate(x):
            if ci == 0:
                continue
            for j, cj in enumerate(y):
                if cj:
                    out[self.pure_index(i, j)] = ci * cj
        return out

    def project(self, plain: Vec) -> Vec:
        return self.quotient.project(plain)

    def project_pure(self, x: Vec, y: Vec) -> Vec:
        return self.project(self.pure(x, y))

    def lift(self, cls: Vec) -> Vec:
        return self.quotient.lift(cls)

    def _plain_right_matrix(self, f: Vec) -> Mat:
        ry = self.right_factor.right_matrix(f)
        return _kron_right(self.left_factor.dim, ry)

    def _plain_left_matrix(self, f: Vec) -> Mat:
        lx = self.left_factor.left_matrix(f)  # requires a Bimodule left factor
        return _kron_left(lx, self.right_factor.dim)

    def induced_right_matrix(self, f: Vec) -> Mat:
        p, s = self.quotient.projection.mat(), self.quotient.section.mat()
        return mat_mul(p, mat_mul(self._plain_right_matrix(f), s))

    def induced_left_matrix(self, f: Vec) -> Mat:
        p, s = self.quotient.projection.mat(), self.quotient.section.mat()
        return mat_mul(p, mat_mul(self._plain_left_matrix(f), s))

    def as_bimodule(self) -> Bimodule:
        a = self.left_factor.algebra
        left = [self.induced_left_matrix(a.basis_vec(i)) for i in range(a.dim)]
        right = [self.induced_right_matrix(a.basis_vec(i)) for i in range(a.dim)]
        return Bimodule.from_actions(a, left, right)

    def as_right_module(self) -> RightModule:
        a = self.left_factor.algebra
        right = [self.induced_right_matrix(a.basis_vec(i)) for i in range(a.dim)]
        return RightModule.from_action(a, right)


def _kron_left(lx: Mat, ydim: int) -> Mat:
    xdim = len(lx)
    out = zero_mat(xdim * ydim, xdim * ydim)
    for i in range(xdim):
        for k in range(xdim):
            c = lx[i][k]
            if c:
                for j in range(ydim):
                    out[i * ydim + j][k * ydim + j] = c
    return out


def _kron_right(xdim: int, ry: Mat) -> Mat:
    ydim = len(ry)
    out = zero_mat(xdim * ydim, xdim * ydim)
    for j in range(ydim):
        for l in range(ydim):
            c = ry[j][l]
            if c:
                for i in range(xdim):
                    out[i * ydim + j][i * ydim + l] = c
    return out


def balancing_relations(x, y: Bimodule) -> list[Vec]:
    """Spanning set of (x·f)⊗y − x⊗(f·y) over all basis triples."""
    xd, yd = x.dim, y.dim
    rels = []
    a = x.algebra
    for i in range(xd):
        xi = x.basis_vec(i)
        for fi in range(a.dim):
            f = a.basis_vec(fi)
            xf = x.act_right(xi, f)
            for j in range(yd):
                yj = y.basis_vec(j)
                fy = y.act_left(f, yj)
                rel = zeros(xd * yd)
                for k, c in enumerate(xf):
                    if c:
                        rel[k * yd + j] += c
                for l, c in enumerate(fy):
                    if c:
                        rel[i * yd + l] -= c
                if not is_zero_vec(rel):
                    rels.append(rel)
    return rels


def tensor_over_A(x, y: Bimodule) -> BalancedTensor:
    """Balanced tensor product X⊗_AY of a right module X and a bimodule Y."""
    if x.algebra is not y.algebra and x.algebra != y.algebra:
        raise DimensionError("tensor factors live over different algebras")
    plain = Space.standard(x.dim * y.dim)
    span = SpanBuilder(plain.dim)
    for rel in balancing_relations(x, y):
        span.add(rel)
    q = quotient(plain, span.to_space(plain))
    return BalancedTensor(x, y, q)


@dataclass
class RightAHomSpace:
    """Space of right-A-linear maps X → Y, as explicit matrices."""

    source: RightModule
    target: RightModule
    basis: list[Mat]          # each a target.dim x source.dim matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectorize(self, m: Mat) -> Vec:
        return [m[r][c] for r in range(self.target.dim)
                for c in range(self.source.dim)]

    def coords(self, m: Mat) -> Vec | None:
        span = SpanBuilder(self.target.dim * self.source.dim)
        for b in self.basis:
            span.add(self.vectorize(b))
        return span.coords(self.vectorize(m))

    def contains(self, m: Mat) -> bool:
        return self.coords(m) is not None


def is_right_linear(m: Mat, source, target) -> bool:
    """Does the matrix m satisfy m∘R_f = R_f∘m for all algebra basis f?"""
    a = source.algebra
    for i in range(a.dim):
        f = a.basis_vec(i)
        if mat_mul(m, source.right_matrix(f)) != mat_mul(target.right_matrix(f), m):
            return False
    return True


def right_hom_space(x, y) -> RightAHomSpace:
    """Solve φ(m·f) = φ(m)·f for φ: X → Y linear; return a basis of solutions."""
    xs = x.as_right_module() if isinstance(x, Bimodule) else x
    ys = y.as_right_module() if isinstance(y, Bimodule) else y
    xd, yd = xs.dim, ys.dim
    a = xs.algebra
    rows: list[Vec] = []
    # unknowns: phi[r][c], vectorized row-major (index r*xd + c)
    for i in range(a.dim):
        rx = xs.right_matrix(a.basis_vec(i))
        ry = ys.right_matrix(a.basis_vec(i))
        for r in range(yd):
            for c in range(xd):
                row = zeros(yd * xd)
                # (phi @ rx)[r][c] = sum_k phi[r][k] rx[k][c]
                for k in range(xd):
                    if rx[k][c]:
                        row[r * xd + k] += rx[k][c]
                # (ry @ phi)[r][c] = sum_k ry[r][k] phi[k][c]
                for k in range(yd):
                    if ry[r][k]:
                        row[k * xd + c] -= ry[r][k]
                if not is_zero_vec(row):
                    rows.append(row)
    if rows:
        sols = null_space(rows, yd * xd)
    else:
        # no constraints: every linear map is right-A-linear
        sols = []
        for p in range(yd * xd):
            v = zeros(yd * xd)
            v[p] = Fraction(1)
            sols.append(v)
    basis = [[[v[r * xd + c] for c in range(xd)] for r in range(yd)]
             for v in sols]
    return RightAHomSpace(xs, ys, basis)


@dataclass
class Kappa0:
    """The left-multiplication embedding f ↦ f̂ of A into End^A(M)."""

    algebra: Algebra
    module: Bimodule
    operators: list[Mat]      # f̂ for each algebra basis element
    verdict: Verdict

    def operator(self, f: Vec) -> Mat:
        out = zero_mat(self.module.dim, self.module.dim)
        for i, c in enumerate(f):
            if c:
                out = [[a + c * b for a, b in zip(ra, rb)]
                       for ra, rb in zip(out, self.operators[i])]
        return out

    def image_rank(self) -> int:
        rows = [[m[r][c] for r in range(self.module.dim)
                 for c in range(self.module.dim)] for m in self.operators]
        rank, _, _ = row_reduce(rows)
        return rank

    @property
    def injective(self) -> bool:
        return self.image_rank() == self.algebra.dim


def kappa0(a: Algebra, m: Bimodule) -> Kappa0:
    """Left-multiplication operators, verified right-A-linear and multiplicative."""
    ops = [m.left_matrix(a.basis_vec(i)) for i in range(a.dim)]
    mod = m.as_right_module()
    for i, op in enumerate(ops):
        if not is_right_linear(op, mod, mod):
            return Kappa0(a, m, ops,
                          failed("kappa0-right-linear", anchors.KAPPA0,
                                 {"basis": i}))
    for i in range(a.dim):
        for j in range(a.dim):
            prod_op = m.left_matrix(a.mult(a.basis_vec(i), a.basis_vec(j)))
            if prod_op != mat_mul(ops[i], ops[j]):
                return Kappa0(a, m, ops,
                              failed("kappa0-multiplicative", anchors.KAPPA0,
                                     {"pair": [i, j]}))
    v = passed("kappa0", anchors.KAPPA0, {"image_rank": None})
    k = Kappa0(a, m, ops, v)
    v.dims = {"image_rank": k.image_rank(), "algebra_dim": a.dim}
    return k
