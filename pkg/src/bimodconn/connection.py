"""Connections on bimodules: ∇̂, the induced first-order calculus, κ₁ and σ.

A connection is stored as the exact matrix of ∇: M → M⊗_AΩ¹ in quotient
class coordinates.  Right-Ω-linear operators of degree r are stored by their
restriction to M (a right-A-linear map M → M⊗_AΩ^r) and extended on demand;
this is faithful because M generates M⊗_AΩ as a right Ω-module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import anchors
from .algebra import BalancedTensor, Bimodule, tensor_over_A
from .calculus import GradedCalculus
from .forms import Forms, _cols_to_mat
from .linalg import (LinMap, Mat, Space, SpanBuilder, Vec, factor_through,
                     mat_mul, mat_vec, zero_mat, zeros)
from .report import Verdict, failed, passed


class Connection:
    """∇: M → M⊗_AΩ¹ with the right Leibniz rule as its defining contract."""

    def __init__(self, module: Bimodule, calculus: GradedCalculus, nabla: Mat):
        self.module = module
        self.calculus = calculus
        self.forms = Forms(module, calculus)
        if len(nabla) != self.forms.dim(1) or \
                (nabla and len(nabla[0]) != module.dim):
            raise ValueError("nabla matrix must be dim(M⊗Ω¹) x dim(M)")
        self.nabla = [row[:] for row in nabla]
        self._ext_mats: dict[int, Mat] = {}

    def nabla_apply(self, m_vec: Vec) -> Vec:
        return mat_vec(self.nabla, m_vec)

    def nabla_ext_plain(self, r: int) -> Mat:
        """Extension on free coordinates: T^u_r → T_{r+1} classes.

        ∇(m_i ⊗ de_j1⋯de_jr) = (∇ m_i)·de_j1⋯de_jr; the a⊗dω term
        vanishes on this basis since d(de_j1⋯de_jr) = 0.
        """
        key = (r, "plain")
        if key not in self._ext_mats:
            f = self.forms
            nt = f.n_tails(r)
            cols = []
            for m_i in range(self.module.dim):
                nm = f.lift(1, self.nabla_apply(self.module.basis_vec(m_i)))
                for bidx in range(nt):
                    beta = f._tails[r][bidx]
                    cols.append(f.project(r + 1, f.concat_tu(1, nm, beta)))
            self._ext_mats[key] = _cols_to_mat(cols, f.dim(r + 1))
        return self._ext_mats[key]

    def nabla_ext_matrix(self, r: int) -> Mat:
        """Extension ∇: T_r → T_{r+1} on quotient class coordinates."""
        if r == 0:
            return [row[:] for row in self.nabla]
        if r not in self._ext_mats:
            f = self.forms
            plain = self.nabla_ext_plain(r)
            cols = []
            for c in range(f.dim(r)):
                q = zeros(f.dim(r))
                q[c] = Fraction(1)
                cols.append(mat_vec(plain, f.lift(r, q)))
            self._ext_mats[r] = _cols_to_mat(cols, f.dim(r + 1))
        return self._ext_mats[r]

    def curvature_matrix(self, r: int) -> Mat:
        """∇∘∇: T_r → T_{r+2}."""
        return mat_mul(self.nabla_ext_matrix(r + 1), self.nabla_ext_matrix(r))


def check_right_leibniz(c: Connection) -> Verdict:
    """∇(a·f) = (∇a)·f + a⊗df on all basis pairs, exactly."""
    m, a = c.module, c.module.algebra
    f = c.forms
    for ai in range(m.dim):
        av = m.basis_vec(ai)
        na = c.nabla_apply(av)
        for fi in range(a.dim):
            fv = a.basis_vec(fi)
            lhs = c.nabla_apply(m.act_right(av, fv))
            rhs = f.act_right(1, na, fv)
            df_bar = c.calculus.universal.from_emb(
                1, c.calculus.universal.d_emb(fv, 0))
            rhs = [x + y for x, y in
                   zip(rhs, f.class_of_pair_bar(1, av, df_bar))]
            if lhs != rhs:
                return failed("right-leibniz", anchors.RIGHT_LEIBNIZ,
                              {"module_basis": ai, "algebra_basis": fi})
    return passed("right-leibniz", anchors.RIGHT_LEIBNIZ)


@dataclass
class DegreeRHom:
    """Degree-r right-Ω-linear operator, stored by its restriction to M."""

    forms: Forms
    degree: int
    matrix: Mat              # dim T_degree x dim M
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def apply(self, m_vec: Vec) -> Vec:
        return mat_vec(self.matrix, m_vec)

    def _lifted_images(self) -> list[Vec]:
        if "img" not in self._cache:
            f = self.forms
            self._cache["img"] = [
                f.lift(self.degree, self.apply(f.module.basis_vec(i)))
                for i in range(f.module.dim)]
        return self._cache["img"]

    def ext_matrix(self, s: int) -> Mat:
        """Right-Ω-linear extension T_s → T_{degree+s}, Φ(a⊗ω) = Φ(a)·ω."""
        if s == 0:
            return self.matrix
        if s in self._cache:
            return self._cache[s]
        f = self.forms
        r = self.degree
        nt = f.n_tails(s)
        imgs = self._lifted_images()
        cols = []
        for c in range(f.dim(s)):
            q = zeros(f.dim(s))
            q[c] = Fraction(1)
            tu = f.lift(s, q)
            out = zeros(f.tu_dim(r + s))
            for flat, cc in enumerate(tu):
                if cc == 0:
                    continue
                m_i, bidx = divmod(flat, nt)
                piece = f.concat_tu(r, imgs[m_i], f._tails[s][bidx])
                for k, pv in enumerate(piece):
                    if pv:
                        out[k] += cc * pv
            cols.append(f.project(r + s, out))
        self._cache[s] = _cols_to_mat(cols, f.dim(r + s))
        return self._cache[s]

    def compose(self, other: "DegreeRHom") -> "DegreeRHom":
        """self ∘ other (other applied first)."""
        return DegreeRHom(self.forms, self.degree + other.degree,
                          mat_mul(self.ext_matrix(other.degree), other.matrix))

    def add(self, other: "DegreeRHom") -> "DegreeRHom":
        return DegreeRHom(self.forms, self.degree,
                          [[a + b for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.matrix, other.matrix)])

    def scale(self, c: Fraction) -> "DegreeRHom":
        return DegreeRHom(self.forms, self.degree,
                          [[c * x for x in row] for row in self.matrix])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def vectorize(self) -> Vec:
        return [x for row in self.matrix for x in row]

    def right_linearity_witness(self) -> tuple[int, int] | None:
        """(module_basis, algebra_basis) violating Φ(a·f) = Φ(a)·f, or None."""
        f = self.forms
        m, a = f.module, f.algebra
        for ai in range(m.dim):
            av = m.basis_vec(ai)
            img = self.apply(av)
            for fi in range(a.dim):
                fv = a.basis_vec(fi)
                lhs = self.apply(m.act_right(av, fv))
                rhs = f.act_right(self.degree, img, fv)
                if lhs != rhs:
                    return (ai, fi)
        return None


def kappa0_op(c: Connection, f_vec: Vec) -> DegreeRHom:
    """The left-multiplication operator f̂ as a degree-0 right-Ω operator."""
    return DegreeRHom(c.forms, 0, c.module.left_matrix(f_vec))


def nabla_hat(c: Connection, phi: DegreeRHom) -> DegreeRHom:
    """∇̂Φ = ∇∘Φ − (−1)^r Φ∘∇, a degree r+1 right-Ω operator."""
    r = phi.degree
    if r + 1 > c.calculus.D:
        raise ValueError("degree overflow past truncation")
    first = mat_mul(c.nabla_ext_matrix(r), phi.matrix)
    second = mat_mul(phi.ext_matrix(1), c.nabla)
    sign = Fraction(-1) if r % 2 == 0 else Fraction(1)
    # ∇∘Φ + (−(−1)^r)·Φ∘∇
    m = [[a + sign * b for a, b in zip(ra, rb)]
         for ra, rb in zip(first, second)]
    return DegreeRHom(c.forms, r + 1, m)


@dataclass
class InducedFirstOrder:
    """Ω¹_∇ ⊆ Hom^A(M, M⊗_AΩ¹) with d_∇ = ∇̂∘κ₀ and actions f·Φ·g = f̂∘Φ∘ĝ."""

    connection: Connection
    span: SpanBuilder                      # vectorized operator matrices
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.span.dim

    def d_nabla(self, f_vec: Vec) -> DegreeRHom:
        return nabla_hat(self.connection, kappa0_op(self.connection, f_vec))

    def left_op_matrix(self, f_vec: Vec) -> Mat:
        """Matrix of Φ ↦ f̂∘Φ on operator matrices (degree-0 extension)."""
        c = self.connection
        out = zero_mat(c.forms.dim(1), c.forms.dim(1))
        for i, cc in enumerate(f_vec):
            if cc:
                la = c.forms.left_action_matrix(1, i)
                out = [[a + cc * b for a, b in zip(ra, rb)]
                       for ra, rb in zip(out, la)]
        return out

    def op_coords(self, phi: DegreeRHom) -> Vec | None:
        return self.span.coords(phi.vectorize())

    def contains(self, phi: DegreeRHom) -> bool:
        return self.span.contains(phi.vectorize())

    def basis_ops(self) -> list[DegreeRHom]:
        c = self.connection
        m = c.module.dim
        t1 = c.forms.dim(1)
        return [DegreeRHom(c.forms, 1,
                           [[v[r * m + s] for s in range(m)] for r in range(t1)])
                for v in self.span.basis]

    def as_bimodule(self) -> Bimodule:
        """Ω¹_∇ as an A-bimodule in span coordinates."""
        c = self.connection
        a = c.module.algebra
        left, right = [], []
        for i in range(a.dim):
            f = a.basis_vec(i)
            lcols, rcols = [], []
            for op in self.basis_ops():
                lphi = DegreeRHom(c.forms, 1,
                                  mat_mul(self.left_op_matrix(f), op.matrix))
                rphi = DegreeRHom(c.forms, 1,
                                  mat_mul(op.matrix, c.module.left_matrix(f)))
                lc, rc = self.op_coords(lphi), self.op_coords(rphi)
                assert lc is not None and rc is not None
                lcols.append(lc)
                rcols.append(rc)
            left.append(_cols_to_mat(lcols, self.dim))
            right.append(_cols_to_mat(rcols, self.dim))
        return Bimodule.from_actions(a, left, right)

    def op_from_coords(self, coords: Vec) -> DegreeRHom:
        c = self.connection
        m = c.module.dim
        t1 = c.forms.dim(1)
        acc = zeros(t1 * m)
        for k, cc in enumerate(coords):
            if cc:
                acc = [a + cc * b for a, b in zip(acc, self.span.basis[k])]
        return DegreeRHom(c.forms, 1,
                          [[acc[r * m + s] for s in range(m)] for r in range(t1)])


def induced_first_order(c: Connection) -> InducedFirstOrder:
    """Span of {f̂∘∇̂(ĝ)∘ĥ} with the derivation-law and left-Leibniz checks."""
    a = c.module.algebra
    m = c.module
    span = SpanBuilder(c.forms.dim(1) * m.dim)
    d_ops = [nabla_hat(c, kappa0_op(c, a.basis_vec(g))) for g in range(a.dim)]
    ifo = InducedFirstOrder(c, span)
    for g in range(a.dim):
        w = d_ops[g].right_linearity_witness()
        if w is not None:
            ifo.verdicts.append(failed("nabla-hat-right-linear",
                                       anchors.NABLA_HAT,
                                       {"algebra_basis": g, "witness": w}))
            return ifo
    for f in range(a.dim):
        lf = ifo.left_op_matrix(a.basis_vec(f))
        for g in range(a.dim):
            for h in range(a.dim):
                op = mat_mul(lf, mat_mul(d_ops[g].matrix,
                                         m.left_matrix(a.basis_vec(h))))
                span.add([x for row in op for x in row])
    # derivation law: ∇̂(f̂∘ĝ) = (∇̂f̂)∘ĝ + f̂∘(∇̂ĝ)
    for f in range(a.dim):
        for g in range(a.dim):
            prod = kappa0_op(c, a.mult(a.basis_vec(f), a.basis_vec(g)))
            lhs = nabla_hat(c, prod).matrix
            rhs1 = mat_mul(d_ops[f].matrix, m.left_matrix(a.basis_vec(g)))
            rhs2 = mat_mul(ifo.left_op_matrix(a.basis_vec(f)), d_ops[g].matrix)
            rhs = [[x + y for x, y in zip(rx, ry)] for rx, ry in zip(rhs1, rhs2)]
            if lhs != rhs:
                ifo.verdicts.append(failed("d-nabla-derivation",
                                           anchors.DERIVATION_SINCE,
                                           {"pair": [f, g]}))
                return ifo
    ifo.verdicts.append(passed("d-nabla-derivation", anchors.DERIVATION_SINCE))
    # left Leibniz in the induced calculus: ∇(fa) = (d_∇f)(a) + f∇a
    ok = True
    for f in range(a.dim):
        fv = a.basis_vec(f)
        for ai in range(m.dim):
            av = m.basis_vec(ai)
            lhs = c.nabla_apply(m.act_left(fv, av))
            rhs = vec_sum(d_ops[f].apply(av),
                          c.forms.act_left(1, fv, c.nabla_apply(av)))
            if lhs != rhs:
                ifo.verdicts.append(failed("left-leibniz-induced",
                                           anchors.INDUCED_SUBGROUP,
                                           {"pair": [f, ai]}))
                ok = False
                break
        if not ok:
            break
    if ok:
        ifo.verdicts.append(passed("left-leibniz-induced",
                                   anchors.INDUCED_SUBGROUP,
                                   {"dim_omega1_nabla": span.dim}))
    return ifo


def vec_sum(u: Vec, v: Vec) -> Vec:
    return [a + b for a, b in zip(u, v)]


@dataclass
class Kappa1:
    """κ₁: Ω¹_u → Ω¹_∇ with κ₁∘d_u = d_∇, as an exact matrix on bar coords."""

    connection: Connection
    induced: InducedFirstOrder
    linmap: LinMap                       # bar Ω¹_u → span coords of Ω¹_∇
    verdicts: list[Verdict] = field(default_factory=list)

    def op(self, alpha_bar: Vec) -> DegreeRHom:
        coords = self.linmap.apply(alpha_bar)
        return self.induced.op_from_coords(coords)

    def rank(self) -> int:
        return self.linmap.rank()

    @property
    def injective(self) -> bool:
        return self.rank() == self.linmap.domain.dim


def kappa1(c: Connection, induced: InducedFirstOrder | None = None) -> Kappa1:
    """Basis element f·dg ↦ f̂∘∇̂(ĝ), with linearity and diagram checks."""
    if induced is None:
        induced = induced_first_order(c)
    uni = c.calculus.universal
    a = c.module.algebra
    nt = len(uni.tails(1))
    cols = []
    for i0 in range(a.dim):
        lm = induced.left_op_matrix(a.basis_vec(i0))
        for j in [b[0] for b in uni.tails(1)]:
            op = mat_mul(lm, induced.d_nabla(a.basis_vec(j)).matrix)
            coords = induced.span.coords([x for row in op for x in row])
            assert coords is not None, "kappa1 image must lie in omega1_nabla"
            cols.append(coords)
    linmap = LinMap.from_matrix(Space.standard(uni.bar_dim(1)),
                                Space.standard(induced.dim),
                                _cols_to_mat(cols, induced.dim))
    k = Kappa1(c, induced, linmap)
    # diagram: κ₁ ∘ d_u = d_∇ on all algebra basis elements
    for f in range(a.dim):
        fv = a.basis_vec(f)
        alpha = uni.from_emb(1, uni.d_emb(fv, 0))
        if k.op(alpha).matrix != induced.d_nabla(fv).matrix:
            k.verdicts.append(failed("kappa1-diagram", anchors.DIAGRAM_COMMUTES,
                                     {"algebra_basis": f}))
            return k
    k.verdicts.append(passed("kappa1-diagram", anchors.DIAGRAM_COMMUTES))
    # bimodule linearity: κ₁(f·α·g) = f̂∘κ₁(α)∘ĝ on basis triples
    for f in range(a.dim):
        fl = uni.left_mult_bar_matrix(1, a.basis_vec(f))
        for g in range(a.dim):
            gr = uni.right_mult_bar_matrix(1, a.basis_vec(g))
            for bi in range(uni.bar_dim(1)):
                alpha = zeros(uni.bar_dim(1))
                alpha[bi] = Fraction(1)
                moved = mat_vec(fl, mat_vec(gr, alpha))
                lhs = k.op(moved).matrix
                rhs = mat_mul(induced.left_op_matrix(a.basis_vec(f)),
                              mat_mul(k.op(alpha).matrix,
                                      c.module.left_matrix(a.basis_vec(g))))
                if lhs != rhs:
                    k.verdicts.append(failed("kappa1-bimodule-linear",
                                             anchors.DIAGRAM_COMMUTES,
                                             {"triple": [f, g, bi]}))
                    return k
    k.verdicts.append(passed("kappa1-bimodule-linear", anchors.DIAGRAM_COMMUTES))
    return k


@dataclass
class SigmaMap:
    """σ: Ω¹⊗_AM → M⊗_AΩ¹ (level 'projected') or σ_u (level 'universal')."""

    level: str
    tensor: BalancedTensor               # Ω¹ ⊗_A M
    matrix: Mat                          # dim T_1 x tensor.dim
    verdicts: list[Verdict] = field(default_factory=list)

    def apply(self, cls: Vec) -> Vec:
        return mat_vec(self.matrix, cls)


@dataclass
class SigmaResult:
    exists: bool
    sigma: SigmaMap | None
    witness_bar: Vec | None              # element of K with κ₁-image ≠ 0
    verdicts: list[Verdict] = field(default_factory=list)


def sigma_exists(c: Connection, k1: Kappa1 | None = None) -> SigmaResult:
    """σ exists iff κ₁ annihilates the defining kernel K = I¹ of the calculus.

    On success σ(α⊗a) = κ̂₁(α)(a); the left Leibniz rule ∇(fa) = σ(df⊗a)+f∇a
    is then verified exactly on all basis pairs.  On failure the witness is
    an element of K with nonzero κ₁-image.
    """
    if k1 is None:
        k1 = kappa1(c)
    cal = c.calculus
    pi1 = cal.quotients[1].projection
    g = k1.linmap
    h, wit = factor_through(pi1, g)
    res = SigmaResult(h is not None, None, None)
    if h is None:
        res.witness_bar = wit
        res.verdicts.append(Verdict("sigma-exists", anchors.FACTOR_UNIQUELY,
                                    "absent",
                                    {"kernel_element_bar": wit}))
        return res
    res.verdicts.append(passed("sigma-exists", anchors.FACTOR_UNIQUELY))
    # realize σ on Ω¹ ⊗_A M
    omega1_bimod = cal.degree_bimodule(1)
    tens = tensor_over_A(omega1_bimod, c.module)
    ind = k1.induced
    cols = []
    for col in range(tens.dim):
        q = zeros(tens.dim)
        q[col] = Fraction(1)
        plain = tens.lift(q)
        out = zeros(c.forms.dim(1))
        for flat, cc in enumerate(plain):
            if cc == 0:
                continue
            wi, mj = divmod(flat, c.module.dim)
            wq = zeros(tens.left_factor.dim)
            wq[wi] = Fraction(1)
            op = ind.op_from_coords(h.apply(wq))
            out = vec_sum(out, [cc * x for x in op.apply(c.module.basis_vec(mj))])
        cols.append(out)
    sigma = SigmaMap("projected" if cal.ideal[1].dim else "universal",
                     tens, _cols_to_mat(cols, c.forms.dim(1)))
    res.sigma = sigma
    # well-definedness on balanced classes
    for wi in range(omega1_bimod.dim):
        wq = zeros(omega1_bimod.dim)
        wq[wi] = Fraction(1)
        op = ind.op_from_coords(h.apply(wq))
        for mj in range(c.module.dim):
            direct = op.apply(c.module.basis_vec(mj))
            via = sigma.apply(tens.project_pure(wq, c.module.basis_vec(mj)))
            if direct != via:
                res.verdicts.append(failed("sigma-well-defined",
                                           anchors.GENERALIZED_PERMUTATION,
                                           {"pair": [wi, mj]}))
                return res
    res.verdicts.append(passed("sigma-well-defined",
                               anchors.GENERALIZED_PERMUTATION))
    # left Leibniz rule: ∇(fa) = σ(df ⊗ a) + f ∇a
    a = c.module.algebra
    for f in range(a.dim):
        fv = a.basis_vec(f)
        df_q = cal.d_of_algebra(fv)
        for ai in range(c.module.dim):
            av = c.module.basis_vec(ai)
            lhs = c.nabla_apply(c.module.act_left(fv, av))
            rhs = vec_sum(sigma.apply(tens.project_pure(df_q, av)),
                          c.forms.act_left(1, fv, c.nabla_apply(av)))
            if lhs != rhs:
                res.verdicts.append(failed("sigma-left-leibniz",
                                           anchors.LEFT_LEIBNIZ,
                                           {"pair": [f, ai]}))
                return res
    res.verdicts.append(passed("sigma-left-leibniz", anchors.LEFT_LEIBNIZ))
    return res
