"""Connections on tensor products N⊗_AM and the associated connection.

Degree-one elements of the induced calculus act on the second factor as
operators (the interpretation (b⊗Φ̂)a := b⊗Φ̂(a)), which makes the sum
(∇′_M b)·a + b⊗∇a a well-defined connection on the balanced tensor product.
The same connection arises from a connection ∇′ against the original
calculus by first pushing ∇′b down with ν̂ = id⊗κ̂; both routes are built
and compared here, together with the degeneracy submodules N₀, M₀ they
assume stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import anchors
from .algebra import (BalancedTensor, Bimodule, RightModule,
                      balancing_relations, tensor_over_A)
from .calculus import CalculusMorphism, GradedCalculus
from .connection import Connection, vec_sum
from .curvature import InducedCalculus
from .forms import Forms, _cols_to_mat
from .linalg import (DimensionError, LinMap, Mat, Space, SpanBuilder, Vec,
                     factor_through, is_zero_vec, kernel, mat_mul, mat_vec,
                     zeros)
from .report import Verdict, failed, passed


# ---------------------------------------------------------------------------
# connections on right modules
# ---------------------------------------------------------------------------

class RightConnection:
    """∇′: N → N⊗_AΩ¹ on a right module, against an arbitrary calculus."""

    def __init__(self, module, calculus: GradedCalculus, nabla: Mat):
        self.module = module
        self.calculus = calculus
        self.forms = Forms(module, calculus)
        if len(nabla) != self.forms.dim(1) or \
                (nabla and len(nabla[0]) != module.dim):
            raise ValueError("nabla matrix must be dim(N⊗Ω¹) x dim(N)")
        self.nabla = [row[:] for row in nabla]
        self._ext_mats: dict = {}

    def nabla_apply(self, b_vec: Vec) -> Vec:
        return mat_vec(self.nabla, b_vec)

    def nabla_ext_plain(self, r: int) -> Mat:
        """Extension on free coordinates: T^u_r → T_{r+1} classes."""
        key = (r, "plain")
        if key not in self._ext_mats:
            f = self.forms
            nt = f.n_tails(r)
            cols = []
            for b_i in range(self.module.dim):
                nb = f.lift(1, self.nabla_apply(self.module.basis_vec(b_i)))
                for bidx in range(nt):
                    beta = f._tails[r][bidx]
                    cols.append(f.project(r + 1, f.concat_tu(1, nb, beta)))
            self._ext_mats[key] = _cols_to_mat(cols, f.dim(r + 1))
        return self._ext_mats[key]

    def nabla_ext_matrix(self, r: int) -> Mat:
        """Extension ∇′: N⊗Ω^r → N⊗Ω^{r+1} on class coordinates."""
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


def check_right_connection(rc: RightConnection) -> Verdict:
    """∇′(b·f) = (∇′b)·f + b⊗df on all basis pairs, exactly."""
    n, a = rc.module, rc.module.algebra
    f = rc.forms
    uni = rc.calculus.universal
    for bi in range(n.dim):
        bv = n.basis_vec(bi)
        nb = rc.nabla_apply(bv)
        for fi in range(a.dim):
            fv = a.basis_vec(fi)
            lhs = rc.nabla_apply(n.act_right(bv, fv))
            df_bar = uni.from_emb(1, uni.d_emb(fv, 0))
            rhs = vec_sum(f.act_right(1, nb, fv),
                          f.class_of_pair_bar(1, bv, df_bar))
            if lhs != rhs:
                return failed("right-leibniz", anchors.RIGHT_LEIBNIZ,
                              {"module_basis": bi, "algebra_basis": fi})
    return passed("right-leibniz", anchors.RIGHT_LEIBNIZ)


# ---------------------------------------------------------------------------
# degeneracy submodules
# ---------------------------------------------------------------------------

@dataclass
class DegeneracyPair:
    """N₀ = {b : b⊗_Aa = 0 ∀a}, M₀ = {a : b⊗_Aa = 0 ∀b}."""

    left: object                 # N, a right module
    right: Bimodule              # M
    tensor: BalancedTensor       # N ⊗_A M
    n0: Space
    m0: Space
    verdicts: list[Verdict] = field(default_factory=list)


def degeneracy_submodules(n, m: Bimodule,
                          tensor: BalancedTensor | None = None) \
        -> DegeneracyPair:
    """Kernels of the two partial pairing maps, verified to be submodules."""
    if tensor is None:
        tensor = tensor_over_A(n, m)
    t = tensor
    # b ↦ (class of b⊗a_i)_i, stacked over the M basis
    n_cols = []
    for j in range(n.dim):
        col: Vec = []
        for i in range(m.dim):
            col.extend(t.project_pure(n.basis_vec(j), m.basis_vec(i)))
        n_cols.append(col)
    n0 = kernel(LinMap.from_matrix(Space.standard(n.dim),
                                   Space.standard(m.dim * t.dim),
                                   _cols_to_mat(n_cols, m.dim * t.dim)))
    # a ↦ (class of b_j⊗a)_j, stacked over the N basis
    m_cols = []
    for i in range(m.dim):
        col = []
        for j in range(n.dim):
            col.extend(t.project_pure(n.basis_vec(j), m.basis_vec(i)))
        m_cols.append(col)
    m0 = kernel(LinMap.from_matrix(Space.standard(m.dim),
                                   Space.standard(n.dim * t.dim),
                                   _cols_to_mat(m_cols, n.dim * t.dim)))
    pair = DegeneracyPair(n, m, t, n0, m0)
    a = m.algebra
    span_n = SpanBuilder(n.dim)
    for v in n0.basis:
        span_n.add(v)
    span_m = SpanBuilder(m.dim)
    for v in m0.basis:
        span_m.add(v)
    for v in n0.basis:
        for fi in range(a.dim):
            if not span_n.contains(n.act_right(v, a.basis_vec(fi))):
                pair.verdicts.append(failed(
                    "degeneracy-submodules", anchors.ASSUME_DEGENERACY,
                    {"side": "N0", "algebra_basis": fi, "vector": v}))
                return pair
    for v in m0.basis:
        for fi in range(a.dim):
            fv = a.basis_vec(fi)
            for moved, side in ((m.act_right(v, fv), "M0-right"),
                                (m.act_left(fv, v), "M0-left")):
                if not span_m.contains(moved):
                    pair.verdicts.append(failed(
                        "degeneracy-submodules", anchors.ASSUME_DEGENERACY,
                        {"side": side, "algebra_basis": fi, "vector": v}))
                    return pair
    pair.verdicts.append(passed("degeneracy-submodules",
                                anchors.ASSUME_DEGENERACY,
                                {"dim_n0": n0.dim, "dim_m0": m0.dim}))
    return pair


def degeneracy_brute(pair: DegeneracyPair) -> Verdict:
    """Cross-check N₀/M₀ against testing b⊗a = 0 on every basis pair.

    The per-basis test recovers the coordinate-aligned part of each kernel;
    agreement is asserted as a small-instance oracle, not proved in general.
    """
    n, m, t = pair.left, pair.right, pair.tensor
    pure = [[t.project_pure(n.basis_vec(j), m.basis_vec(i))
             for i in range(m.dim)] for j in range(n.dim)]
    n0_b = [j for j in range(n.dim)
            if all(is_zero_vec(pure[j][i]) for i in range(m.dim))]
    m0_b = [i for i in range(m.dim)
            if all(is_zero_vec(pure[j][i]) for j in range(n.dim))]
    span_n = SpanBuilder(n.dim)
    for j in n0_b:
        span_n.add(n.basis_vec(j))
    span_m = SpanBuilder(m.dim)
    for i in m0_b:
        span_m.add(m.basis_vec(i))
    ok = (span_n.dim == pair.n0.dim
          and all(span_n.contains(v) for v in pair.n0.basis)
          and span_m.dim == pair.m0.dim
          and all(span_m.contains(v) for v in pair.m0.basis))
    if not ok:
        return failed("degeneracy-brute-oracle", anchors.ASSUME_DEGENERACY,
                      {"kernel_dims": [pair.n0.dim, pair.m0.dim],
                       "brute_dims": [span_n.dim, span_m.dim]})
    return passed("degeneracy-brute-oracle", anchors.ASSUME_DEGENERACY,
                  {"dim_n0": pair.n0.dim, "dim_m0": pair.m0.dim})


def check_compatibility(c: Connection, rc: RightConnection,
                        pair: DegeneracyPair) -> Verdict:
    """∇M₀ ⊆ M₀⊗_AΩ¹ and ∇′N₀ ⊆ N₀⊗_AΩ¹ (each against its own calculus)."""
    for sub, forms, nab, side in (
            (pair.m0, c.forms, c.nabla, "M0"),
            (pair.n0, rc.forms, rc.nabla, "N0")):
        if sub.dim == 0:
            continue
        uni = forms.calculus.universal
        span = SpanBuilder(forms.dim(1))
        for v in sub.basis:
            for k in range(uni.bar_dim(1)):
                bar = zeros(uni.bar_dim(1))
                bar[k] = Fraction(1)
                span.add(forms.class_of_pair_bar(1, v, bar))
        for v in sub.basis:
            if not span.contains(mat_vec(nab, v)):
                return failed("tensor-compatibility",
                              anchors.ASSUME_DEGENERACY,
                              {"side": side, "vector": v})
    return passed("tensor-compatibility", anchors.ASSUME_DEGENERACY,
                  {"dim_n0": pair.n0.dim, "dim_m0": pair.m0.dim})


# ---------------------------------------------------------------------------
# ν̂ = id ⊗ κ̂
# ---------------------------------------------------------------------------

@dataclass
class NuHat:
    """Per-degree maps N⊗_AΩ^r → N⊗_AΩ_∇^r, b⊗ω ↦ b⊗κ̂(ω)."""

    available: bool
    source: Forms | None = None          # N ⊗ Ω
    target: Forms | None = None          # N ⊗ Ω_∇
    maps: list[Mat] = field(default_factory=list)
    verdicts: list[Verdict] = field(default_factory=list)

    def apply(self, r: int, v: Vec) -> Vec:
        return mat_vec(self.maps[r], v)

    def rank(self, r: int) -> int:
        m = self.maps[r]
        return LinMap.from_matrix(Space.standard(len(m[0]) if m else 0),
                                  Space.standard(len(m)), m).rank()


def nu_hat(n, kappa_hat: CalculusMorphism | None) -> NuHat:
    """Build ν̂ from κ̂, or report it unavailable when κ̂ does not exist.

    Both N⊗Ω^r and N⊗Ω_∇^r are quotients of the same free coordinate space
    N ⊗ (degree-r tails); since κ̂ is the canonical factoring of the two
    ideal quotients, ν̂ is lift-then-reproject between them.
    """
    if kappa_hat is None:
        nu = NuHat(False)
        nu.verdicts.append(Verdict("nu-hat", anchors.NU_HAT, "unavailable"))
        return nu
    src = Forms(n, kappa_hat.source)
    tgt = Forms(n, kappa_hat.target)
    nu = NuHat(True, src, tgt)
    for r in range(src.D + 1):
        cols = []
        for c in range(src.dim(r)):
            q = zeros(src.dim(r))
            q[c] = Fraction(1)
            cols.append(tgt.project(r, src.lift(r, q)))
        nu.maps.append(_cols_to_mat(cols, tgt.dim(r)))
    # well defined: the source relations are killed in the target
    for r in range(src.D + 1):
        for v in src.quotient_space(r).sub.basis:
            if not is_zero_vec(tgt.project(r, v)):
                nu.verdicts.append(failed("nu-hat-well-defined",
                                          anchors.NU_HAT,
                                          {"degree": r, "vector": v}))
                return nu
    nu.verdicts.append(passed("nu-hat-well-defined", anchors.NU_HAT))
    # right linear over the calculi: commutes with ·f and with ·de_j
    uni = src.uni
    a = uni.algebra
    for r in range(src.D + 1):
        for fi in range(a.dim):
            lhs = mat_mul(nu.maps[r], src.right_action_matrix(r, fi))
            rhs = mat_mul(tgt.right_action_matrix(r, fi), nu.maps[r])
            if lhs != rhs:
                nu.verdicts.append(failed("nu-hat-right-linear",
                                          anchors.NU_HAT,
                                          {"degree": r, "algebra_basis": fi}))
                return nu
        if r + 1 > src.D:
            continue
        for j in uni.complement:
            for c in range(src.dim(r)):
                q = zeros(src.dim(r))
                q[c] = Fraction(1)
                lhs_v = tgt.project(r + 1,
                                    tgt.concat_tu(r, tgt.lift(r, nu.apply(r, q)),
                                                  (j,)))
                rhs_v = nu.apply(r + 1, src.project(
                    r + 1, src.concat_tu(r, src.lift(r, q), (j,))))
                if lhs_v != rhs_v:
                    nu.verdicts.append(failed(
                        "nu-hat-right-linear", anchors.NU_HAT,
                        {"degree": r, "tail": j, "basis": c}))
                    return nu
    nu.verdicts.append(passed("nu-hat-right-linear", anchors.NU_HAT))
    return nu


# ---------------------------------------------------------------------------
# tensor-product connections
# ---------------------------------------------------------------------------

@dataclass
class TensorConnection:
    """∇⊗ on N⊗_AM, valued in N⊗_A(M⊗_AΩ¹), by either route."""

    route: str                       # "induced" or "nu-hat"
    domain: BalancedTensor           # N ⊗_A M
    codomain: BalancedTensor         # N ⊗_A (M⊗_AΩ¹)
    matrix: Mat                      # codomain.dim x domain.dim
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def available(self) -> bool:
        return bool(self.matrix)

    def apply(self, cls: Vec) -> Vec:
        return mat_vec(self.matrix, cls)


def _interpretation_ops(induced: InducedCalculus) -> list[Mat]:
    """Matrix of a ↦ (1·de_j)·a for each degree-one tail, via κ̄."""
    c = induced.connection
    uni = c.calculus.universal
    nt = len(uni.tails(1))
    unit = uni.algebra.unit_vec()
    ops = []
    for bidx in range(nt):
        bar = zeros(uni.bar_dim(1))
        for t, ct in enumerate(unit):
            if ct:
                bar[t * nt + bidx] += ct
        ops.append(induced.kappa_raw(1, bar).matrix)
    return ops


def _tensor_from_xi(route: str, n, c: Connection, induced: InducedCalculus,
                    xi_forms: Forms, xi_list: list[Vec],
                    well_defined_anchor: str) -> TensorConnection:
    """Assemble ∇⊗ from the degree-one N-forms ξ_j = "(∇ of b_j) downstairs".

    Each ξ_j lives in N⊗_AΩ¹_∇; its tails act on M through κ̄, which is the
    interpretation rule (b⊗Φ̂)a := b⊗Φ̂(a).
    """
    m = c.module
    tn = tensor_over_A(n, m)
    t1_bimod = c.forms.as_bimodule(1)
    w = tensor_over_A(n, t1_bimod)
    ops = _interpretation_ops(induced)
    nt = xi_forms.n_tails(1)
    t1 = c.forms.dim(1)
    # plain columns over the pure basis (b_j, a_i)
    plain_cols: list[Vec] = []
    for j in range(n.dim):
        xi = xi_forms.lift(1, xi_list[j])
        for i in range(m.dim):
            av = m.basis_vec(i)
            out = zeros(w.plain_dim)
            for flat, cc in enumerate(xi):
                if cc == 0:
                    continue
                k, bidx = divmod(flat, nt)
                val = mat_vec(ops[bidx], av)
                for l, cv in enumerate(val):
                    if cv:
                        out[k * t1 + l] += cc * cv
            na = c.nabla_apply(av)
            for l, cv in enumerate(na):
                if cv:
                    out[j * t1 + l] += cv
            plain_cols.append(w.project(out))
    tc = TensorConnection(route, tn, w, [])
    # well defined on balanced classes
    for rel in balancing_relations(n, m):
        img = zeros(w.dim)
        for k, cc in enumerate(rel):
            if cc:
                img = vec_sum(img, [cc * x for x in plain_cols[k]])
        if not is_zero_vec(img):
            tc.verdicts.append(failed("tensor-connection-well-defined",
                                      well_defined_anchor,
                                      {"relation": rel}))
            return tc
    tc.verdicts.append(passed("tensor-connection-well-defined",
                              well_defined_anchor))
    cols = []
    for col in range(tn.dim):
        q = zeros(tn.dim)
        q[col] = Fraction(1)
        plain = tn.lift(q)
        out = zeros(w.dim)
        for k, cc in enumerate(plain):
            if cc:
                out = vec_sum(out, [cc * x for x in plain_cols[k]])
        cols.append(out)
    tc.matrix = _cols_to_mat(cols, w.dim)
    _check_tensor_leibniz(tc, c)
    return tc


def _check_tensor_leibniz(tc: TensorConnection, c: Connection) -> None:
    """∇⊗(x·f) = (∇⊗x)·f + x⊗df on all domain basis / algebra pairs."""
    tn, w = tc.domain, tc.codomain
    n, m = tn.left_factor, c.module
    a = m.algebra
    uni = c.calculus.universal
    t1 = c.forms.dim(1)
    for col in range(tn.dim):
        q = zeros(tn.dim)
        q[col] = Fraction(1)
        dq = tc.apply(q)
        plain = tn.lift(q)
        for fi in range(a.dim):
            fv = a.basis_vec(fi)
            lhs = tc.apply(mat_vec(tn.induced_right_matrix(fv), q))
            rhs = mat_vec(w.induced_right_matrix(fv), dq)
            df_bar = uni.from_emb(1, uni.d_emb(fv, 0))
            extra = zeros(w.plain_dim)
            for flat, cc in enumerate(plain):
                if cc == 0:
                    continue
                j, i = divmod(flat, m.dim)
                piece = c.forms.class_of_pair_bar(1, m.basis_vec(i), df_bar)
                for l, cv in enumerate(piece):
                    if cv:
                        extra[j * t1 + l] += cc * cv
            rhs = vec_sum(rhs, w.project(extra))
            if lhs != rhs:
                tc.verdicts.append(failed("tensor-right-leibniz",
                                          anchors.TENSOR_CONNECTION,
                                          {"basis": col, "algebra_basis": fi}))
                return
    tc.verdicts.append(passed("tensor-right-leibniz",
                              anchors.TENSOR_CONNECTION))


def tensor_connection_induced(rc: RightConnection, c: Connection,
                              induced: InducedCalculus) -> TensorConnection:
    """∇⊗(b⊗a) := (∇′_M b)·a + b⊗∇a with ∇′_M against (Ω¹_∇, d_∇)."""
    if rc.calculus is not induced.calculus:
        raise DimensionError(
            "the N-side connection must live over the induced calculus")
    xi = [rc.nabla_apply(rc.module.basis_vec(j))
          for j in range(rc.module.dim)]
    return _tensor_from_xi("induced", rc.module, c, induced, rc.forms, xi,
                           anchors.INTERPRETED)


def tensor_connection_original(rc: RightConnection, c: Connection,
                               induced: InducedCalculus, nu: NuHat,
                               sigma=None) -> TensorConnection:
    """∇⊗(b⊗a) := ν̂(∇′b)·a + b⊗∇a, with the σ-route agreement check."""
    if not nu.available:
        tc = TensorConnection("nu-hat", tensor_over_A(rc.module, c.module),
                              tensor_over_A(rc.module,
                                            c.forms.as_bimodule(1)), [])
        tc.verdicts.append(Verdict("tensor-connection-original",
                                   anchors.ORIGINAL_ROUTE, "unavailable"))
        return tc
    n = rc.module
    xi = [nu.apply(1, rc.nabla_apply(n.basis_vec(j))) for j in range(n.dim)]
    tc = _tensor_from_xi("nu-hat", n, c, induced, nu.target, xi,
                         anchors.ORIGINAL_ROUTE)
    if sigma is not None and sigma.exists:
        _check_sigma_route(tc, rc, c, sigma)
    return tc


def _check_sigma_route(tc: TensorConnection, rc: RightConnection,
                       c: Connection, sigma) -> None:
    """(id_N⊗σ)(∇′b)⊗a + b⊗∇a equals the ν̂-route value on all pure pairs."""
    n, m = rc.module, c.module
    w = tc.codomain
    cal = c.calculus
    src = rc.forms
    nt = src.n_tails(1)
    uni = cal.universal
    unit = uni.algebra.unit_vec()
    t1 = c.forms.dim(1)
    # Ω¹ class of the tail 1·de_j, per tail index
    tail_cls = []
    for bidx in range(nt):
        bar = zeros(uni.bar_dim(1))
        for t, ct in enumerate(unit):
            if ct:
                bar[t * nt + bidx] += ct
        tail_cls.append(cal.class_of_bar(1, bar))
    for j in range(n.dim):
        xi = src.lift(1, rc.nabla_apply(n.basis_vec(j)))
        for i in range(m.dim):
            av = m.basis_vec(i)
            out = zeros(w.plain_dim)
            for flat, cc in enumerate(xi):
                if cc == 0:
                    continue
                k, bidx = divmod(flat, nt)
                val = sigma.sigma.apply(
                    sigma.sigma.tensor.project_pure(tail_cls[bidx], av))
                for l, cv in enumerate(val):
                    if cv:
                        out[k * t1 + l] += cc * cv
            na = c.nabla_apply(av)
            for l, cv in enumerate(na):
                if cv:
                    out[j * t1 + l] += cv
            via_sigma = w.project(out)
            via_nu = tc.apply(tc.domain.project_pure(n.basis_vec(j), av))
            if via_sigma != via_nu:
                tc.verdicts.append(failed("tensor-route-agreement",
                                          anchors.NEC_SUFF,
                                          {"pair": [j, i]}))
                return
    tc.verdicts.append(passed("tensor-route-agreement", anchors.NEC_SUFF))


# ---------------------------------------------------------------------------
# the associated connection
# ---------------------------------------------------------------------------

@dataclass
class AssociatedResult:
    """∇′_M with ν̂∘∇′ = ∇′_M∘ν̂, or the obstruction to factoring it."""

    exists: bool
    connection: RightConnection | None = None
    ext_matrices: list[Mat] = field(default_factory=list)
    verdicts: list[Verdict] = field(default_factory=list)


def associated_connection(rc: RightConnection, nu: NuHat) -> AssociatedResult:
    """Push ∇′ through ν̂ degree-wise; absent when ker ν̂ is not preserved."""
    if not nu.available:
        res = AssociatedResult(False)
        res.verdicts.append(Verdict("associated-connection",
                                    anchors.ASSOCIATED, "unavailable"))
        return res
    src, tgt = nu.source, nu.target
    res = AssociatedResult(True)
    for r in range(src.D):
        f = LinMap.from_matrix(Space.standard(src.dim(r)),
                               Space.standard(tgt.dim(r)), nu.maps[r])
        g = LinMap.from_matrix(Space.standard(src.dim(r)),
                               Space.standard(tgt.dim(r + 1)),
                               mat_mul(nu.maps[r + 1],
                                       rc.nabla_ext_matrix(r)))
        h, wit = factor_through(f, g)
        if h is None:
            res.exists = False
            res.connection = None
            res.ext_matrices = []
            res.verdicts.append(Verdict("associated-connection",
                                        anchors.ASSOCIATED, "absent",
                                        {"degree": r,
                                         "kernel_element": wit}))
            return res
        res.ext_matrices.append(h.mat())
    res.connection = RightConnection(rc.module, tgt.calculus,
                                     res.ext_matrices[0])
    res.verdicts.append(passed("associated-connection", anchors.ASSOCIATED))
    # the square ν̂∘∇′ = ∇′_M∘ν̂, re-checked entrywise
    for r in range(src.D):
        lhs = mat_mul(nu.maps[r + 1], rc.nabla_ext_matrix(r))
        rhs = mat_mul(res.ext_matrices[r], nu.maps[r])
        if lhs != rhs:
            res.verdicts.append(failed("associated-square", anchors.ASSOCIATED,
                                       {"degree": r}))
            return res
    res.verdicts.append(passed("associated-square", anchors.ASSOCIATED))
    res.verdicts.append(check_right_connection(res.connection))
    return res
