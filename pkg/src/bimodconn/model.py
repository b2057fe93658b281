"""Model files: JSON descriptions of an algebra, a calculus, modules and
connections, parsed into fully validated engine objects.

Layout (all rationals are strings like ``"2/3"`` or ``"-1"``; matrices are
row-major lists of rows)::

    {
      "schema": 1,
      "name": "a2-flat",
      "algebra": {"dim": 2, "structure": [[[...], ...], ...], "unit": [...]},
      "calculus": {"truncation": 3,
                   "ideal_generators": [{"degree": 1, "element": [...]}]},
      "modules": {"M": {"left": [mat, ...], "right": [mat, ...]}},
      "connections": {"nabla": {"module": "M", "nabla": mat}},
      "tensor": [{"left": "nabla", "right": "nabla", "route": "both"}]
    }

``structure`` lists, per basis pair (i, j), the coordinates of e_i·e_j.
``ideal_generators`` elements are given in tensor-power coordinates of
their degree (length dim^(degree+1)).  A connection matrix has one column
per module basis vector; its rows run over the free coordinates of
M ⊗ (degree-one tails), i.e. pairs (module basis index, unit-complement
index), row-major, and give a representative of ∇(m_col).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, Bimodule, check_algebra, check_bimodule
from .calculus import GradedCalculus, quotient_calculus, universal_graded
from .connection import Connection, check_right_leibniz
from .forms import Forms
from .report import Verdict

SCHEMA_VERSION = 1
ROUTES = ("induced", "nu-hat", "both")


class ModelError(Exception):
    """Invalid model file: carries the offending field path and, for axiom
    failures, the failing verdict."""

    def __init__(self, path: str, message: str,
                 verdict: Verdict | None = None):
        self.path = path
        self.message = message
        self.verdict = verdict
        super().__init__(f"{path}: {message}")


def parse_rational(value, path: str) -> Fraction:
    if not isinstance(value, str):
        raise ModelError(path, f"expected a rational string, got {value!r}")
    try:
        f = Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelError(path, f"not a rational: {value!r} ({exc})") from None
    return f


def _rat_vec(value, path: str, length: int) -> list[Fraction]:
    if not isinstance(value, list) or len(value) != length:
        raise ModelError(path, f"expected a list of {length} rationals")
    return [parse_rational(x, f"{path}[{i}]") for i, x in enumerate(value)]


def _rat_mat(value, path: str, n_rows: int, n_cols: int) -> list[list[Fraction]]:
    if not isinstance(value, list) or len(value) != n_rows:
        raise ModelError(path, f"expected a matrix with {n_rows} rows")
    return [_rat_vec(row, f"{path}[{r}]", n_cols)
            for r, row in enumerate(value)]


def _get(obj: dict, key: str, path: str, required: bool = True, default=None):
    if key not in obj:
        if required:
            raise ModelError(f"{path}.{key}" if path else key,
                             "missing required field")
        return default
    return obj[key]


@dataclass
class TensorRequest:
    left: str                    # connection providing the N-side ∇′
    right: str                   # connection on the bimodule M
    route: str                   # "induced", "nu-hat" or "both"


@dataclass
class ModelFile:
    """A parsed and axiom-checked model."""

    name: str
    algebra: Algebra
    truncation: int
    calculus: GradedCalculus
    modules: dict[str, Bimodule]
    connections: dict[str, Connection]
    tensor_requests: list[TensorRequest] = field(default_factory=list)
    axiom_verdicts: list[Verdict] = field(default_factory=list)


def _parse_algebra(doc, path: str) -> Algebra:
    if not isinstance(doc, dict):
        raise ModelError(path, "expected an object")
    dim = _get(doc, "dim", path)
    if not isinstance(dim, int) or dim < 1:
        raise ModelError(f"{path}.dim", "expected a positive integer")
    structure = _get(doc, "structure", path)
    if not isinstance(structure, list) or len(structure) != dim:
        raise ModelError(f"{path}.structure", f"expected {dim} rows")
    table = []
    for i, row in enumerate(structure):
        if not isinstance(row, list) or len(row) != dim:
            raise ModelError(f"{path}.structure[{i}]", f"expected {dim} entries")
        table.append([_rat_vec(v, f"{path}.structure[{i}][{j}]", dim)
                      for j, v in enumerate(row)])
    unit = _rat_vec(_get(doc, "unit", path), f"{path}.unit", dim)
    return Algebra.from_table(table, unit)


def _parse_calculus(doc, path: str, algebra: Algebra,
                    truncation_override: int | None) -> tuple[int, GradedCalculus]:
    doc = doc if doc is not None else {}
    if not isinstance(doc, dict):
        raise ModelError(path, "expected an object")
    truncation = doc.get("truncation", 3)
    if truncation_override is not None:
        truncation = truncation_override
    if not isinstance(truncation, int) or truncation < 1:
        raise ModelError(f"{path}.truncation", "expected a positive integer")
    base = universal_graded(algebra, truncation)
    gens_doc = doc.get("ideal_generators", [])
    if not isinstance(gens_doc, list):
        raise ModelError(f"{path}.ideal_generators", "expected a list")
    if not gens_doc:
        return truncation, base
    gens = []
    for k, g in enumerate(gens_doc):
        gpath = f"{path}.ideal_generators[{k}]"
        if not isinstance(g, dict):
            raise ModelError(gpath, "expected an object")
        degree = _get(g, "degree", gpath)
        if not isinstance(degree, int) or not 1 <= degree <= truncation:
            raise ModelError(f"{gpath}.degree",
                             "expected an integer between 1 and the truncation")
        element = _rat_vec(_get(g, "element", gpath), f"{gpath}.element",
                           algebra.dim ** (degree + 1))
        try:
            base.universal.from_emb(degree, element)
        except Exception:
            raise ModelError(f"{gpath}.element",
                             "element does not lie in the universal calculus "
                             f"in degree {degree}") from None
        gens.append((degree, element))
    return truncation, quotient_calculus(base, gens)


def _parse_module(doc, path: str, algebra: Algebra) -> Bimodule:
    if not isinstance(doc, dict):
        raise ModelError(path, "expected an object")
    left_doc = _get(doc, "left", path)
    right_doc = _get(doc, "right", path)
    for side, mats in (("left", left_doc), ("right", right_doc)):
        if not isinstance(mats, list) or len(mats) != algebra.dim:
            raise ModelError(f"{path}.{side}",
                             f"expected {algebra.dim} action matrices")
    if not left_doc[0] or not isinstance(left_doc[0], list):
        raise ModelError(f"{path}.left[0]", "expected a matrix")
    dim = len(left_doc[0])
    left = [_rat_mat(m, f"{path}.left[{i}]", dim, dim)
            for i, m in enumerate(left_doc)]
    right = [_rat_mat(m, f"{path}.right[{i}]", dim, dim)
             for i, m in enumerate(right_doc)]
    return Bimodule.from_actions(algebra, left, right)


def _parse_connection(doc, path: str, model: ModelFile) -> Connection:
    if not isinstance(doc, dict):
        raise ModelError(path, "expected an object")
    mod_name = _get(doc, "module", path)
    if mod_name not in model.modules:
        raise ModelError(f"{path}.module", f"unknown module {mod_name!r}")
    module = model.modules[mod_name]
    forms = Forms(module, model.calculus)
    n_rows = module.dim * forms.n_tails(1)
    nabla_tu = _rat_mat(_get(doc, "nabla", path), f"{path}.nabla",
                        n_rows, module.dim)
    cols = []
    for c in range(module.dim):
        cols.append(forms.project(1, [nabla_tu[r][c] for r in range(n_rows)]))
    nabla = [[cols[c][r] for c in range(module.dim)]
             for r in range(forms.dim(1))]
    return Connection(module, model.calculus, nabla)


def parse_model(path: str, truncation: int | None = None) -> ModelFile:
    """Parse and validate a model file; raise :class:`ModelError` on any
    schema violation or failed structural axiom."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ModelError("<file>", f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ModelError("<file>", f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ModelError("<root>", "expected a JSON object")
    schema = _get(doc, "schema", "")
    if schema != SCHEMA_VERSION:
        raise ModelError("schema", f"unsupported schema version {schema!r}")
    name = doc.get("name", "unnamed")
    if not isinstance(name, str):
        raise ModelError("name", "expected a string")
    algebra = _parse_algebra(_get(doc, "algebra", ""), "algebra")
    v = check_algebra(algebra)
    if not v.ok:
        raise ModelError("algebra", "algebra axioms fail", v)
    trunc, calculus = _parse_calculus(doc.get("calculus"), "calculus",
                                      algebra, truncation)
    model = ModelFile(name, algebra, trunc, calculus, {}, {})
    model.axiom_verdicts.append(v)
    modules_doc = _get(doc, "modules", "")
    if not isinstance(modules_doc, dict) or not modules_doc:
        raise ModelError("modules", "expected a non-empty object")
    for mname in sorted(modules_doc):
        mod = _parse_module(modules_doc[mname], f"modules.{mname}", algebra)
        mv = check_bimodule(mod)
        if not mv.ok:
            raise ModelError(f"modules.{mname}", "bimodule axioms fail", mv)
        model.modules[mname] = mod
        model.axiom_verdicts.append(mv)
    conns_doc = _get(doc, "connections", "")
    if not isinstance(conns_doc, dict) or not conns_doc:
        raise ModelError("connections", "expected a non-empty object")
    for cname in sorted(conns_doc):
        conn = _parse_connection(conns_doc[cname], f"connections.{cname}",
                                 model)
        cv = check_right_leibniz(conn)
        if not cv.ok:
            raise ModelError(f"connections.{cname}",
                             "the right Leibniz rule fails", cv)
        model.connections[cname] = conn
        model.axiom_verdicts.append(cv)
    tensor_doc = doc.get("tensor", [])
    if not isinstance(tensor_doc, list):
        raise ModelError("tensor", "expected a list")
    for k, req in enumerate(tensor_doc):
        tpath = f"tensor[{k}]"
        if not isinstance(req, dict):
            raise ModelError(tpath, "expected an object")
        left = _get(req, "left", tpath)
        right = _get(req, "right", tpath)
        route = req.get("route", "both")
        for key, cname in (("left", left), ("right", right)):
            if cname not in model.connections:
                raise ModelError(f"{tpath}.{key}",
                                 f"unknown connection {cname!r}")
        if route not in ROUTES:
            raise ModelError(f"{tpath}.route",
                             f"expected one of {', '.join(ROUTES)}")
        model.tensor_requests.append(TensorRequest(left, right, route))
    return model


def serialize_connection_tu(conn: Connection) -> list[list[Fraction]]:
    """The ∇ matrix in the free-coordinate layout model files use."""
    forms = conn.forms
    n_rows = conn.module.dim * forms.n_tails(1)
    cols = [forms.lift(1, conn.nabla_apply(conn.module.basis_vec(c)))
            for c in range(conn.module.dim)]
    return [[cols[c][r] for c in range(conn.module.dim)]
            for r in range(n_rows)]
