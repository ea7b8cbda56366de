"""Rota-Baxter, Nijenhuis, Reynolds, averaging and centroid operators.

``check_operator`` sweeps the defining identity over basis pairs (triples
for ternary brackets) and every product slot; ``derive_from_operator``
builds the deformed products each operator induces.  Reynolds, averaging
and centroid operators are only defined for binary products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .algebra import (LEIBNIZ, TERNARY, TRIASSOCIATIVE, Algebra, check_morphism, check_structure,
                      require_valid, sweep)
from .errors import DimensionError, KindError, PreconditionError
from .linalg import Matrix
from .parallel import chunked_map
from .report import ViolationReport
from .tensor import Tensor

ROTA_BAXTER = "rota-baxter"
NIJENHUIS = "nijenhuis"
REYNOLDS = "reynolds"
AVERAGING = "averaging"
CENTROID = "centroid"
OPERATOR_TAGS = (ROTA_BAXTER, NIJENHUIS, REYNOLDS, AVERAGING, CENTROID)


@dataclass(frozen=True)
class OperatorKind:
    tag: str
    weight: Fraction | None = None

    def __post_init__(self):
        if self.tag not in OPERATOR_TAGS:
            raise KindError(f"unknown operator kind {self.tag!r}")
        if (self.weight is not None) != (self.tag == ROTA_BAXTER):
            raise KindError("a weight is given exactly for Rota-Baxter operators")
        if self.weight is not None:
            object.__setattr__(self, "weight", la.to_scalar(self.weight))

    @classmethod
    def rota_baxter(cls, weight=0) -> OperatorKind:
        return cls(ROTA_BAXTER, la.to_scalar(weight))

    @classmethod
    def parse(cls, tag: str, weight=None) -> OperatorKind:
        if tag == ROTA_BAXTER:
            return cls.rota_baxter(0 if weight is None else weight)
        if weight is not None:
            raise KindError(f"--weight only applies to {ROTA_BAXTER}")
        return cls(tag)

    def __str__(self):
        return f"{self.tag}(weight={la.format_scalar(self.weight)})" if self.weight is not None else self.tag


NIJENHUIS_OP = OperatorKind(NIJENHUIS)
REYNOLDS_OP = OperatorKind(REYNOLDS)
AVERAGING_OP = OperatorKind(AVERAGING)
CENTROID_OP = OperatorKind(CENTROID)


def _admissible(a: Algebra, m: Matrix, kind: OperatorKind):
    if m.rows != a.dim or m.cols != a.dim:
        raise DimensionError(f"operator must be {a.dim}x{a.dim}, got {m.rows}x{m.cols}")
    if a.kind == TERNARY and kind.tag not in (ROTA_BAXTER, NIJENHUIS):
        raise KindError(f"{kind.tag} operators are only defined on binary products")


def _binary_checks(t: Tensor, m: Matrix, kind: OperatorKind, slot: str) -> list:
    n = t.in_dims[0]
    E = [la.basis_vector(n, i) for i in range(n)]
    M = m.columns()
    ap = m.apply
    sub, add, sc = la.sub, la.add, la.scale
    tag = kind.tag
    if tag == ROTA_BAXTER:
        lam = kind.weight

        def rb(x, y):
            inner = add(add(t(M[x], E[y]), t(E[x], M[y])), sc(lam, t.basis_value(x, y)))
            return sub(t(M[x], M[y]), ap(inner))
        return [(f"rota-baxter[{slot}]", rb)]
    if tag == NIJENHUIS:
        def nij(x, y):
            inner = sub(add(t(M[x], E[y]), t(E[x], M[y])), ap(t.basis_value(x, y)))
            return sub(t(M[x], M[y]), ap(inner))
        return [(f"nijenhuis[{slot}]", nij)]
    if tag == REYNOLDS:
        def rey(x, y):
            mm = t(M[x], M[y])
            return sub(mm, ap(sub(add(t(M[x], E[y]), t(E[x], M[y])), mm)))
        return [(f"reynolds[{slot}]", rey)]
    if tag == CENTROID:
        def cen_left(x, y):
            return sub(ap(t.basis_value(x, y)), t(M[x], E[y]))

        def cen_right(x, y):
            return sub(ap(t.basis_value(x, y)), t(E[x], M[y]))
        return [(f"centroid-left[{slot}]", cen_left), (f"centroid-right[{slot}]", cen_right)]

    def avg_left(x, y):
        return sub(t(M[x], M[y]), ap(t(M[x], E[y])))

    def avg_right(x, y):
        return sub(t(M[x], M[y]), ap(t(E[x], M[y])))
    return [(f"averaging-left[{slot}]", avg_left), (f"averaging-right[{slot}]", avg_right)]


def _two_of_three(t: Tensor, M, E, x, y, z):
    return la.add(la.add(t(M[x], M[y], E[z]), t(M[x], E[y], M[z])), t(E[x], M[y], M[z]))


def _one_of_three(t: Tensor, M, E, x, y, z):
    return la.add(la.add(t(M[x], E[y], E[z]), t(E[x], M[y], E[z])), t(E[x], E[y], M[z]))


def _ternary_checks(t: Tensor, m: Matrix, kind: OperatorKind) -> list:
    n = t.in_dims[0]
    E = [la.basis_vector(n, i) for i in range(n)]
    M = m.columns()
    ap = m.apply
    if kind.tag == ROTA_BAXTER:
        lam = kind.weight

        def rb(x, y, z):
            inner = la.add(_two_of_three(t, M, E, x, y, z), la.scale(lam, _one_of_three(t, M, E, x, y, z)))
            inner = la.add(inner, la.scale(lam * lam, t.basis_value(x, y, z)))
            return la.sub(t(M[x], M[y], M[z]), ap(inner))
        return [("rota-baxter[bracket3]", rb)]

    def nij(x, y, z):
        # N([..two N..] - N([..one N..]) + N^2[x,y,z]) with the outer N over everything
        inner = la.sub(_two_of_three(t, M, E, x, y, z), ap(_one_of_three(t, M, E, x, y, z)))
        inner = la.add(inner, ap(ap(t.basis_value(x, y, z))))
        return la.sub(t(M[x], M[y], M[z]), ap(inner))
    return [("nijenhuis[bracket3]", nij)]


def operator_checks(a: Algebra, m: Matrix, kind: OperatorKind) -> list:
    _admissible(a, m, kind)
    if a.kind == TERNARY:
        return _ternary_checks(a.op("bracket3"), m, kind)
    checks = []
    for slot in a.slots:
        checks += _binary_checks(a.op(slot), m, kind, slot)
    return checks


def check_operator(a: Algebra, m: Matrix, kind: OperatorKind, first_only: bool = False) -> ViolationReport:
    checks = operator_checks(a, m, kind)
    return sweep((a.dim,) * a.arity, checks, [a.basis] * a.arity, first_only=first_only)


def _derived_binary(t: Tensor, m: Matrix, kind: OperatorKind) -> Tensor:
    n = t.in_dims[0]
    E = [la.basis_vector(n, i) for i in range(n)]
    M = m.columns()
    tag = kind.tag

    def fn(x, y):
        if tag in (AVERAGING, CENTROID):
            return t(M[x], E[y])
        base = la.add(t(M[x], E[y]), t(E[x], M[y]))
        if tag == ROTA_BAXTER:
            return la.add(base, la.scale(kind.weight, t.basis_value(x, y)))
        if tag == NIJENHUIS:
            return la.sub(base, m.apply(t.basis_value(x, y)))
        return la.sub(base, t(M[x], M[y]))
    return Tensor.from_function((n, n), n, fn)


def _derived_ternary(t: Tensor, m: Matrix, kind: OperatorKind) -> Tensor:
    n = t.in_dims[0]
    E = [la.basis_vector(n, i) for i in range(n)]
    M = m.columns()

    def fn(x, y, z):
        two = _two_of_three(t, M, E, x, y, z)
        one = _one_of_three(t, M, E, x, y, z)
        if kind.tag == ROTA_BAXTER:
            lam = kind.weight
            return la.add(la.add(two, la.scale(lam, one)), la.scale(lam * lam, t.basis_value(x, y, z)))
        return la.add(la.sub(two, m.apply(one)), m.apply(m.apply(t.basis_value(x, y, z))))
    return Tensor.from_function((n, n, n), n, fn)


def derived_products(a: Algebra, m: Matrix, kind: OperatorKind) -> Algebra:
    """The deformed algebra, without checking any hypothesis."""
    _admissible(a, m, kind)
    if a.kind == TERNARY:
        return a.with_products({"bracket3": _derived_ternary(a.op("bracket3"), m, kind)})
    if kind.tag in (AVERAGING, CENTROID) and a.kind == LEIBNIZ:
        raise KindError(f"no derived bracket from a {kind.tag} operator on a Leibniz algebra")
    return a.with_products({s: _derived_binary(a.op(s), m, kind) for s in a.slots})


def derive_from_operator(a: Algebra, m: Matrix, kind: OperatorKind) -> Algebra:
    """Algebra of the same kind whose products are deformed by the operator ``m``.

    Requires the operator identity to hold on ``a``; averaging operators on
    triassociative algebras must also be injective.
    """
    rep = check_operator(a, m, kind)
    if not rep.ok:
        raise PreconditionError(f"matrix is not a {kind} operator ({len(rep)} violations)", rep)
    if kind.tag == AVERAGING and a.kind == TRIASSOCIATIVE and la.rank(m) < a.dim:
        raise PreconditionError("averaging operator must be injective")
    return derived_products(a, m, kind)


def rb_iterated_vs_ternary(l: Algebra, r: Matrix, weight) -> bool:
    """Compare [x,[y,z]_R]_R with the ternary Rota-Baxter bracket of T(L) built from the same R."""
    from .functors import t_from_leibniz

    if l.kind != LEIBNIZ:
        raise KindError(f"expected a Leibniz algebra, got {l.kind}")
    kind = OperatorKind.rota_baxter(weight)
    require_valid(l)
    rep = check_operator(l, r, kind)
    if not rep.ok:
        raise PreconditionError("matrix is not a Rota-Baxter operator of this weight", rep)
    iterated = t_from_leibniz(derive_from_operator(l, r, kind))
    ternary = derive_from_operator(t_from_leibniz(l), r, kind)
    return iterated.op("bracket3") == ternary.op("bracket3")


def grid_matrices(n: int, grid=(-1, 0, 1)):
    values = [la.to_scalar(g) for g in grid]
    for flat in itertools.product(values, repeat=n * n):
        yield Matrix(n, n, tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))


def search_operators(a: Algebra, kind: OperatorKind, grid=(-1, 0, 1)) -> list:
    """Every matrix with entries from ``grid`` passing ``check_operator``, in row-major lexicographic order."""
    n = a.dim
    values = [la.to_scalar(g) for g in grid]
    if n == 0:
        return [Matrix(0, 0, ())]

    def run(first):
        found = []
        for rest in itertools.product(values, repeat=n * n - 1):
            flat = (first,) + rest
            m = Matrix(n, n, tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))
            if check_operator(a, m, kind, first_only=True).ok:
                found.append(m)
        return found

    return [m for chunk in chunked_map(run, values) for m in chunk]


def operator_theorem_report(a: Algebra, m: Matrix, kind: OperatorKind) -> ViolationReport:
    """Postconditions of the deformation theorems for a valid operator ``m``.

    The derived algebra must satisfy its axioms; for Rota-Baxter, Nijenhuis
    and Reynolds operators ``m`` must also be a morphism from the derived
    algebra to ``a`` and an operator of the same kind on the derived algebra.
    """
    d = derive_from_operator(a, m, kind)
    parts = [check_structure(d).prefixed("derived:")]
    if kind.tag in (ROTA_BAXTER, NIJENHUIS, REYNOLDS):
        parts.append(check_morphism(m, d, a).prefixed("derived->original:"))
        parts.append(check_operator(d, m, kind).prefixed("on-derived:"))
    return ViolationReport.merge(*parts)

