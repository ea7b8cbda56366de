"""Algebras given by structure constants, and the identity-checking engine.

Four kinds are supported:

* ``associative``      one binary product, slot ``"bracket"``
* ``triassociative``   three binary products, slots ``"left"`` (x -| y),
  ``"middle"`` (x _|_ y) and ``"right"`` (x |- y)
* ``leibniz``          one binary bracket obeying the right Leibniz rule
  ``[[x,y],z] = [x,[y,z]] + [[x,z],y]``
* ``ternary-leibniz``  one ternary bracket, slot ``"bracket3"``, obeying
  ``[[x,y,z],t,u] = [x,y,[z,t,u]] + [x,[y,t,u],z] + [[x,t,u],y,z]``

Every identity here is multilinear, so it holds on the whole space iff it
holds on all tuples of basis vectors; the checkers sweep exactly those.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from . import linalg as la
from .errors import DimensionError, KindError, PreconditionError
from .linalg import Matrix, Subspace, Vector
from .parallel import chunked_map
from .report import Violation, ViolationReport
from .tensor import Tensor

ASSOCIATIVE = "associative"
TRIASSOCIATIVE = "triassociative"
LEIBNIZ = "leibniz"
TERNARY = "ternary-leibniz"

KINDS = (ASSOCIATIVE, TRIASSOCIATIVE, LEIBNIZ, TERNARY)
SLOTS = {
    ASSOCIATIVE: ("bracket",),
    TRIASSOCIATIVE: ("left", "middle", "right"),
    LEIBNIZ: ("bracket",),
    TERNARY: ("bracket3",),
}
BINARY_KINDS = (ASSOCIATIVE, TRIASSOCIATIVE, LEIBNIZ)

# (x a y) b z = x c (y d z), numbered as in the usual list of eleven trialgebra axioms
TRI_AXIOMS = {
    1: ("left", "left", "left", "left"),
    2: ("right", "right", "right", "right"),
    3: ("middle", "middle", "middle", "middle"),
    4: ("left", "left", "left", "right"),
    5: ("left", "left", "left", "middle"),
    6: ("right", "left", "right", "left"),
    7: ("left", "right", "right", "right"),
    8: ("middle", "right", "right", "right"),
    9: ("middle", "left", "middle", "left"),
    10: ("left", "middle", "middle", "right"),
    11: ("right", "middle", "right", "middle"),
}


def default_basis(n: int) -> tuple:
    return tuple(f"e{i + 1}" for i in range(n))


@dataclass(frozen=True, eq=False)
class Algebra:
    kind: str
    dim: int
    products: Mapping[str, Tensor]
    basis: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise KindError(f"unknown algebra kind {self.kind!r}")
        expected = set(SLOTS[self.kind])
        if set(self.products) != expected:
            raise KindError(f"{self.kind} algebra needs product slots {sorted(expected)}, got {sorted(self.products)}")
        n = 3 if self.kind == TERNARY else 2
        for slot, t in self.products.items():
            if t.shape != (self.dim,) * (n + 1):
                raise DimensionError(f"slot {slot!r} has shape {t.shape}, expected {(self.dim,) * (n + 1)}")
        if not self.basis:
            object.__setattr__(self, "basis", default_basis(self.dim))
        elif len(self.basis) != self.dim:
            raise DimensionError(f"{len(self.basis)} basis names for a {self.dim}-dimensional algebra")
        object.__setattr__(self, "products", {s: self.products[s] for s in SLOTS[self.kind]})

    @classmethod
    def build(cls, kind: str, dim: int, products: Mapping[str, Iterable], basis: Sequence[str] = ()) -> Algebra:
        """Convenience constructor from entry lists ``(i, j[, k], out, coeff)``; missing slots are zero."""
        n = 3 if kind == TERNARY else 2
        if kind not in KINDS:
            raise KindError(f"unknown algebra kind {kind!r}")
        extra = set(products) - set(SLOTS[kind])
        if extra:
            raise KindError(f"{kind} algebra has no product slots {sorted(extra)}")
        prods = {s: Tensor.from_entries((dim,) * (n + 1), products.get(s, ())) for s in SLOTS[kind]}
        return cls(kind, dim, prods, tuple(basis))

    @classmethod
    def zero(cls, kind: str, dim: int) -> Algebra:
        return cls.build(kind, dim, {})

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.kind == other.kind and self.dim == other.dim and dict(self.products) == dict(other.products)

    __hash__ = None

    @property
    def arity(self) -> int:
        return 3 if self.kind == TERNARY else 2

    @property
    def slots(self) -> tuple:
        return SLOTS[self.kind]

    def op(self, slot: str) -> Tensor:
        try:
            return self.products[slot]
        except KeyError:
            raise KindError(f"{self.kind} algebra has no product {slot!r}") from None

    def e(self, i: int) -> Vector:
        return la.basis_vector(self.dim, i)

    def with_products(self, products: Mapping[str, Tensor], kind: str | None = None) -> Algebra:
        return Algebra(kind or self.kind, self.dim, products, self.basis)

    def __repr__(self):
        return f"Algebra({self.kind}, dim={self.dim}, {dict(self.products)!r})"


def evaluate(a: Algebra, selector: str, *args: Sequence) -> Vector:
    t = a.op(selector)
    if len(args) != t.arity:
        raise DimensionError(f"{selector!r} takes {t.arity} arguments, got {len(args)}")
    return t(*[la.vec(v) for v in args])


# ---------------------------------------------------------------------------
# sweeping identities over basis tuples


Check = Callable[..., Vector]


def sweep(dims: Sequence[int], checks: Sequence[tuple], labels: Sequence[Sequence[str]] | None = None,
          first_only: bool = False) -> ViolationReport:
    """Evaluate each ``(axiom_id, fn)`` on every index tuple in ``product(range(d) for d in dims)``.

    ``fn(*idx)`` returns the discrepancy vector (zero when the identity holds).
    With ``first_only`` the sweep stops at the first violation, which is what
    the operator searches want.
    """
    dims = tuple(dims)
    if not dims or any(d == 0 for d in dims) or not checks:
        return ViolationReport()

    def label(idx):
        if labels is None:
            return ()
        return tuple(labels[p][i] for p, i in enumerate(idx))

    def run(first):
        found = []
        for rest in itertools.product(*(range(d) for d in dims[1:])):
            idx = (first,) + rest
            for axiom, fn in checks:
                d = fn(*idx)
                if any(d):
                    found.append(Violation(axiom, idx, tuple(d), label(idx)))
                    if first_only:
                        return found
        return found

    if first_only:
        for first in range(dims[0]):
            found = run(first)
            if found:
                return ViolationReport.of(found)
        return ViolationReport()
    chunks = chunked_map(run, list(range(dims[0])))
    return ViolationReport.of(v for c in chunks for v in c)


def _basis(n: int) -> list:
    return [la.basis_vector(n, i) for i in range(n)]


def structure_checks(a: Algebra) -> list:
    E = _basis(a.dim)
    if a.kind == TRIASSOCIATIVE:
        P = a.products
        checks = []
        for num, (p, q, r, s) in TRI_AXIOMS.items():
            def fn(x, y, z, p=p, q=q, r=r, s=s):
                lhs = P[q](P[p].basis_value(x, y), E[z])
                rhs = P[r](E[x], P[s].basis_value(y, z))
                return la.sub(lhs, rhs)
            checks.append((f"tri-({num})", fn))
        return checks
    if a.kind == ASSOCIATIVE:
        m = a.op("bracket")

        def assoc(x, y, z):
            return la.sub(m(m.basis_value(x, y), E[z]), m(E[x], m.basis_value(y, z)))
        return [("assoc", assoc)]
    if a.kind == LEIBNIZ:
        b = a.op("bracket")

        def leib(x, y, z):
            lhs = b(b.basis_value(x, y), E[z])
            rhs = la.add(b(E[x], b.basis_value(y, z)), b(b.basis_value(x, z), E[y]))
            return la.sub(lhs, rhs)
        return [("leibniz", leib)]
    t = a.op("bracket3")

    def tern(x, y, z, u, w):
        lhs = t(t.basis_value(x, y, z), E[u], E[w])
        r1 = t(E[x], E[y], t.basis_value(z, u, w))
        r2 = t(E[x], t.basis_value(y, u, w), E[z])
        r3 = t(t.basis_value(x, u, w), E[y], E[z])
        return la.sub(lhs, la.add(la.add(r1, r2), r3))
    return [("ternary-leibniz", tern)]


def structure_arity(a: Algebra) -> int:
    return 5 if a.kind == TERNARY else 3


def check_structure(a: Algebra, first_only: bool = False) -> ViolationReport:
    """All defining identities of ``a.kind`` on all basis tuples."""
    n = structure_arity(a)
    return sweep((a.dim,) * n, structure_checks(a), [a.basis] * n, first_only=first_only)


def check_left_ternary(a: Algebra) -> ViolationReport:
    """The left-handed ternary identity {x,y,{z,t,u}} = {{x,y,z},t,u} + {z,{x,y,t},u} + {z,t,{x,y,u}}."""
    if a.kind != TERNARY:
        raise KindError("the left ternary identity only applies to ternary brackets")
    t = a.op("bracket3")
    E = _basis(a.dim)

    def left(x, y, z, u, w):
        lhs = t(E[x], E[y], t.basis_value(z, u, w))
        r1 = t(t.basis_value(x, y, z), E[u], E[w])
        r2 = t(E[z], t.basis_value(x, y, u), E[w])
        r3 = t(E[z], E[u], t.basis_value(x, y, w))
        return la.sub(lhs, la.add(la.add(r1, r2), r3))
    return sweep((a.dim,) * 5, [("ternary-leibniz-left", left)], [a.basis] * 5)


def _require_same_kind(a: Algebra, b: Algebra):
    if a.kind != b.kind:
        raise KindError(f"kind mismatch: {a.kind} vs {b.kind}")


def _require_map(f: Matrix, src: Algebra, dst: Algebra):
    if f.rows != dst.dim or f.cols != src.dim:
        raise DimensionError(f"a {f.rows}x{f.cols} matrix cannot map dim {src.dim} to dim {dst.dim}")


def check_morphism(f: Matrix, src: Algebra, dst: Algebra) -> ViolationReport:
    """f(x * y) = f(x) * f(y) for every product slot (and the ternary analogue)."""
    _require_same_kind(src, dst)
    _require_map(f, src, dst)
    cols = f.columns()
    checks = []
    for slot in src.slots:
        s, d = src.op(slot), dst.op(slot)

        def fn(*idx, s=s, d=d):
            return la.sub(f.apply(s.basis_value(*idx)), d(*[cols[i] for i in idx]))
        checks.append((f"morphism[{slot}]", fn))
    return sweep((src.dim,) * src.arity, checks, [src.basis] * src.arity)


def direct_sum(a: Algebra, b: Algebra) -> Algebra:
    _require_same_kind(a, b)
    n, m = a.dim, b.dim
    k = a.arity
    prods = {}
    for slot in a.slots:
        rows = list(a.op(slot).entries)
        rows += [tuple(i + n for i in r[:-1]) + (r[-1],) for r in b.op(slot).entries]
        prods[slot] = Tensor.from_entries((n + m,) * (k + 1), rows)
    return Algebra(a.kind, n + m, prods, a.basis + tuple(f"{s}'" for s in b.basis))


def graph_subspace(f: Matrix, a: Algebra, b: Algebra) -> Subspace:
    return Subspace.span([la.basis_vector(a.dim, j) + f.column(j) for j in range(a.dim)], a.dim + b.dim)


def graph_is_subalgebra(f: Matrix, a: Algebra, b: Algebra) -> bool:
    """Whether the graph of ``f`` is closed under every product of ``a (+) b``."""
    _require_same_kind(a, b)
    _require_map(f, a, b)
    s = direct_sum(a, b)
    g = graph_subspace(f, a, b)
    gens = [la.basis_vector(a.dim, j) + f.column(j) for j in range(a.dim)]
    for slot in s.slots:
        t = s.op(slot)
        for args in itertools.product(gens, repeat=s.arity):
            if not la.contains(g, t(*args)):
                return False
    return True


def multiplication_maps(a: Algebra) -> list:
    """Matrices of x -> (product with x in one position, basis vectors elsewhere), over all slots."""
    mats = []
    n = a.dim
    for slot in a.slots:
        t = a.op(slot)
        for pos in range(a.arity):
            for others in itertools.product(range(n), repeat=a.arity - 1):
                cols = []
                for j in range(n):
                    idx = list(others)
                    idx.insert(pos, j)
                    cols.append(t.basis_value(*idx))
                mats.append(Matrix.from_columns(cols, rows=n))
    return mats


def annihilator(a: Algebra) -> Subspace:
    if a.dim == 0:
        return Subspace.zero(0)
    maps = multiplication_maps(a)
    stacked = la.stack(maps, a.dim)
    return la.kernel(stacked)


SIDES = ("left", "right", "two-sided", "three-sided")


def _ideal_positions(a: Algebra, side: str) -> list:
    if side not in SIDES:
        raise KindError(f"unknown ideal side {side!r}")
    if a.kind == TERNARY:
        if side != "three-sided":
            raise KindError("ternary algebras only have three-sided ideals here")
        return [0, 1, 2]
    if side == "three-sided":
        raise KindError("three-sided ideals only make sense for ternary brackets")
    # a left ideal absorbs I * A, a right ideal A * I
    return {"left": [0], "right": [1], "two-sided": [0, 1]}[side]


def ideal_check(s: Subspace, a: Algebra, side: str) -> bool:
    if s.ambient_dim != a.dim:
        raise DimensionError(f"subspace of K^{s.ambient_dim} in a {a.dim}-dimensional algebra")
    positions = _ideal_positions(a, side)
    E = _basis(a.dim)
    gens = s.vectors
    for slot in a.slots:
        t = a.op(slot)
        for pos in positions:
            for v in gens:
                for others in itertools.product(E, repeat=a.arity - 1):
                    args = list(others)
                    args.insert(pos, v)
                    if not la.contains(s, t(*args)):
                        return False
    return True


def natural_side(a: Algebra) -> str:
    return "three-sided" if a.kind == TERNARY else "two-sided"


def quotient(a: Algebra, i: Subspace) -> tuple:
    """``(A/I, projection)``, coordinates of A/I taken on the non-pivot standard basis vectors."""
    if not ideal_check(i, a, natural_side(a)):
        raise PreconditionError("the subspace is not an ideal, so the quotient is not defined")
    comp = [next(j for j, x in enumerate(row) if x) for row in la.complement_basis(i).entries]
    pivots = i.pivots
    rows = i.vectors

    def reduce(v):
        v = list(v)
        for p, r in zip(pivots, rows):
            c = v[p]
            if c:
                v = [x - c * y for x, y in zip(v, r)]
        return tuple(v[j] for j in comp)

    proj = Matrix.from_columns([reduce(la.basis_vector(a.dim, j)) for j in range(a.dim)], rows=len(comp))
    m = len(comp)
    prods = {}
    for slot in a.slots:
        t = a.op(slot)
        prods[slot] = Tensor.from_function((m,) * a.arity, m, lambda *idx, t=t: reduce(t.basis_value(*[comp[k] for k in idx])))
    q = Algebra(a.kind, m, prods, tuple(a.basis[j] + "+I" for j in comp))
    return q, proj


def promote_associative(a: Algebra) -> Algebra:
    if a.kind != ASSOCIATIVE:
        raise KindError(f"expected an associative algebra, got {a.kind}")
    rep = check_structure(a)
    if not rep.ok:
        raise PreconditionError("input product is not associative", rep)
    m = a.op("bracket")
    return Algebra(TRIASSOCIATIVE, a.dim, {"left": m, "middle": m, "right": m}, a.basis)


def opposite_triassociative(a: Algebra) -> Algebra:
    """x -|' y = y |- x,  x _|_' y = y _|_ x,  x |-' y = y -| x."""
    if a.kind != TRIASSOCIATIVE:
        raise KindError(f"expected a triassociative algebra, got {a.kind}")
    swap = (1, 0)
    return a.with_products({
        "left": a.op("right").permute_inputs(swap),
        "middle": a.op("middle").permute_inputs(swap),
        "right": a.op("left").permute_inputs(swap),
    })


def swap_ternary_orientation(a: Algebra) -> Algebra:
    """{x,y,z} = [z,y,x]; exchanges right- and left-handed ternary Leibniz brackets."""
    if a.kind != TERNARY:
        raise KindError(f"expected a ternary Leibniz algebra, got {a.kind}")
    return a.with_products({"bracket3": a.op("bracket3").permute_inputs((2, 1, 0))})


def require_valid(a: Algebra, what: str = "input algebra"):
    rep = check_structure(a)
    if not rep.ok:
        raise PreconditionError(f"{what} fails the {a.kind} axioms ({len(rep)} violations)", rep)


def restrict_to_subalgebra(a: Algebra, s: Subspace) -> tuple:
    """Structure on a subspace closed under all products, in the RREF basis of ``s``; also returns the inclusion."""
    prods = {}
    for slot in a.slots:
        t = a.op(slot)

        def fn(*idx, t=t):
            v = t(*[s.vectors[k] for k in idx])
            try:
                return s.coordinates(v)
            except ValueError:
                raise PreconditionError("subspace is not closed under the products") from None
        prods[slot] = Tensor.from_function((s.dim,) * a.arity, s.dim, fn)
    names = tuple(f"i{k + 1}" for k in range(s.dim))
    incl = Matrix.from_columns(s.vectors, rows=a.dim) if s.dim else Matrix.zeros(a.dim, 0)
    return Algebra(a.kind, s.dim, prods, names), incl
