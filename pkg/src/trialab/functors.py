"""Constructions sending triassociative, Leibniz and associative algebras to ternary Leibniz algebras."""

from __future__ import annotations

from . import linalg as la
from .algebra import ASSOCIATIVE, LEIBNIZ, TERNARY, TRIASSOCIATIVE, Algebra, check_structure, require_valid
from .errors import KindError, PreconditionError
from .linalg import Matrix
from .operators import AVERAGING_OP, check_operator
from .tensor import Tensor

T_VARIANTS = ("main", "b1", "b2")


def _ternary(a: Algebra, bracket: Tensor) -> Algebra:
    return Algebra(TERNARY, a.dim, {"bracket3": bracket}, a.basis)


def t_tensor_from_triassoc(a: Algebra, variant: str = "main") -> Tensor:
    """Ternary bracket of a triassociative algebra, as a sum of four contractions.

    main: x -| (y.z - z.y) - (y.z - z.y) |- x
    b1:   x -| (y.z) - (y.z) |- x
    b2:   (z.y) |- x - x -| (z.y)
    where ``.`` is the middle product.
    """
    if variant not in T_VARIANTS:
        raise KindError(f"unknown bracket variant {variant!r}; expected one of {T_VARIANTS}")
    n = a.dim
    left, mid, right = a.op("left"), a.op("middle"), a.op("right")
    # c1(x,y,z) = x -| (y.z),  c2(x,y,z) = (y.z) |- x
    c1 = Tensor.from_function((n, n, n), n, lambda x, y, z: left(la.basis_vector(n, x), mid.basis_value(y, z)))
    c2 = Tensor.from_function((n, n, n), n, lambda x, y, z: right(mid.basis_value(y, z), la.basis_vector(n, x)))
    b1 = c1 - c2
    if variant == "b1":
        return b1
    swapped = b1.permute_inputs((0, 2, 1))  # [x,z,y]_1
    if variant == "b2":
        return swapped.scaled(-1)
    return b1 - swapped


def t_from_triassoc(a: Algebra, variant: str = "main") -> Algebra:
    if a.kind != TRIASSOCIATIVE:
        raise KindError(f"expected a triassociative algebra, got {a.kind}")
    require_valid(a)
    return _ternary(a, t_tensor_from_triassoc(a, variant))


def t_from_leibniz(l: Algebra) -> Algebra:
    """{x, y, z} = [x, [y, z]]."""
    if l.kind != LEIBNIZ:
        raise KindError(f"expected a Leibniz algebra, got {l.kind}")
    require_valid(l)
    b = l.op("bracket")
    n = l.dim
    return _ternary(l, Tensor.from_function((n, n, n), n, lambda x, y, z: b(la.basis_vector(n, x), b.basis_value(y, z))))


def ternary_from_assoc_averaging(a: Algebra, beta: Matrix, validate: bool = True) -> Algebra:
    """[a, b, c] = ab B(c) - a B(c) b - b B(c) a + B(c) b a for an averaging operator B.

    The bracket is not a ternary Leibniz bracket for every averaging operator
    (B = diag(0, 1) on assoc2 is a counterexample), so by default the output is
    checked and a PreconditionError carrying the violations is raised when it fails.
    ``validate=False`` returns the bracket unchecked.
    """
    if a.kind != ASSOCIATIVE:
        raise KindError(f"expected an associative algebra, got {a.kind}")
    require_valid(a)
    rep = check_operator(a, beta, AVERAGING_OP)
    if not rep.ok:
        raise PreconditionError("matrix is not an averaging operator", rep)
    m = a.op("bracket")
    n = a.dim
    B = beta.columns()
    E = [la.basis_vector(n, i) for i in range(n)]

    def fn(x, y, z):
        terms = [
            m(m.basis_value(x, y), B[z]),
            la.scale(-1, m(m(E[x], B[z]), E[y])),
            la.scale(-1, m(m(E[y], B[z]), E[x])),
            m(m(B[z], E[y]), E[x]),
        ]
        out = la.zero_vector(n)
        for t in terms:
            out = la.add(out, t)
        return out
    out = _ternary(a, Tensor.from_function((n, n, n), n, fn))
    if validate:
        rep = check_structure(out)
        if not rep.ok:
            raise PreconditionError("bracket from this averaging operator is not ternary Leibniz", rep)
    return out
