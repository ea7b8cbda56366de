"""Fixtures and generated suites shared by the test modules."""

import itertools
import random
from functools import lru_cache

from trialab import io
from trialab import linalg as la
from trialab.algebra import (ASSOCIATIVE, LEIBNIZ, TERNARY, TRIASSOCIATIVE, Algebra, check_structure, direct_sum,
                             ideal_check, opposite_triassociative, promote_associative, quotient)
from trialab.crossed import CROSS_LAYOUT, Action, action_from_ambient, check_action
from trialab.errors import PreconditionError
from trialab.linalg import Subspace
from trialab.tensor import Tensor


def fixture(name, **params):
    return io.load(name, params or None).payload


def L3():
    return fixture("leibniz3")


def T2():
    return fixture("ternary2")


def A2():
    return fixture("assoc2")


def TRI2():
    return fixture("tri2")


def e1_ideal(dim=2):
    return Subspace.span([la.basis_vector(dim, 0)], dim)


def upper_triangular():
    """2x2 upper triangular matrices on E11, E12, E22."""
    return Algebra.build(ASSOCIATIVE, 3, {"bracket": [(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)]},
                         ("E11", "E12", "E22"))


def middle_only(assoc):
    """Triassociative algebra with the associative product in the middle slot and zero elsewhere."""
    m = assoc.op("bracket")
    z = Algebra.zero(TRIASSOCIATIVE, assoc.dim).op("left")
    return Algebra(TRIASSOCIATIVE, assoc.dim, {"left": z, "middle": m, "right": z}, assoc.basis)


@lru_cache(maxsize=None)
def dim1_triassociative():
    out = []
    for l, m, r in itertools.product((-1, 0, 1), repeat=3):
        a = Algebra.build(TRIASSOCIATIVE, 1, {"left": [(0, 0, 0, l)], "middle": [(0, 0, 0, m)], "right": [(0, 0, 0, r)]})
        if check_structure(a).ok:
            out.append(a)
    return tuple(out)


@lru_cache(maxsize=None)
def triassociative_suite():
    """Valid triassociative algebras of dimension at most 3."""
    tri2 = TRI2()
    base = [tri2, opposite_triassociative(tri2), middle_only(A2()), promote_associative(upper_triangular()),
            middle_only(upper_triangular()), Algebra.zero(TRIASSOCIATIVE, 2)]
    base += list(dim1_triassociative())
    base.append(direct_sum(dim1_triassociative()[0], middle_only(A2())))
    base.append(quotient(promote_associative(upper_triangular()), Subspace.span([(0, 1, 0)], 3))[0])
    assert all(check_structure(a).ok for a in base)
    return tuple(base)


def random_entries(rng, dim, arity, density=0.3, coeffs=(-1, 1)):
    rows = []
    for idx in itertools.product(range(dim), repeat=arity):
        for k in range(dim):
            if rng.random() < density:
                rows.append(idx + (k, rng.choice(coeffs)))
    return rows


def random_algebra(rng, kind, dim, density=0.3):
    arity = 3 if kind == TERNARY else 2
    slots = {TRIASSOCIATIVE: ("left", "middle", "right")}.get(kind, ("bracket3",) if kind == TERNARY else ("bracket",))
    return Algebra.build(kind, dim, {s: random_entries(rng, dim, arity, density) for s in slots})


def random_suite(kind, count, seed, max_dim=3, density=0.3):
    rng = random.Random(seed)
    return [random_algebra(rng, kind, rng.randint(1, max_dim), density) for _ in range(count)]


def coordinate_subspaces(n):
    for k in range(n + 1):
        for s in itertools.combinations(range(n), k):
            yield Subspace.span([la.basis_vector(n, i) for i in s], n)


def ambient_actions(ambient, max_total=4):
    """Actions of coordinate subalgebras on coordinate ideals through the ambient products."""
    n = ambient.dim
    subs = list(coordinate_subspaces(n))
    for i in subs:
        if not ideal_check(i, ambient, "two-sided" if ambient.kind != TERNARY else "three-sided"):
            continue
        for b in subs:
            if b.dim == 0 or i.dim + b.dim > max_total:
                continue
            try:
                yield action_from_ambient(ambient, i, b)
            except PreconditionError:
                continue


def one_by_one_actions(acting, acted, values=(-1, 0, 1)):
    """Every valid triassociative action with cross coefficients from ``values`` between 1-dim algebras."""
    names = list(CROSS_LAYOUT[TRIASSOCIATIVE])
    for coeffs in itertools.product(values, repeat=len(names)):
        cross = {n: _scalar_tensor(c) for n, c in zip(names, coeffs)}
        act = Action(TRIASSOCIATIVE, acting, acted, cross)
        if check_action(act, first_only=True).ok:
            yield act


def _scalar_tensor(c):
    return Tensor.from_entries((1, 1, 1), [(0, 0, 0, c)])


@lru_cache(maxsize=None)
def grid_triassociative_actions(max_total=4):
    """Fixture-derived and grid-generated valid actions with dim(acted) + dim(acting) <= max_total."""
    acts = []
    for amb in triassociative_suite():
        acts += [a for a in ambient_actions(amb, max_total)]
    ones = dim1_triassociative()
    for acting in ones:
        for acted in ones:
            acts += list(one_by_one_actions(acting, acted))
    return tuple(acts)


def leibniz_dim2_suite():
    """All Leibniz brackets on K^2 with structure constants in {-1,0,1} on a sparse pattern grid.

    Every bracket with at most two nonzero constants is tried; the valid ones are kept.
    """
    out = []
    slots = [(i, j, k) for i in range(2) for j in range(2) for k in range(2)]
    for r in range(3):
        for chosen in itertools.combinations(slots, r):
            for signs in itertools.product((-1, 1), repeat=r):
                a = Algebra.build(LEIBNIZ, 2, {"bracket": [s + (c,) for s, c in zip(chosen, signs)]})
                if check_structure(a).ok:
                    out.append(a)
    return out
