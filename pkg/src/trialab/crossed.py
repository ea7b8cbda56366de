"""Actions, semidirect products and crossed modules for all three algebra kinds.

An action of an algebra B ("acting") on an algebra A ("acted") is a set of
cross tensors, one per product slot and per *mixed* pattern of arguments.
A pattern is a string over ``"A"``/``"B"`` naming which space each
argument lives in; the output always lies in A.

    triassociative  mu1_* : A x B -> A,  mu2_* : B x A -> A  (* = left, mid, right)
    leibniz         mu1   : A x B -> A,  mu2   : B x A -> A
    ternary         m1 ABB, m2 BAB, m3 BBA, mp1 BAA, mp2 ABA, mp3 AAB

The semidirect product A x| B has, in every slot, the acted product on
pure-A arguments, the acting product on pure-B arguments (landing in B)
and the cross tensors on mixed arguments.  An action is valid exactly when
the mixed instances of the kind's identities hold on A x| B.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from . import linalg as la
from .algebra import (LEIBNIZ, TERNARY, TRIASSOCIATIVE, Algebra, annihilator, check_morphism, ideal_check,
                      natural_side, restrict_to_subalgebra, structure_arity, structure_checks, sweep)
from .errors import DimensionError, KindError, PreconditionError
from .functors import t_tensor_from_triassoc
from .linalg import Matrix, Subspace
from .operators import AVERAGING_OP, OperatorKind, check_operator, derived_products
from .report import Violation, ViolationReport
from .tensor import Tensor

CROSS_LAYOUT = {
    TRIASSOCIATIVE: {
        "μ1_left": ("left", "AB"), "μ1_mid": ("middle", "AB"), "μ1_right": ("right", "AB"),
        "μ2_left": ("left", "BA"), "μ2_mid": ("middle", "BA"), "μ2_right": ("right", "BA"),
    },
    LEIBNIZ: {"mu1": ("bracket", "AB"), "mu2": ("bracket", "BA")},
    TERNARY: {
        "m1": ("bracket3", "ABB"), "m2": ("bracket3", "BAB"), "m3": ("bracket3", "BBA"),
        "mp1": ("bracket3", "BAA"), "mp2": ("bracket3", "ABA"), "mp3": ("bracket3", "AAB"),
    },
}

# numbering of the Rota-Baxter action identities for ternary brackets
RB_ACTION_INDEX = {"mp1": 1, "mp2": 2, "mp3": 3, "m1": 4, "m2": 5, "m3": 6}


def cross_names(kind: str) -> tuple:
    try:
        return tuple(CROSS_LAYOUT[kind])
    except KeyError:
        raise KindError(f"actions are not defined for {kind} algebras") from None


def name_for(kind: str, slot: str, pattern: str) -> str:
    for name, (s, p) in CROSS_LAYOUT[kind].items():
        if s == slot and p == pattern:
            return name
    raise KeyError((slot, pattern))


@dataclass(frozen=True, eq=False)
class Action:
    kind: str
    acting: Algebra
    acted: Algebra
    cross: Mapping[str, Tensor] = field(default_factory=dict)

    def __post_init__(self):
        layout = CROSS_LAYOUT.get(self.kind)
        if layout is None:
            raise KindError(f"actions are not defined for {self.kind} algebras")
        if self.acting.kind != self.kind or self.acted.kind != self.kind:
            raise KindError(f"{self.kind} action between {self.acting.kind} and {self.acted.kind} algebras")
        unknown = set(self.cross) - set(layout)
        if unknown:
            raise KindError(f"unknown cross tensors {sorted(unknown)} for a {self.kind} action")
        full = {}
        for name in layout:
            shape = self.shape_of(name)
            t = self.cross.get(name)
            t = Tensor.zero(shape) if t is None else t
            if t.shape != shape:
                raise DimensionError(f"cross tensor {name} has shape {t.shape}, expected {shape}")
            full[name] = t
        object.__setattr__(self, "cross", full)

    def shape_of(self, name: str) -> tuple:
        _, pattern = CROSS_LAYOUT[self.kind][name]
        return tuple(self.dim_of(p) for p in pattern) + (self.acted.dim,)

    def dim_of(self, space: str) -> int:
        return self.acted.dim if space == "A" else self.acting.dim

    def labels_of(self, pattern: str) -> list:
        return [self.acted.basis if p == "A" else self.acting.basis for p in pattern]

    def __eq__(self, other):
        if not isinstance(other, Action):
            return NotImplemented
        return (self.kind == other.kind and self.acting == other.acting and self.acted == other.acted
                and dict(self.cross) == dict(other.cross))

    __hash__ = None

    def mu(self, name: str, *args):
        return self.cross[name](*args)


@dataclass(frozen=True, eq=False)
class CrossedModule:
    action: Action
    phi: Matrix

    def __post_init__(self):
        a, b = self.action.acted, self.action.acting
        if self.phi.rows != b.dim or self.phi.cols != a.dim:
            raise DimensionError(f"phi must be {b.dim}x{a.dim}, got {self.phi.rows}x{self.phi.cols}")

    @property
    def kind(self) -> str:
        return self.action.kind

    @property
    def acted(self) -> Algebra:
        return self.action.acted

    @property
    def acting(self) -> Algebra:
        return self.action.acting

    def __eq__(self, other):
        if not isinstance(other, CrossedModule):
            return NotImplemented
        return self.action == other.action and self.phi == other.phi

    __hash__ = None


def trivial_action(acting: Algebra, acted: Algebra) -> Action:
    return Action(acting.kind, acting, acted, {})


# ---------------------------------------------------------------------------
# semidirect products


def _semidirect_names(act: Action) -> tuple:
    a_names = act.acted.basis
    b_names = act.acting.basis
    if set(a_names) & set(b_names):
        b_names = tuple(n + "'" for n in b_names)
    return a_names + b_names


def semidirect(act: Action) -> Algebra:
    """A x| B on the coordinates (acted..., acting...)."""
    a, b = act.acted, act.acting
    na, nb = a.dim, b.dim
    k = a.arity
    prods = {}
    for slot in a.slots:
        rows = list(a.op(slot).entries)
        rows += [tuple(i + na for i in r[:-1]) + (r[-1],) for r in b.op(slot).entries]
        for name, (s, pattern) in CROSS_LAYOUT[act.kind].items():
            if s != slot:
                continue
            for r in act.cross[name].entries:
                idx = tuple(i + (na if p == "B" else 0) for i, p in zip(r[:k], pattern))
                rows.append(idx + r[k:])
        prods[slot] = Tensor.from_entries((na + nb,) * (k + 1), rows)
    return Algebra(a.kind, na + nb, prods, _semidirect_names(act))


def _is_mixed(witness, na: int) -> bool:
    return any(i < na for i in witness) and any(i >= na for i in witness)


def check_action(act: Action, first_only: bool = False) -> ViolationReport:
    """Mixed-witness violations of the kind's identities on the semidirect product."""
    s = semidirect(act)
    na = act.acted.dim
    zero = la.zero_vector(s.dim)

    def mixed_only(fn):
        return lambda *idx: fn(*idx) if _is_mixed(idx, na) else zero
    checks = [(axiom, mixed_only(fn)) for axiom, fn in structure_checks(s)]
    n = structure_arity(s)
    return sweep((s.dim,) * n, checks, [s.basis] * n, first_only=first_only)


def _pattern_of(witness, na: int) -> str:
    return "".join("A" if i < na else "B" for i in witness)


def action_from_ambient(ambient: Algebra, acted: Subspace, acting: Subspace | None = None) -> Action:
    """Action of a subalgebra on an ideal through the ambient products.

    ``acting`` defaults to the whole ambient algebra.  Both subspaces are
    re-coordinatised in their RREF bases.
    """
    if not ideal_check(acted, ambient, natural_side(ambient)):
        raise PreconditionError("acted subspace is not an ideal of the ambient algebra")
    full = acting is None or acting == Subspace.full(ambient.dim)
    a_alg, _ = restrict_to_subalgebra(ambient, acted)
    if full:
        b_alg, b_vectors = ambient, [ambient.e(i) for i in range(ambient.dim)]
    else:
        b_alg, _ = restrict_to_subalgebra(ambient, acting)
        b_vectors = acting.vectors
    a_vectors = acted.vectors
    cross = {}
    for name, (slot, pattern) in CROSS_LAYOUT[ambient.kind].items():
        t = ambient.op(slot)
        dims = [a_alg.dim if p == "A" else b_alg.dim for p in pattern]

        def fn(*idx, t=t, pattern=pattern):
            args = [a_vectors[i] if p == "A" else b_vectors[i] for i, p in zip(idx, pattern)]
            return acted.coordinates(t(*args))
        cross[name] = Tensor.from_function(dims, a_alg.dim, fn)
    return Action(ambient.kind, b_alg, a_alg, cross)


def self_action(a: Algebra) -> Action:
    """An algebra acting on itself through its own products."""
    return action_from_ambient(a, Subspace.full(a.dim))


# ---------------------------------------------------------------------------
# crossed modules


def check_crossed_module(cm: CrossedModule) -> ViolationReport:
    """phi is a morphism, equivariant, and satisfies the Peiffer-type identities.

    Equivariance: phi(mu(args)) equals the acting product of the arguments
    with every acted argument pushed through phi.  Peiffer: feeding phi(l)
    into an acting position of a cross tensor equals the tensor (or the
    acted product) with ``l`` in that position.
    """
    act = cm.action
    rep = check_action(act)
    if not rep.ok:
        raise PreconditionError(f"the action is not valid ({len(rep)} violations)", rep)
    a, b, phi = act.acted, act.acting, cm.phi
    kind = act.kind
    A = [a.e(i) for i in range(a.dim)]
    B = [b.e(i) for i in range(b.dim)]
    P = phi.columns()
    parts = [check_morphism(phi, a, b).prefixed("cm-phi:")]
    for name, (slot, pattern) in CROSS_LAYOUT[kind].items():
        mu = act.cross[name]
        prod_b = b.op(slot)

        def equiv(*idx, mu=mu, prod_b=prod_b, pattern=pattern):
            lhs = phi.apply(mu.basis_value(*idx))
            rhs = prod_b(*[P[i] if p == "A" else B[i] for i, p in zip(idx, pattern)])
            return la.sub(lhs, rhs)
        dims = [act.dim_of(p) for p in pattern]
        parts.append(sweep(dims, [(f"cm-equivariance:{name}", equiv)], act.labels_of(pattern)))

        for q, p in enumerate(pattern):
            if p != "B":
                continue
            target_pattern = pattern[:q] + "A" + pattern[q + 1:]
            if "B" in target_pattern:
                target = act.cross[name_for(kind, slot, target_pattern)]
            else:
                target = a.op(slot)

            def peiffer(*idx, mu=mu, target=target, pattern=pattern, q=q):
                args = [A[i] if pp == "A" else B[i] for i, pp in zip(idx, pattern)]
                args[q] = P[idx[q]]
                return la.sub(mu(*args), target.basis_value(*idx))
            dims = [act.dim_of(pp) for pp in target_pattern]
            parts.append(sweep(dims, [(f"cm-peiffer:{name}@{q + 1}", peiffer)], act.labels_of(target_pattern)))
    return ViolationReport.merge(*parts)


def check_crossed_morphism(alpha: Matrix, beta: Matrix, src: CrossedModule, dst: CrossedModule) -> ViolationReport:
    if src.kind != dst.kind:
        raise KindError(f"kind mismatch: {src.kind} vs {dst.kind}")
    if (alpha.rows, alpha.cols) != (dst.acted.dim, src.acted.dim):
        raise DimensionError("alpha must map the source acted algebra to the target acted algebra")
    if (beta.rows, beta.cols) != (dst.acting.dim, src.acting.dim):
        raise DimensionError("beta must map the source acting algebra to the target acting algebra")
    parts = [
        check_morphism(alpha, src.acted, dst.acted).prefixed("alpha:"),
        check_morphism(beta, src.acting, dst.acting).prefixed("beta:"),
    ]
    left = dst.phi @ alpha
    right = beta @ src.phi
    square = [Violation("square", (j,), la.sub(left.column(j), right.column(j)), (src.acted.basis[j],))
              for j in range(src.acted.dim) if left.column(j) != right.column(j)]
    parts.append(ViolationReport.of(square))
    Acols, Bcols = alpha.columns(), beta.columns()
    sa = src.action
    for name, (_, pattern) in CROSS_LAYOUT[src.kind].items():
        mu, nu = sa.cross[name], dst.action.cross[name]

        def inter(*idx, mu=mu, nu=nu, pattern=pattern):
            lhs = alpha.apply(mu.basis_value(*idx))
            rhs = nu(*[Acols[i] if p == "A" else Bcols[i] for i, p in zip(idx, pattern)])
            return la.sub(lhs, rhs)
        parts.append(sweep([sa.dim_of(p) for p in pattern], [(f"intertwine:{name}", inter)], sa.labels_of(pattern)))
    return ViolationReport.merge(*parts)


def crossed_from_ideal(a: Algebra, i: Subspace) -> CrossedModule:
    """The inclusion of an ideal, acted on by the ambient products."""
    if not ideal_check(i, a, natural_side(a)):
        raise PreconditionError("the subspace is not an ideal")
    act = action_from_ambient(a, i)
    incl = Matrix.from_columns(i.vectors, rows=a.dim)
    return CrossedModule(act, incl)


def identity_crossed_module(a: Algebra) -> CrossedModule:
    return CrossedModule(self_action(a), Matrix.identity(a.dim))


@dataclass(frozen=True)
class CrossedModuleProperties:
    ker_in_ann: bool
    image_is_ideal: bool
    image_acts_trivially_on_ann: bool

    @property
    def all_true(self) -> bool:
        return self.ker_in_ann and self.image_is_ideal and self.image_acts_trivially_on_ann


def crossed_module_properties(cm: CrossedModule) -> CrossedModuleProperties:
    rep = check_crossed_module(cm)
    if not rep.ok:
        raise PreconditionError("not a crossed module", rep)
    act = cm.action
    ann = annihilator(cm.acted)
    ker = la.kernel(cm.phi)
    im = la.image(cm.phi)
    trivial = True
    for name, (_, pattern) in CROSS_LAYOUT[cm.kind].items():
        choices = [ann.vectors if p == "A" else im.vectors for p in pattern]
        for args in itertools.product(*choices):
            if not la.is_zero(act.cross[name](*args)):
                trivial = False
    return CrossedModuleProperties(
        ker_in_ann=ker <= ann,
        image_is_ideal=ideal_check(im, cm.acting, natural_side(cm.acting)),
        image_acts_trivially_on_ann=trivial,
    )


def shift_map(cm: CrossedModule) -> Matrix:
    """(x, a) -> (-x, phi(x) + a) on A x| B."""
    na, nb = cm.acted.dim, cm.acting.dim
    cols = []
    for j in range(na):
        cols.append(tuple(-c for c in la.basis_vector(na, j)) + cm.phi.column(j))
    for j in range(nb):
        cols.append(la.zero_vector(na) + la.basis_vector(nb, j))
    return Matrix.from_columns(cols, rows=na + nb)


def shift_morphism_check(cm: CrossedModule, validate: bool = True) -> ViolationReport:
    if cm.kind != TRIASSOCIATIVE:
        raise KindError("the shift map is checked for triassociative crossed modules")
    if validate:
        _require_crossed(cm)
    s = semidirect(cm.action)
    return check_morphism(shift_map(cm), s, s)


def _require_crossed(cm: CrossedModule):
    rep = check_crossed_module(cm)
    if not rep.ok:
        raise PreconditionError(f"not a crossed module ({len(rep)} violations)", rep)


# ---------------------------------------------------------------------------
# induced ternary structures


def _ternary_alg(a: Algebra, bracket: Tensor) -> Algebra:
    return Algebra(TERNARY, a.dim, {"bracket3": bracket}, a.basis)


def induce_ternary_action_from_triassoc(act: Action, printed: bool = False) -> Action:
    """The six ternary cross tensors induced by a triassociative action.

    With ``printed=True`` the acted-side maps mp2/mp3 use the middle product
    as the outer product (``y _|_ w``) instead of ``y -| w``; this is kept
    to exhibit that variant, which does not reproduce T(A x| B) in general.
    """
    if act.kind != TRIASSOCIATIVE:
        raise KindError("expected a triassociative action")
    a, b = act.acted, act.acting
    na, nb = a.dim, b.dim
    A = [a.e(i) for i in range(na)]
    B = [b.e(i) for i in range(nb)]
    mu = act.cross
    a_left, a_mid, a_right = a.op("left"), a.op("middle"), a.op("right")
    outer = a_mid if printed else a_left
    b_mid, a_mid_t = b.op("middle"), a_mid

    def comm_b(i, j):
        return la.sub(b_mid.basis_value(i, j), b_mid.basis_value(j, i))

    def comm_a(i, j):
        return la.sub(a_mid_t.basis_value(i, j), a_mid_t.basis_value(j, i))

    def m1(x, i, j):
        w = comm_b(i, j)
        return la.sub(mu["μ1_left"](A[x], w), mu["μ2_right"](w, A[x]))

    def m2(i, x, j):
        w = la.sub(mu["μ1_mid"](A[x], B[j]), mu["μ2_mid"](B[j], A[x]))
        return la.sub(mu["μ2_left"](B[i], w), mu["μ1_right"](w, B[i]))

    def m3(i, j, x):
        w = la.sub(mu["μ2_mid"](B[j], A[x]), mu["μ1_mid"](A[x], B[j]))
        return la.sub(mu["μ2_left"](B[i], w), mu["μ1_right"](w, B[i]))

    def mp1(c, y, z):
        w = comm_a(y, z)
        return la.sub(mu["μ2_left"](B[c], w), mu["μ1_right"](w, B[c]))

    def mp2(y, c, z):
        w = la.sub(mu["μ2_mid"](B[c], A[z]), mu["μ1_mid"](A[z], B[c]))
        return la.sub(outer(A[y], w), a_right(w, A[y]))

    def mp3(y, z, c):
        w = la.sub(mu["μ1_mid"](A[z], B[c]), mu["μ2_mid"](B[c], A[z]))
        return la.sub(outer(A[y], w), a_right(w, A[y]))

    fns = {"m1": m1, "m2": m2, "m3": m3, "mp1": mp1, "mp2": mp2, "mp3": mp3}
    cross = {}
    for name, (_, pattern) in CROSS_LAYOUT[TERNARY].items():
        dims = [na if p == "A" else nb for p in pattern]
        cross[name] = Tensor.from_function(dims, na, fns[name])
    ta = _ternary_alg(a, t_tensor_from_triassoc(a, "main"))
    tb = _ternary_alg(b, t_tensor_from_triassoc(b, "main"))
    return Action(TERNARY, tb, ta, cross)


def induce_ternary_cm_from_triassoc(cm: CrossedModule, printed: bool = False) -> CrossedModule:
    if cm.kind != TRIASSOCIATIVE:
        raise KindError("expected a triassociative crossed module")
    _require_crossed(cm)
    return CrossedModule(induce_ternary_action_from_triassoc(cm.action, printed), cm.phi)


def induce_ternary_action_from_leibniz(act: Action) -> Action:
    """Cross tensors of T(P) acting on T(L), read off from {X,Y,Z} = [X,[Y,Z]] on L x| P."""
    if act.kind != LEIBNIZ:
        raise KindError("expected a Leibniz action")
    l, p = act.acted, act.acting
    nl, np_ = l.dim, p.dim
    L = [l.e(i) for i in range(nl)]
    Pv = [p.e(i) for i in range(np_)]
    mu1, mu2 = act.cross["mu1"], act.cross["mu2"]
    bl, bp = l.op("bracket"), p.op("bracket")
    fns = {
        "m1": lambda x, i, j: mu1(L[x], bp.basis_value(i, j)),
        "m2": lambda i, x, j: mu2(Pv[i], mu1(L[x], Pv[j])),
        "m3": lambda i, j, x: mu2(Pv[i], mu2(Pv[j], L[x])),
        "mp1": lambda i, x, y: mu2(Pv[i], bl.basis_value(x, y)),
        "mp2": lambda x, i, y: bl(L[x], mu2(Pv[i], L[y])),
        "mp3": lambda x, y, i: bl(L[x], mu1(L[y], Pv[i])),
    }
    cross = {}
    for name, (_, pattern) in CROSS_LAYOUT[TERNARY].items():
        dims = [nl if c == "A" else np_ for c in pattern]
        cross[name] = Tensor.from_function(dims, nl, fns[name])
    from .functors import t_from_leibniz
    return Action(TERNARY, t_from_leibniz(p), t_from_leibniz(l), cross)


def induce_ternary_cm_from_leibniz(cm: CrossedModule) -> CrossedModule:
    if cm.kind != LEIBNIZ:
        raise KindError("expected a Leibniz crossed module")
    _require_crossed(cm)
    return CrossedModule(induce_ternary_action_from_leibniz(cm.action), cm.phi)


def functor_semidirect_compat(act: Action, printed: bool = False) -> bool:
    """T(A x| B) and T(A) x| T(B) have identical structure constants."""
    if act.kind != TRIASSOCIATIVE:
        raise KindError("expected a triassociative action")
    rep = check_action(act)
    if not rep.ok:
        raise PreconditionError("the action is not valid", rep)
    s = semidirect(act)
    lhs = t_tensor_from_triassoc(s, "main")
    rhs = semidirect(induce_ternary_action_from_triassoc(act, printed)).op("bracket3")
    return lhs == rhs


def semidirect_morphism_maps(cm: CrossedModule, validate: bool = True) -> ViolationReport:
    """The three maps between induced ternary semidirect products, each checked as a morphism.

    i)   (x, a) -> (phi(x), a)      T(A) x| T(B) -> T(B) x| T(B)
    ii)  (x, y) -> (x, phi(y))      T(A) x| T(A) -> T(A) x| T(B)
    iii) (x, a) -> (-x, phi(x) + a) T(A) x| T(B) -> T(A) x| T(B)
    """
    if cm.kind != TRIASSOCIATIVE:
        raise KindError("expected a triassociative crossed module")
    if validate:
        _require_crossed(cm)
    a, b = cm.acted, cm.acting
    t_ab = semidirect(induce_ternary_action_from_triassoc(cm.action))
    t_bb = semidirect(induce_ternary_action_from_triassoc(self_action(b)))
    t_aa = semidirect(induce_ternary_action_from_triassoc(self_action(a)))
    m1 = la.block_diagonal(cm.phi, Matrix.identity(b.dim))
    m2 = la.block_diagonal(Matrix.identity(a.dim), cm.phi)
    m3 = shift_map(cm)
    return ViolationReport.merge(
        check_morphism(m1, t_ab, t_bb).prefixed("map-i:"),
        check_morphism(m2, t_aa, t_ab).prefixed("map-ii:"),
        check_morphism(m3, t_ab, t_ab).prefixed("map-iii:"),
    )


# ---------------------------------------------------------------------------
# twisted crossed modules and actions


def mixed_operator_report(act: Action, r_acted: Matrix, r_acting: Matrix, kind: OperatorKind) -> ViolationReport:
    """Mixed instances of the operator identity for ``r_acted (+) r_acting`` on A x| B.

    These are the compatibility conditions between an operator pair and an
    action; each violation is relabelled with the cross tensor it concerns.
    """
    s = semidirect(act)
    na = act.acted.dim
    rep = check_operator(s, la.block_diagonal(r_acted, r_acting), kind)
    out = []
    for v in rep:
        if not _is_mixed(v.witness, na):
            continue
        slot = v.axiom[v.axiom.index("[") + 1:-1]
        name = name_for(act.kind, slot, _pattern_of(v.witness, na))
        base = v.axiom[:v.axiom.index("[")]
        out.append(Violation(f"{base}-action:{name}", v.witness, v.discrepancy, v.labels))
    return ViolationReport.of(out)


def rb_twisted_leibniz_action(act: Action, r_acted: Matrix, r_acting: Matrix, weight) -> Action:
    """mu1^R(l,p) = mu1(Rl,p) + mu1(l,Rp) + w mu1(l,p), and its mu2 twin, over the derived brackets."""
    lam = la.to_scalar(weight)
    kind = OperatorKind.rota_baxter(lam)
    nl, np_ = act.acted.dim, act.acting.dim
    RL, RP = r_acted.columns(), r_acting.columns()
    L = [act.acted.e(i) for i in range(nl)]
    Pv = [act.acting.e(i) for i in range(np_)]
    mu1, mu2 = act.cross["mu1"], act.cross["mu2"]

    def t1(x, i):
        return la.add(la.add(mu1(RL[x], Pv[i]), mu1(L[x], RP[i])), la.scale(lam, mu1.basis_value(x, i)))

    def t2(i, x):
        return la.add(la.add(mu2(RP[i], L[x]), mu2(Pv[i], RL[x])), la.scale(lam, mu2.basis_value(i, x)))
    return Action(
        LEIBNIZ,
        derived_products(act.acting, r_acting, kind),
        derived_products(act.acted, r_acted, kind),
        {"mu1": Tensor.from_function((nl, np_), nl, t1), "mu2": Tensor.from_function((np_, nl), nl, t2)},
    )


def rb_twist_leibniz_cm(cm: CrossedModule, r_acted: Matrix, r_acting: Matrix, weight) -> tuple:
    """Twist a Leibniz crossed module by a compatible Rota-Baxter pair.

    Returns the twisted Leibniz crossed module and its induced ternary
    crossed module.  Besides the operator identities and the two mixed
    compatibility identities, phi must intertwine the two operators.
    """
    if cm.kind != LEIBNIZ:
        raise KindError("expected a Leibniz crossed module")
    _require_crossed(cm)
    kind = OperatorKind.rota_baxter(weight)
    problems = ViolationReport.merge(
        check_operator(cm.acted, r_acted, kind).prefixed("acted:"),
        check_operator(cm.acting, r_acting, kind).prefixed("acting:"),
        mixed_operator_report(cm.action, r_acted, r_acting, kind),
        _intertwine_report(cm.phi, r_acted, r_acting),
    )
    if not problems.ok:
        failing = ", ".join(sorted(problems.axioms()))
        raise PreconditionError(f"Rota-Baxter twist hypotheses fail: {failing}", problems)
    first = CrossedModule(rb_twisted_leibniz_action(cm.action, r_acted, r_acting, weight), cm.phi)
    second = CrossedModule(induce_ternary_action_from_leibniz(first.action), cm.phi)
    return first, second


def _intertwine_report(phi: Matrix, r_acted: Matrix, r_acting: Matrix) -> ViolationReport:
    lhs, rhs = phi @ r_acted, r_acting @ phi
    return ViolationReport.of(
        Violation("phi-intertwines", (j,), la.sub(lhs.column(j), rhs.column(j)))
        for j in range(phi.cols) if lhs.column(j) != rhs.column(j)
    )


def averaging_twisted_action(act: Action, b_acted: Matrix, b_acting: Matrix, printed: bool = False) -> Action:
    """mu1_b(x, a) = mu1(b x, a) and mu2_b(a, x) = mu2(b a, x) over the averaging-derived products.

    ``printed=True`` uses mu2(a, b x) for the second family instead.
    """
    if act.kind != TRIASSOCIATIVE:
        raise KindError("expected a triassociative action")
    na, nb = act.acted.dim, act.acting.dim
    BA, BB = b_acted.columns(), b_acting.columns()
    A = [act.acted.e(i) for i in range(na)]
    B = [act.acting.e(i) for i in range(nb)]
    cross = {}
    for name, t in act.cross.items():
        if name.startswith("μ1"):
            cross[name] = Tensor.from_function((na, nb), na, lambda x, i, t=t: t(BA[x], B[i]))
        elif printed:
            cross[name] = Tensor.from_function((nb, na), na, lambda i, x, t=t: t(B[i], BA[x]))
        else:
            cross[name] = Tensor.from_function((nb, na), na, lambda i, x, t=t: t(BB[i], A[x]))
    return Action(
        TRIASSOCIATIVE,
        derived_products(act.acting, b_acting, AVERAGING_OP),
        derived_products(act.acted, b_acted, AVERAGING_OP),
        cross,
    )


def averaging_twist_triassoc_cm(cm: CrossedModule, b_acted: Matrix, b_acting: Matrix) -> CrossedModule:
    """Crossed module between the averaging-derived algebras.

    Hypotheses: both maps injective averaging operators, phi intertwines them,
    and their sum is an averaging operator on the semidirect product (the
    mixed identities ``mu(b x, b a) = b mu(b x, a) = b mu(x, b a)``).
    """
    if cm.kind != TRIASSOCIATIVE:
        raise KindError("expected a triassociative crossed module")
    _require_crossed(cm)
    problems = [
        check_operator(cm.acted, b_acted, AVERAGING_OP).prefixed("acted:"),
        check_operator(cm.acting, b_acting, AVERAGING_OP).prefixed("acting:"),
        mixed_operator_report(cm.action, b_acted, b_acting, AVERAGING_OP),
        _intertwine_report(cm.phi, b_acted, b_acting),
    ]
    injective = [Violation(f"injective:{side}", (), ()) for side, m, n in
                 (("acted", b_acted, cm.acted.dim), ("acting", b_acting, cm.acting.dim)) if la.rank(m) < n]
    problems.append(ViolationReport.of(injective))
    problems = ViolationReport.merge(*problems)
    if not problems.ok:
        failing = ", ".join(sorted(problems.axioms()))
        raise PreconditionError(f"averaging twist hypotheses fail: {failing}", problems)
    return CrossedModule(averaging_twisted_action(cm.action, b_acted, b_acting), cm.phi)


def twisted_ternary_action(act: Action, r_acted: Matrix, r_acting: Matrix) -> Action:
    """Each cross tensor replaced by the sum over the three ways of applying R to two arguments."""
    if act.kind != TERNARY:
        raise KindError("expected a ternary Leibniz action")
    na, nb = act.acted.dim, act.acting.dim
    RA, RB = r_acted.columns(), r_acting.columns()
    A = [act.acted.e(i) for i in range(na)]
    B = [act.acting.e(i) for i in range(nb)]
    cross = {}
    for name, (_, pattern) in CROSS_LAYOUT[TERNARY].items():
        t = act.cross[name]

        def fn(*idx, t=t, pattern=pattern):
            plain = [A[i] if p == "A" else B[i] for i, p in zip(idx, pattern)]
            hit = [RA[i] if p == "A" else RB[i] for i, p in zip(idx, pattern)]
            out = la.zero_vector(na)
            for skip in (2, 1, 0):
                args = [plain[k] if k == skip else hit[k] for k in range(3)]
                out = la.add(out, t(*args))
            return out
        dims = [na if p == "A" else nb for p in pattern]
        cross[name] = Tensor.from_function(dims, na, fn)
    kind = OperatorKind.rota_baxter(0)
    return Action(TERNARY, derived_products(act.acting, r_acting, kind),
                  derived_products(act.acted, r_acted, kind), cross)


def rb_twist_ternary_action(act: Action, r_acted: Matrix, r_acting: Matrix) -> Action:
    """Twist a ternary action by a weight-zero Rota-Baxter action.

    The six Rota-Baxter action identities are reported as
    ``rb-action-(k)``, numbered (1) mp1, (2) mp2, (3) mp3, (4) m1, (5) m2,
    (6) m3.
    """
    if act.kind != TERNARY:
        raise KindError("expected a ternary Leibniz action")
    kind = OperatorKind.rota_baxter(0)
    mixed = mixed_operator_report(act, r_acted, r_acting, kind)
    renamed = ViolationReport.of(
        Violation(f"rb-action-({RB_ACTION_INDEX[v.axiom.split(':')[1]]})", v.witness, v.discrepancy, v.labels)
        for v in mixed
    )
    problems = ViolationReport.merge(
        check_operator(act.acted, r_acted, kind).prefixed("acted:"),
        check_operator(act.acting, r_acting, kind).prefixed("acting:"),
        renamed,
    )
    if not problems.ok:
        failing = ", ".join(sorted(problems.axioms()))
        raise PreconditionError(f"Rota-Baxter action hypotheses fail: {failing}", problems)
    return twisted_ternary_action(act, r_acted, r_acting)
