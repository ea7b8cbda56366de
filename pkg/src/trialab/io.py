"""JSON interchange for algebras, maps, subspaces, actions and crossed modules.

Every document is an object with ``"schema": "trialab/<type>@1"``.  Nested
objects (the algebras inside an action, the action and map inside a
crossed module) may be given inline or as a path string relative to the
containing file.  Saving is canonical: sorted keys, sorted tensor entries,
rationals in lowest terms, one entry per line.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import linalg as la
from .algebra import KINDS, SLOTS, TERNARY, Algebra
from .crossed import CROSS_LAYOUT, Action, CrossedModule
from .errors import DimensionError, SchemaError
from .linalg import Matrix, Subspace
from .tensor import Tensor

TYPES = ("algebra", "map", "subspace", "action", "crossed-module")
FIELDS = {
    "algebra": ({"kind", "dim", "products"}, {"basis", "note"}),
    "map": ({"rows", "cols", "entries"}, {"parameters", "note"}),
    "subspace": ({"ambient_dim", "basis"}, {"note"}),
    "action": ({"kind", "acting", "acted", "cross"}, {"note"}),
    "crossed-module": ({"action", "phi"}, {"note"}),
}
FIXTURE_DIR = Path(__file__).resolve().parent / "fixtures"
_SYMBOLIC = re.compile(r"^\s*(?:(-?\d+(?:/\d+)?)\s*\*\s*)?(-?)\s*([A-Za-z_]\w*)\s*$")


@dataclass(frozen=True)
class Document:
    type: str
    payload: object
    note: str | None = None


def schema_tag(kind: str) -> str:
    return f"trialab/{kind}@1"


def _fail(path: str, msg: str):
    raise SchemaError(f"{path}: {msg}")


def _scalar(raw, path: str, params: dict | None = None, declared=()) -> Fraction:
    if isinstance(raw, bool) or isinstance(raw, float):
        _fail(path, f"expected an exact rational string, got {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if not isinstance(raw, str):
        _fail(path, f"expected a rational string, got {raw!r}")
    try:
        return Fraction(raw.strip())
    except ValueError:
        pass
    m = _SYMBOLIC.match(raw)
    if not m or m.group(3) not in declared:
        _fail(path, f"not a rational number: {raw!r}")
    name = m.group(3)
    if params is None or name not in params:
        _fail(path, f"parameter {name!r} needs a value (use --param {name}=...)")
    c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
    if m.group(2):
        c = -c
    return c * params[name]


def _int(raw, path: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int) or raw < 0:
        _fail(path, f"expected a non-negative integer, got {raw!r}")
    return raw


def _object(raw, path: str, kind: str) -> dict:
    if not isinstance(raw, dict):
        _fail(path, f"expected an object, got {type(raw).__name__}")
    required, optional = FIELDS[kind]
    tag = raw.get("schema")
    if tag is not None and tag != schema_tag(kind):
        _fail(f"{path}.schema", f"expected {schema_tag(kind)!r}, got {tag!r}")
    keys = set(raw) - {"schema"}
    unknown = keys - required - optional
    if unknown:
        _fail(f"{path}.{sorted(unknown)[0]}", "unknown field")
    missing = required - keys
    if missing:
        _fail(f"{path}.{sorted(missing)[0]}", "missing required field")
    return raw


def _entries(raw, path: str, shape: tuple, params=None, declared=()) -> list:
    if not isinstance(raw, list):
        _fail(path, "expected a list of entries")
    k = len(shape)
    rows = []
    for n, e in enumerate(raw):
        p = f"{path}[{n}]"
        if not isinstance(e, list) or len(e) != k + 1:
            _fail(p, f"expected [{', '.join(['index'] * k)}, coefficient]")
        idx = []
        for q, (i, d) in enumerate(zip(e[:k], shape)):
            i = _int(i, f"{p}[{q}]")
            if i >= d:
                _fail(f"{p}[{q}]", f"index {i} out of range for dimension {d}")
            idx.append(i)
        rows.append(tuple(idx) + (_scalar(e[k], f"{p}[{k}]", params, declared),))
    return rows


def _resolve(raw, path: str, kind: str, base: Path, params):
    if isinstance(raw, str):
        ref = (base / raw) if not Path(raw).is_absolute() else Path(raw)
        doc = load(ref, params)
        if doc.type != kind:
            _fail(path, f"{raw} holds a {doc.type}, expected a {kind}")
        return doc.payload
    return PARSERS[kind](raw, path, base, params)


def _parse_algebra(raw, path, base, params) -> Algebra:
    raw = _object(raw, path, "algebra")
    kind = raw["kind"]
    if kind not in KINDS:
        _fail(f"{path}.kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    dim = _int(raw["dim"], f"{path}.dim")
    basis = raw.get("basis", [])
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        _fail(f"{path}.basis", "expected a list of names")
    if basis and len(basis) != dim:
        _fail(f"{path}.basis", f"{len(basis)} names for dimension {dim}")
    prods = raw["products"]
    if not isinstance(prods, dict):
        _fail(f"{path}.products", "expected an object keyed by product slot")
    arity = 3 if kind == TERNARY else 2
    for slot in prods:
        if slot not in SLOTS[kind]:
            _fail(f"{path}.products.{slot}", f"no such slot for {kind}; expected {', '.join(SLOTS[kind])}")
    tensors = {s: Tensor.from_entries((dim,) * (arity + 1),
                                      _entries(prods.get(s, []), f"{path}.products.{s}", (dim,) * (arity + 1)))
               for s in SLOTS[kind]}
    return Algebra(kind, dim, tensors, tuple(basis))


def _parse_map(raw, path, base, params) -> Matrix:
    raw = _object(raw, path, "map")
    rows = _int(raw["rows"], f"{path}.rows")
    cols = _int(raw["cols"], f"{path}.cols")
    declared = raw.get("parameters", [])
    if not isinstance(declared, list) or not all(isinstance(d, str) for d in declared):
        _fail(f"{path}.parameters", "expected a list of parameter names")
    grid = [[la.ZERO] * cols for _ in range(rows)]
    for r, c, v in _entries(raw["entries"], f"{path}.entries", (rows, cols), params, tuple(declared)):
        grid[r][c] += v
    return Matrix(rows, cols, tuple(tuple(r) for r in grid))


def _parse_subspace(raw, path, base, params) -> Subspace:
    raw = _object(raw, path, "subspace")
    n = _int(raw["ambient_dim"], f"{path}.ambient_dim")
    vectors = raw["basis"]
    if not isinstance(vectors, list):
        _fail(f"{path}.basis", "expected a list of vectors")
    out = []
    for k, v in enumerate(vectors):
        if not isinstance(v, list) or len(v) != n:
            _fail(f"{path}.basis[{k}]", f"expected a vector of length {n}")
        out.append(tuple(_scalar(x, f"{path}.basis[{k}][{q}]") for q, x in enumerate(v)))
    return Subspace.span(out, n)


def _parse_action(raw, path, base, params) -> Action:
    raw = _object(raw, path, "action")
    kind = raw["kind"]
    if kind not in CROSS_LAYOUT:
        _fail(f"{path}.kind", f"actions are defined for {', '.join(CROSS_LAYOUT)}")
    acting = _resolve(raw["acting"], f"{path}.acting", "algebra", base, params)
    acted = _resolve(raw["acted"], f"{path}.acted", "algebra", base, params)
    for side, alg in (("acting", acting), ("acted", acted)):
        if alg.kind != kind:
            _fail(f"{path}.{side}", f"{alg.kind} algebra in a {kind} action")
    cross = raw["cross"]
    if not isinstance(cross, dict):
        _fail(f"{path}.cross", "expected an object keyed by cross-tensor name")
    tensors = {}
    for name, entries in cross.items():
        if name not in CROSS_LAYOUT[kind]:
            _fail(f"{path}.cross.{name}", f"unknown cross tensor; expected {', '.join(CROSS_LAYOUT[kind])}")
        pattern = CROSS_LAYOUT[kind][name][1]
        shape = tuple(acted.dim if p == "A" else acting.dim for p in pattern) + (acted.dim,)
        tensors[name] = Tensor.from_entries(shape, _entries(entries, f"{path}.cross.{name}", shape))
    return Action(kind, acting, acted, tensors)


def _parse_cm(raw, path, base, params) -> CrossedModule:
    raw = _object(raw, path, "crossed-module")
    act = _resolve(raw["action"], f"{path}.action", "action", base, params)
    phi = _resolve(raw["phi"], f"{path}.phi", "map", base, params)
    try:
        return CrossedModule(act, phi)
    except DimensionError as e:
        _fail(f"{path}.phi", str(e))


PARSERS = {
    "algebra": _parse_algebra,
    "map": _parse_map,
    "subspace": _parse_subspace,
    "action": _parse_action,
    "crossed-module": _parse_cm,
}


def parse(raw: dict, base: Path | str = ".", params: dict | None = None, where: str = "$") -> Document:
    if not isinstance(raw, dict):
        _fail(where, "top level must be an object")
    tag = raw.get("schema")
    kind = next((t for t in TYPES if schema_tag(t) == tag), None)
    if kind is None:
        _fail(f"{where}.schema", f"unknown schema {tag!r}; expected one of {', '.join(schema_tag(t) for t in TYPES)}")
    params = {k: la.to_scalar(v) for k, v in (params or {}).items()}
    payload = PARSERS[kind](raw, where, Path(base), params)
    return Document(kind, payload, raw.get("note"))


def resolve_path(path) -> Path:
    """Use ``path`` as given, falling back to the bundled fixture of that name."""
    p = Path(path)
    if p.exists():
        return p
    for cand in (FIXTURE_DIR / p.name, FIXTURE_DIR / (p.name + ".json")):
        if cand.exists():
            return cand
    return p


def load(path, params: dict | None = None) -> Document:
    p = resolve_path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"{path}: cannot read ({e.strerror})") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}:{e.lineno}:{e.colno}: parse error: {e.msg}") from None
    return parse(raw, p.parent, params, where=str(path))


def load_as(path, kind: str, params: dict | None = None):
    doc = load(path, params)
    if doc.type != kind:
        raise SchemaError(f"{path}: holds a {doc.type}, expected a {kind}")
    return doc.payload


# ---------------------------------------------------------------------------
# canonical output


def _fmt(c: Fraction) -> str:
    return la.format_scalar(c)


def _tensor_entries(t: Tensor) -> list:
    return [list(r[:-1]) + [_fmt(r[-1])] for r in t.entries]


def algebra_to_dict(a: Algebra) -> dict:
    d = {"kind": a.kind, "dim": a.dim, "products": {s: _tensor_entries(a.op(s)) for s in a.slots}}
    if a.basis != tuple(f"e{i + 1}" for i in range(a.dim)):
        d["basis"] = list(a.basis)
    return d


def map_to_dict(m: Matrix) -> dict:
    entries = [[r, c, _fmt(m[r, c])] for r in range(m.rows) for c in range(m.cols) if m[r, c]]
    return {"rows": m.rows, "cols": m.cols, "entries": entries}


def subspace_to_dict(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "basis": [[_fmt(x) for x in v] for v in s.vectors]}


def action_to_dict(act: Action) -> dict:
    return {
        "kind": act.kind,
        "acting": algebra_to_dict(act.acting),
        "acted": algebra_to_dict(act.acted),
        "cross": {n: _tensor_entries(t) for n, t in act.cross.items() if t.entries},
    }


def cm_to_dict(cm: CrossedModule) -> dict:
    return {"action": action_to_dict(cm.action), "phi": map_to_dict(cm.phi)}


def to_document(obj, note: str | None = None) -> dict:
    for cls, kind, fn in ((Algebra, "algebra", algebra_to_dict), (Matrix, "map", map_to_dict),
                          (Subspace, "subspace", subspace_to_dict), (Action, "action", action_to_dict),
                          (CrossedModule, "crossed-module", cm_to_dict)):
        if isinstance(obj, cls):
            d = {"schema": schema_tag(kind), **fn(obj)}
            if note:
                d["note"] = note
            return d
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _render(x, indent: int) -> str:
    pad = "  " * indent
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f'{pad}  {json.dumps(k, ensure_ascii=False)}: {_render(x[k], indent + 1)}' for k in sorted(x)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(x, list):
        if not x:
            return "[]"
        if all(not isinstance(v, (list, dict)) for v in x):
            return json.dumps(x, ensure_ascii=False, separators=(", ", ": "))
        items = [f"{pad}  {_render(v, indent + 1)}" for v in x]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(x, ensure_ascii=False)


def dumps(obj, note: str | None = None) -> str:
    doc = obj if isinstance(obj, dict) else to_document(obj, note)
    return _render(doc, 0) + "\n"


def save(obj, path, note: str | None = None):
    Path(path).write_text(dumps(obj, note), encoding="utf-8")
