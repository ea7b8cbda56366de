"""Sparse multilinear maps with exact coefficients.

A :class:`Tensor` of arity ``n`` maps ``n`` coordinate vectors (of the
dimensions ``shape[:-1]``) to a vector of dimension ``shape[-1]``.  Entries
are ``(i1, ..., in, out, coeff)`` with nonzero ``coeff``, kept sorted so
that two tensors are equal exactly when their structure constants agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .errors import DimensionError
from .linalg import ZERO, Matrix, Vector, format_scalar, to_scalar


@dataclass(frozen=True)
class Tensor:
    shape: tuple
    entries: tuple

    @classmethod
    def from_entries(cls, shape: Sequence[int], entries: Iterable[Sequence]) -> Tensor:
        """Build from ``(indices..., out, coeff)`` rows; repeated positions are summed."""
        shape = tuple(shape)
        acc: dict = {}
        for row in entries:
            *idx, c = row
            idx = tuple(int(i) for i in idx)
            if len(idx) != len(shape):
                raise DimensionError(f"entry {tuple(row)!r} does not match tensor shape {shape}")
            for i, n in zip(idx, shape):
                if not 0 <= i < n:
                    raise DimensionError(f"index {i} out of range in entry {tuple(row)!r} (shape {shape})")
            acc[idx] = acc.get(idx, ZERO) + to_scalar(c)
        return cls(shape, tuple(sorted(k + (v,) for k, v in acc.items() if v != 0)))

    @classmethod
    def zero(cls, shape: Sequence[int]) -> Tensor:
        return cls(tuple(shape), ())

    @classmethod
    def from_function(cls, in_dims: Sequence[int], out_dim: int, fn: Callable) -> Tensor:
        """Tabulate a multilinear map given by its values ``fn(i1, ..., in)`` on basis tuples."""
        rows = []
        for idx in itertools.product(*(range(n) for n in in_dims)):
            v = fn(*idx)
            rows.extend(idx + (k, c) for k, c in enumerate(v) if c)
        return cls(tuple(in_dims) + (out_dim,), tuple(sorted(rows)))

    @property
    def arity(self) -> int:
        return len(self.shape) - 1

    @property
    def in_dims(self) -> tuple:
        return self.shape[:-1]

    @property
    def out_dim(self) -> int:
        return self.shape[-1]

    @cached_property
    def table(self) -> dict:
        t: dict = {}
        for row in self.entries:
            *idx, k, c = row
            t.setdefault(tuple(idx), []).append((k, c))
        return t

    def basis_value(self, *idx: int) -> Vector:
        out = [ZERO] * self.out_dim
        for k, c in self.table.get(idx, ()):
            out[k] += c
        return tuple(out)

    def __call__(self, *args: Sequence) -> Vector:
        if len(args) != self.arity:
            raise DimensionError(f"tensor of arity {self.arity} called with {len(args)} arguments")
        for v, n in zip(args, self.in_dims):
            if len(v) != n:
                raise DimensionError(f"argument of length {len(v)} where {n} was expected")
        out = [ZERO] * self.out_dim
        table = self.table
        if not table:
            return tuple(out)
        supports = [[(i, x) for i, x in enumerate(v) if x] for v in args]
        for combo in itertools.product(*supports):
            terms = table.get(tuple(i for i, _ in combo))
            if not terms:
                continue
            coeff = Fraction(1)
            for _, x in combo:
                coeff *= x
            for k, c in terms:
                out[k] += coeff * c
        return tuple(out)

    # --- structural transformations -------------------------------------

    def permute_inputs(self, perm: Sequence[int]) -> Tensor:
        """Tensor ``s`` with ``s(x_0, ..., x_{n-1}) = self(x_{perm[0]}, ..., x_{perm[n-1]})``."""
        n = self.arity
        shape = [0] * n
        for q in range(n):
            shape[perm[q]] = self.in_dims[q]
        rows = []
        for row in self.entries:
            new_idx = [0] * n
            for q in range(n):
                new_idx[perm[q]] = row[q]
            rows.append(tuple(new_idx) + row[n:])
        return Tensor(tuple(shape) + (self.out_dim,), tuple(sorted(rows)))

    def transform(self, out_map: Matrix | None = None, in_maps: Sequence[Matrix | None] | None = None) -> Tensor:
        """``out_map . self(in_maps[0] x, ...)`` tabulated on basis tuples."""
        in_maps = list(in_maps) if in_maps is not None else [None] * self.arity
        in_dims = [m.cols if m is not None else n for m, n in zip(in_maps, self.in_dims)]
        out_dim = out_map.rows if out_map is not None else self.out_dim

        def fn(*idx):
            args = []
            for i, m, n in zip(idx, in_maps, self.in_dims):
                args.append(m.column(i) if m is not None else tuple(Fraction(int(k == i)) for k in range(n)))
            v = self(*args)
            return out_map.apply(v) if out_map is not None else v

        return Tensor.from_function(in_dims, out_dim, fn)

    def __add__(self, other: Tensor) -> Tensor:
        self._same_shape(other)
        return Tensor.from_entries(self.shape, self.entries + other.entries)

    def __sub__(self, other: Tensor) -> Tensor:
        return self + other.scaled(-1)

    def scaled(self, c) -> Tensor:
        c = to_scalar(c)
        n = self.arity
        return Tensor(self.shape, tuple(r[: n + 1] + (c * r[n + 1],) for r in self.entries if c * r[n + 1] != 0))

    def _same_shape(self, other: Tensor):
        if self.shape != other.shape:
            raise DimensionError(f"tensor shapes differ: {self.shape} vs {other.shape}")

    def __repr__(self):
        body = ", ".join(
            "(" + ",".join(str(i) for i in r[:-1]) + ":" + format_scalar(r[-1]) + ")" for r in self.entries
        )
        return f"Tensor{self.shape}[{body}]"
