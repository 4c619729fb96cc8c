"""Sparse exact operators on degree-truncated bases.

A :class:`Basis` is a finite list of labels (tuples of non-negative integers)
of total degree at most ``N``.  A :class:`GradedOperator` stores a sparse
matrix with :class:`~qloop.scalars.SpectralPoly` entries together with two
integers used for safe-domain bookkeeping:

``lift``
    upper bound on how much the operator can raise the degree of a basis vector;
``reach``
    the largest intermediate degree increase met while applying the operator
    (for a product ``A @ B`` the image of ``B`` must still fit before ``A``
    acts).

A column ``v`` of an operator is exact whenever ``deg(v) + reach <= N``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Mapping, Sequence

from .scalars import Scalar, SpectralPoly

__all__ = [
    "Basis",
    "GradedOperator",
    "TruncationError",
    "LabelAction",
    "total_degree_tuples",
]

LabelAction = Callable[[tuple], Iterable[tuple[tuple, SpectralPoly]]]


class TruncationError(ValueError):
    """The truncation degree is too small for the requested exact computation."""


def total_degree_tuples(length: int, N: int) -> list[tuple[int, ...]]:
    """All non-negative ``length``-tuples with sum at most ``N``, sorted by degree then lexicographically."""
    out = []
    for d in range(N + 1):
        level = set()
        for combo in combinations_with_replacement(range(length), d):
            t = [0] * length
            for k in combo:
                t[k] += 1
            level.add(tuple(t))
        out.extend(sorted(level, reverse=True))
    return out


class Basis:
    """Finite ordered set of labels with a degree function."""

    def __init__(self, labels: Sequence[tuple], N: int | None = None,
                 degree: Callable[[tuple], int] = sum, name: str = ""):
        self.labels = tuple(labels)
        self.index = {lab: k for k, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("duplicate basis labels")
        self.degree_fn = degree
        self.degrees = tuple(degree(lab) for lab in self.labels)
        self.N = max(self.degrees, default=0) if N is None else N
        self.name = name

    @classmethod
    def truncated(cls, length: int, N: int, name: str = "") -> "Basis":
        return cls(total_degree_tuples(length, N), N, sum, name)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def safe_columns(self, reach: int) -> list[int]:
        """Indices of basis vectors on which an operator of the given reach is exact."""
        return [k for k, d in enumerate(self.degrees) if d + reach <= self.N]

    def __repr__(self) -> str:
        return f"Basis({self.name or 'unnamed'}, dim={len(self)}, N={self.N})"


class GradedOperator:
    """Sparse matrix over :class:`SpectralPoly` acting on a :class:`Basis`.

    ``cols[j]`` maps row indices to nonzero entries of column ``j``.
    """

    __slots__ = ("basis", "cols", "lift", "reach", "nslots")

    def __init__(self, basis: Basis, cols: Mapping[int, Mapping[int, SpectralPoly]],
                 lift: int, reach: int | None = None, nslots: int = 1):
        self.basis = basis
        self.cols = {j: dict(c) for j, c in cols.items() if c}
        self.lift = lift
        self.reach = max(lift, 0) if reach is None else reach
        self.nslots = nslots

    # -- constructors ---------------------------------------------------------
    @classmethod
    def _raw(cls, basis, cols, lift, reach, nslots) -> "GradedOperator":
        obj = cls.__new__(cls)
        obj.basis = basis
        obj.cols = cols
        obj.lift = lift
        obj.reach = reach
        obj.nslots = nslots
        return obj

    @classmethod
    def from_action(cls, basis: Basis, action: LabelAction, lift: int, nslots: int = 1) -> "GradedOperator":
        """Matrix of an exact action on labels; targets beyond the truncation are dropped."""
        cols: dict[int, dict[int, SpectralPoly]] = {}
        for j, lab in enumerate(basis.labels):
            col: dict[int, SpectralPoly] = {}
            for target, coeff in action(lab):
                if coeff.is_zero():
                    continue
                i = basis.index.get(target)
                if i is None:
                    if basis.degree_fn(target) <= basis.N and min(target, default=0) >= 0:
                        raise ValueError(f"target {target} missing from basis")
                    continue
                col[i] = col[i] + coeff if i in col else coeff
                if col[i].is_zero():
                    del col[i]
            if col:
                cols[j] = col
        return cls._raw(basis, cols, lift, max(lift, 0), nslots)

    @classmethod
    def identity(cls, basis: Basis, nslots: int = 1) -> "GradedOperator":
        one = SpectralPoly.const(1, nslots)
        return cls._raw(basis, {j: {j: one} for j in range(len(basis))}, 0, 0, nslots)

    @classmethod
    def zero(cls, basis: Basis, nslots: int = 1) -> "GradedOperator":
        return cls._raw(basis, {}, 0, 0, nslots)

    @classmethod
    def diagonal(cls, basis: Basis, fn: Callable[[tuple], SpectralPoly], nslots: int = 1) -> "GradedOperator":
        cols = {}
        for j, lab in enumerate(basis.labels):
            c = fn(lab)
            if not c.is_zero():
                cols[j] = {j: c}
        return cls._raw(basis, cols, 0, 0, nslots)

    # -- arithmetic -------------------------------------------------------------
    def _same(self, other: "GradedOperator") -> None:
        if other.basis is not self.basis:
            raise ValueError("operators act on different bases")
        if other.nslots != self.nslots:
            raise ValueError("spectral slot count mismatch")

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        if not isinstance(other, GradedOperator):
            if other == 0:
                return self
            return NotImplemented
        self._same(other)
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, c in other.cols.items():
            tgt = cols.setdefault(j, {})
            for i, v in c.items():
                if i in tgt:
                    s = tgt[i] + v
                    if s.is_zero():
                        del tgt[i]
                    else:
                        tgt[i] = s
                else:
                    tgt[i] = v
            if not tgt:
                del cols[j]
        return GradedOperator._raw(self.basis, cols, max(self.lift, other.lift),
                                   max(self.reach, other.reach), self.nslots)

    __radd__ = __add__

    def __neg__(self) -> "GradedOperator":
        return self.scale(-1)

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        return self + (-other)

    def scale(self, c) -> "GradedOperator":
        if isinstance(c, SpectralPoly):
            poly = c
        else:
            poly = SpectralPoly.const(c if isinstance(c, Scalar) else Scalar.const(c), self.nslots)
        if poly.is_zero():
            return GradedOperator._raw(self.basis, {}, self.lift, self.reach, self.nslots)
        cols = {}
        for j, col in self.cols.items():
            new = {}
            for i, v in col.items():
                p = v * poly
                if not p.is_zero():
                    new[i] = p
            if new:
                cols[j] = new
        return GradedOperator._raw(self.basis, cols, self.lift, self.reach, self.nslots)

    def __mul__(self, other):
        if isinstance(other, GradedOperator):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        """Composition: ``(A @ B) v = A (B v)``."""
        self._same(other)
        a_cols = self.cols
        cols = {}
        for j, bcol in other.cols.items():
            acc: dict[int, SpectralPoly] = {}
            for k, bv in bcol.items():
                acol = a_cols.get(k)
                if not acol:
                    continue
                for i, av in acol.items():
                    p = av * bv
                    if i in acc:
                        s = acc[i] + p
                        if s.is_zero():
                            del acc[i]
                        else:
                            acc[i] = s
                    elif not p.is_zero():
                        acc[i] = p
            if acc:
                cols[j] = acc
        reach = max(other.reach, other.lift + self.reach)
        return GradedOperator._raw(self.basis, cols, self.lift + other.lift, reach, self.nslots)

    def __pow__(self, n: int) -> "GradedOperator":
        if n < 0:
            raise ValueError("negative operator power")
        result = GradedOperator.identity(self.basis, self.nslots)
        for _ in range(n):
            result = self @ result
        return result

    # -- inspection ---------------------------------------------------------------
    def entry(self, i: int, j: int) -> SpectralPoly:
        return self.cols.get(j, {}).get(i, SpectralPoly.const(0, self.nslots))

    def column(self, j: int) -> dict[int, SpectralPoly]:
        return dict(self.cols.get(j, {}))

    def apply_label(self, label: tuple) -> dict[tuple, SpectralPoly]:
        j = self.basis.index[label]
        return {self.basis.labels[i]: v for i, v in self.cols.get(j, {}).items()}

    def is_zero(self) -> bool:
        return not self.cols

    def safe_columns(self) -> list[int]:
        return self.basis.safe_columns(self.reach)

    def restrict(self, columns: Iterable[int]) -> "GradedOperator":
        keep = set(columns)
        cols = {j: c for j, c in self.cols.items() if j in keep}
        return GradedOperator._raw(self.basis, cols, self.lift, self.reach, self.nslots)

    def nonzero_on(self, columns: Iterable[int]) -> list[tuple[int, int, SpectralPoly]]:
        """Nonzero entries ``(row, col, value)`` in the given columns."""
        out = []
        for j in columns:
            for i, v in sorted(self.cols.get(j, {}).items()):
                out.append((i, j, v))
        return out

    def safe_residual(self) -> list[tuple[int, int, SpectralPoly]]:
        """Nonzero entries on the exact (safe) columns."""
        return self.nonzero_on(self.safe_columns())

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def eval_at(self, t, zetas: Sequence) -> dict[int, dict[int, Fraction]]:
        """Numeric sparse matrix at rational ``t`` and spectral values."""
        out = {}
        for j, col in self.cols.items():
            new = {}
            for i, v in col.items():
                x = v.eval_at(t, zetas)
                if x:
                    new[i] = x
            if new:
                out[j] = new
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return self.basis is other.basis and self.cols == other.cols

    __hash__ = None

    def to_dump(self) -> list[dict]:
        """Sparse entries as JSON-ready records."""
        out = []
        for j in sorted(self.cols):
            for i in sorted(self.cols[j]):
                for e, c in sorted(self.cols[j][i].terms.items()):
                    out.append({
                        "row": list(self.basis.labels[i]),
                        "col": list(self.basis.labels[j]),
                        "scalar": str(c),
                        "zeta": list(e) if len(e) > 1 else e[0],
                    })
        return out

    def __repr__(self) -> str:
        return f"GradedOperator(dim={len(self.basis)}, nnz={self.nnz()}, lift={self.lift}, reach={self.reach})"
