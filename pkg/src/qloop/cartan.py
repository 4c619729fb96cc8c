"""Root and weight data for gl_{l+1}, sl_{l+1} and the untwisted affine system.

Affine roots are stored by kind (``real+`` for ``alpha_ij + n delta``,
``real-`` for ``(delta - alpha_ij) + n delta``, ``imag`` for ``n delta``
coloured by a simple root) and carry their coordinates in the basis of
simple roots ``alpha_0, ..., alpha_l``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

__all__ = [
    "RankConfig",
    "Weight",
    "AffineRoot",
    "cartan_matrices",
    "root_pairing",
    "normal_order_cmp",
    "rho_pairing",
    "positive_pairs",
    "fundamental_weight",
]


@dataclass(frozen=True)
class RankConfig:
    """Rank ``l`` together with the integer grading ``s_0, ..., s_l``."""

    l: int
    s: tuple[int, ...] = ()

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("rank l must be at least 1")
        s = tuple(int(x) for x in self.s) if self.s else (1,) * (self.l + 1)
        if len(s) != self.l + 1:
            raise ValueError(f"need {self.l + 1} grading integers, got {len(s)}")
        if sum(s) < 1:
            raise ValueError("the total grading s must be positive")
        object.__setattr__(self, "s", s)

    @property
    def s_total(self) -> int:
        return sum(self.s)

    def s_partial(self, i: int, j: int) -> int:
        """``s_ij = s_i + ... + s_{j-1}``."""
        return sum(self.s[i:j])

    @property
    def uniform(self) -> bool:
        return all(x == self.s[0] for x in self.s)


@dataclass(frozen=True)
class Weight:
    """A weight given either in the K-basis (``l+1`` comps) or in the omega-basis (``l`` comps)."""

    l: int
    comps: tuple[Fraction, ...]
    basis: str = "omega"

    def __post_init__(self):
        comps = tuple(Fraction(c) for c in self.comps)
        want = self.l if self.basis == "omega" else self.l + 1
        if self.basis not in ("omega", "K"):
            raise ValueError(f"unknown basis {self.basis!r}")
        if len(comps) != want:
            raise ValueError(f"{self.basis}-basis weight of rank {self.l} needs {want} components")
        object.__setattr__(self, "comps", comps)

    @classmethod
    def from_K(cls, comps: Sequence) -> "Weight":
        return cls(len(comps) - 1, tuple(comps), "K")

    @classmethod
    def from_omega(cls, comps: Sequence) -> "Weight":
        return cls(len(comps), tuple(comps), "omega")

    @classmethod
    def zero(cls, l: int) -> "Weight":
        return cls(l, (0,) * l, "omega")

    def to_omega(self) -> "Weight":
        """sl-part: ``<lambda, h_i> = lambda_i - lambda_{i+1}``."""
        if self.basis == "omega":
            return self
        c = self.comps
        return Weight(self.l, tuple(c[i] - c[i + 1] for i in range(self.l)), "omega")

    def to_K(self) -> "Weight":
        """A K-basis lift normalized by ``lambda_{l+1} = 0``."""
        if self.basis == "K":
            return self
        out = [Fraction(0)] * (self.l + 1)
        for i in range(self.l - 1, -1, -1):
            out[i] = out[i + 1] + self.comps[i]
        return Weight(self.l, tuple(out), "K")

    def h(self, i: int) -> Fraction:
        """``<lambda, h_i>`` for ``i`` in ``0..l``, with ``h_0 = -sum h_i`` on sl-weights."""
        w = self.to_omega().comps
        if i == 0:
            return -sum(w, Fraction(0))
        return w[i - 1]

    def __add__(self, other: "Weight") -> "Weight":
        a, b = self.to_omega(), other.to_omega()
        return Weight(self.l, tuple(x + y for x, y in zip(a.comps, b.comps)), "omega")

    def __neg__(self) -> "Weight":
        a = self.to_omega()
        return Weight(self.l, tuple(-x for x in a.comps), "omega")

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def iota(self) -> "Weight":
        """The diagram flip ``omega_i -> omega_{l-i+1}``."""
        return Weight(self.l, tuple(reversed(self.to_omega().comps)), "omega")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Weight) or other.l != self.l:
            return False
        return self.to_omega().comps == other.to_omega().comps

    def __hash__(self) -> int:
        return hash((self.l, self.to_omega().comps))

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.to_omega().comps, start=1):
            if c:
                parts.append(f"{c}*w{i}")
        return " + ".join(parts) if parts else "0"


def fundamental_weight(l: int, i: int, coeff=1) -> Weight:
    """``coeff * omega_i``; out-of-range ``i`` (0 or l+1) gives zero."""
    comps = [Fraction(0)] * l
    if 1 <= i <= l:
        comps[i - 1] = Fraction(coeff)
    return Weight(l, tuple(comps), "omega")


def cartan_matrices(l: int) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(c, a, a_ext)``.

    ``c`` is the ``(l+1) x l`` matrix ``c_ij = delta_ij - delta_{i,j+1}``,
    ``a`` the Cartan matrix of sl_{l+1} and ``a_ext`` the extended one,
    indexed by ``0..l``.
    """
    if l < 1:
        raise ValueError("rank l must be at least 1")
    d = lambda i, j: 1 if i == j else 0
    c = [[d(i, j) - d(i, j + 1) for j in range(1, l + 1)] for i in range(1, l + 2)]
    a = [[c[i][j] - c[i + 1][j] for j in range(l)] for i in range(l)]
    n = l + 1
    if l == 1:
        a_ext = [[2, -2], [-2, 2]]
    else:
        a_ext = [[0] * n for _ in range(n)]
        for i in range(n):
            a_ext[i][i] = 2
            a_ext[i][(i + 1) % n] = -1
            a_ext[i][(i - 1) % n] = -1
    return c, a, a_ext


def positive_pairs(l: int) -> list[tuple[int, int]]:
    """``Lambda_l`` in lexicographic order."""
    return [(i, j) for i in range(1, l + 2) for j in range(i + 1, l + 2)]


_KINDS = ("real+", "imag", "real-")


@dataclass(frozen=True)
class AffineRoot:
    """A positive affine root of sl_{l+1}^(1).

    ``real+``: ``alpha_ij + n delta``; ``real-``: ``(delta - alpha_ij) + n delta``;
    ``imag``: ``n delta`` coloured by the positive root ``alpha_ij``.
    """

    l: int
    kind: str
    i: int
    j: int
    n: int = 0
    coords: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown root kind {self.kind!r}")
        if not (1 <= self.i < self.j <= self.l + 1):
            raise ValueError(f"invalid root indices ({self.i}, {self.j}) for l={self.l}")
        if self.kind == "imag":
            if self.n < 1:
                raise ValueError("imaginary roots need n >= 1")
        elif self.n < 0:
            raise ValueError("n must be non-negative")
        alpha = [0] * (self.l + 1)
        for k in range(self.i, self.j):
            alpha[k] = 1
        n = self.n
        if self.kind == "real+":
            co = [x + n for x in alpha]
        elif self.kind == "imag":
            co = [n] * (self.l + 1)
        else:
            co = [(n + 1) - x for x in alpha]
        object.__setattr__(self, "coords", tuple(co))

    @classmethod
    def plus(cls, l: int, i: int, j: int, n: int = 0) -> "AffineRoot":
        return cls(l, "real+", i, j, n)

    @classmethod
    def minus(cls, l: int, i: int, j: int, n: int = 0) -> "AffineRoot":
        return cls(l, "real-", i, j, n)

    @classmethod
    def imag(cls, l: int, n: int, color: int, j: int | None = None) -> "AffineRoot":
        """``n delta`` coloured by ``alpha_i`` (or by ``alpha_ij`` when ``j`` is given)."""
        return cls(l, "imag", color, color + 1 if j is None else j, n)

    @classmethod
    def simple(cls, l: int, k: int) -> "AffineRoot":
        """``alpha_k``; ``alpha_0`` is ``delta - theta``."""
        if k == 0:
            return cls.minus(l, 1, l + 1, 0)
        return cls.plus(l, k, k + 1, 0)

    def __str__(self) -> str:
        if self.kind == "imag":
            return f"{self.n}d[a{self.i}]"
        a = f"a{self.i}{self.j}" if self.j > self.i + 1 else f"a{self.i}"
        base = a if self.kind == "real+" else f"(d-{a})"
        return base if self.n == 0 else f"{base}+{self.n}d"


def _coords(x) -> tuple[int, ...]:
    return x.coords if isinstance(x, AffineRoot) else tuple(x)


def root_pairing(r1, r2) -> int:
    """Symmetric form ``(r1 | r2)`` from the extended Cartan matrix.

    Accepts :class:`AffineRoot` values or raw coordinate tuples in the
    simple-root basis.
    """
    c1, c2 = _coords(r1), _coords(r2)
    if len(c1) != len(c2):
        raise ValueError("roots of different rank")
    a_ext = cartan_matrices(len(c1) - 1)[2]
    n = len(c1)
    return sum(c1[i] * a_ext[i][j] * c2[j] for i in range(n) for j in range(n) if c1[i] and c2[j])


def normal_order_cmp(r1: AffineRoot, r2: AffineRoot) -> int:
    """``-1``, ``0`` or ``1`` as ``r1`` precedes, ties with, or follows ``r2``."""
    b1, b2 = _KINDS.index(r1.kind), _KINDS.index(r2.kind)
    if b1 != b2:
        return -1 if b1 < b2 else 1
    if r1.kind == "imag":
        return 0
    if r1.kind == "real+":
        k1, k2 = (r1.i, r1.n, r1.j), (r2.i, r2.n, r2.j)
    else:
        k1, k2 = (-r1.i, -r1.n, r1.j), (-r2.i, -r2.n, r2.j)
    return (k1 > k2) - (k1 < k2)


def rho_pairing(l: int, i: int) -> Fraction:
    """``<rho, K_i> = l/2 - i + 1``."""
    if not 1 <= i <= l + 1:
        raise ValueError(f"index {i} out of range for l={l}")
    return Fraction(l, 2) - i + 1
