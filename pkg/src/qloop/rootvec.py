"""Affine root vectors of the positive Borel subalgebra as q-commutator trees.

Words are built bottom-up from the generators ``e_0, ..., e_l``:

* ``e_{alpha_ij} = [e_i, e_{alpha_{i+1,j}}]_q``,
* ``e_{delta - alpha_ij}`` by appending simple roots to ``e_0``, first on the
  right side of the Dynkin diagram and then on the left,
* ``e'_{n delta, gamma} = [e_{gamma + (n-1) delta}, e_{delta - gamma}]_q``,
* ``e_{gamma + n delta} = [2]_q^{-1} [e_{gamma + (n-1) delta}, e'_{delta, gamma}]_q``
  and ``e_{(delta - gamma) + n delta} = [2]_q^{-1} [e'_{delta, gamma}, e_{(delta - gamma) + (n-1) delta}]_q``,

with ``[x, y]_q = x y - q^{-(alpha | beta)} y x``.  The pairing of every
bracket is computed from the extended Cartan matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping

from .cartan import AffineRoot, root_pairing
from .operators import GradedOperator
from .scalars import Scalar, q_pow, qnum

__all__ = [
    "CommWord",
    "gen",
    "qcomm",
    "scaled",
    "build_real_plus",
    "build_real_minus",
    "build_imag_prime",
    "WordEvaluator",
    "eval_word",
]


@dataclass(frozen=True, eq=False)
class CommWord:
    """Node of a q-commutator expression tree.

    ``op`` is ``"gen"`` (leaf ``e_index``), ``"comm"`` (``[left, right]_q``
    with the stored ``pairing``) or ``"scaled"`` (``coeff * left``).
    ``coords`` are the root coordinates in the simple-root basis and
    ``root`` the affine root label when one has been assigned.
    """

    l: int
    op: str
    coords: tuple[int, ...]
    index: int = -1
    left: "CommWord | None" = None
    right: "CommWord | None" = None
    pairing: int = 0
    coeff: Scalar | None = None
    root: AffineRoot | None = None

    def render(self) -> str:
        if self.op == "gen":
            return f"e{self.index}"
        if self.op == "scaled":
            return f"({self.coeff})*{self.left.render()}"
        return f"[{self.left.render()}, {self.right.render()}]"

    def __str__(self) -> str:
        return self.render()

    def letters(self) -> list[int]:
        """Generator indices of one monomial of the expansion, left to right."""
        if self.op == "gen":
            return [self.index]
        if self.op == "scaled":
            return self.left.letters()
        return self.left.letters() + self.right.letters()

    def depth(self) -> int:
        if self.op == "gen":
            return 0
        if self.op == "scaled":
            return self.left.depth()
        return 1 + max(self.left.depth(), self.right.depth())

    def labelled(self, root: AffineRoot) -> "CommWord":
        if root.coords != self.coords:
            raise ValueError(f"root {root} does not match word coordinates {self.coords}")
        return CommWord(self.l, self.op, self.coords, self.index, self.left, self.right,
                        self.pairing, self.coeff, root)


def gen(l: int, i: int) -> CommWord:
    if not 0 <= i <= l:
        raise ValueError(f"generator index {i} out of range for l={l}")
    root = AffineRoot.simple(l, i)
    return CommWord(l, "gen", root.coords, index=i, root=root)


def qcomm(x: CommWord, y: CommWord, root: AffineRoot | None = None) -> CommWord:
    """``[x, y]_q`` with pairing ``(root(x) | root(y))``."""
    coords = tuple(a + b for a, b in zip(x.coords, y.coords))
    if root is not None and root.coords != coords:
        raise ValueError(f"root {root} is not the sum of the bracketed roots")
    return CommWord(x.l, "comm", coords, left=x, right=y,
                    pairing=root_pairing(x.coords, y.coords), root=root)


def scaled(c: Scalar, w: CommWord, root: AffineRoot | None = None) -> CommWord:
    return CommWord(w.l, "scaled", w.coords, left=w, coeff=c, root=root or w.root)


def _check_pair(l: int, i: int, j: int) -> None:
    if not 1 <= i < j <= l + 1:
        raise ValueError(f"invalid root indices ({i}, {j}) for l={l}")


@lru_cache(maxsize=None)
def build_real_plus(l: int, i: int, j: int, n: int = 0) -> CommWord:
    """Word for ``e_{alpha_ij + n delta}``."""
    _check_pair(l, i, j)
    if n < 0:
        raise ValueError("n must be non-negative")
    root = AffineRoot.plus(l, i, j, n)
    if n == 0:
        if j == i + 1:
            return gen(l, i)
        return qcomm(gen(l, i), build_real_plus(l, i + 1, j, 0), root)
    inner = qcomm(build_real_plus(l, i, j, n - 1), build_imag_prime(l, 1, i, j))
    return scaled(qnum(2).inverse(), inner, root)


@lru_cache(maxsize=None)
def build_real_minus(l: int, i: int, j: int, n: int = 0) -> CommWord:
    """Word for ``e_{(delta - alpha_ij) + n delta}``."""
    _check_pair(l, i, j)
    if n < 0:
        raise ValueError("n must be non-negative")
    root = AffineRoot.minus(l, i, j, n)
    if n == 0:
        if (i, j) == (1, l + 1):
            return gen(l, 0)
        if i > 1:
            return qcomm(build_real_plus(l, i - 1, i, 0), build_real_minus(l, i - 1, j, 0), root)
        return qcomm(build_real_plus(l, j, j + 1, 0), build_real_minus(l, 1, j + 1, 0), root)
    inner = qcomm(build_imag_prime(l, 1, i, j), build_real_minus(l, i, j, n - 1))
    return scaled(qnum(2).inverse(), inner, root)


@lru_cache(maxsize=None)
def build_imag_prime(l: int, n: int, i: int, j: int | None = None) -> CommWord:
    """Word for ``e'_{n delta, gamma}`` with ``gamma = alpha_ij`` (``j`` defaults to ``i + 1``)."""
    j = i + 1 if j is None else j
    _check_pair(l, i, j)
    if n < 1:
        raise ValueError("imaginary root vectors need n >= 1")
    root = AffineRoot.imag(l, n, i, j)
    return qcomm(build_real_plus(l, i, j, n - 1), build_real_minus(l, i, j, 0), root)


class WordEvaluator:
    """Evaluate words under a generator assignment, caching shared subtrees."""

    def __init__(self, generators: Mapping[int, GradedOperator] | Callable[[int], GradedOperator]):
        self._gens = generators
        self._cache: dict[int, tuple[CommWord, GradedOperator]] = {}
        self._qpow: dict[int, Scalar] = {}

    def generator(self, i: int) -> GradedOperator:
        g = self._gens
        return g(i) if callable(g) else g[i]

    def __call__(self, w: CommWord) -> GradedOperator:
        hit = self._cache.get(id(w))
        if hit is not None and hit[0] is w:
            return hit[1]
        if w.op == "gen":
            result = self.generator(w.index)
        elif w.op == "scaled":
            result = self(w.left).scale(w.coeff)
        else:
            x, y = self(w.left), self(w.right)
            result = (x @ y) - (y @ x).scale(q_pow(-w.pairing))
        self._cache[id(w)] = (w, result)
        return result


def eval_word(rep, w: CommWord) -> GradedOperator:
    """Evaluate ``w``; ``rep`` is a generator mapping, a callable or a :class:`WordEvaluator`."""
    ev = rep if isinstance(rep, WordEvaluator) else WordEvaluator(rep)
    return ev(w)
