"""Representations of U_q(gl_{l+1}): truncated Verma modules and the vector representation.

Verma basis vectors ``v_m`` are labelled by tuples ``m = (m_12, m_13, ...,
m_{l,l+1})`` of non-negative integers in the lexicographic order of the
pairs ``(i, j)``; the degree of ``v_m`` is ``sum(m)``.  The vector
representation uses one-hot labels ``u_k``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .cartan import positive_pairs
from .operators import Basis, GradedOperator
from .report import CheckReport
from .scalars import Scalar, SpectralPoly, kappa, q_pow, qnum, t_pow

__all__ = [
    "MTupleBasis",
    "GLModule",
    "verma_module",
    "vector_module",
    "verma_operator",
    "vector_rep_operator",
    "gl_root_vector",
    "check_relations_finite",
    "q_binomial",
    "describe_entries",
]


def MTupleBasis(l: int, N: int) -> Basis:
    """Verma basis truncated at total degree ``N``."""
    return Basis.truncated(l * (l + 1) // 2, N, name=f"verma(l={l},N={N})")


def _const(c) -> SpectralPoly:
    return SpectralPoly.const(c)


def q_binomial(n: int, k: int) -> Scalar:
    """Symmetric q-binomial ``[n]! / ([k]! [n-k]!)``."""
    num = Scalar.const(1)
    den = Scalar.const(1)
    for m in range(1, k + 1):
        num = num * qnum(n - k + m)
        den = den * qnum(m)
    return num / den


class GLModule:
    """A U_q(gl_{l+1})-module given by exact label actions.

    ``E(i)``, ``F(i)`` and ``qK(i, nu)`` return :class:`GradedOperator` values
    on :attr:`basis`; ``weight(label)`` gives the K-basis eigen-exponents.
    """

    def __init__(self, l: int, basis: Basis, e_action, f_action, weight: Callable[[tuple], Sequence[Fraction]],
                 e_lift: int, f_lift: int, top_action=None, name: str = "", lam=None):
        self.l = l
        self.basis = basis
        self._e_action = e_action
        self._f_action = f_action
        self._weight = weight
        self.e_lift = e_lift
        self.f_lift = f_lift
        self._top_action = top_action
        self.name = name
        self.lam = lam
        self._cache: dict = {}

    def weight(self, label: tuple) -> tuple[Fraction, ...]:
        return tuple(Fraction(x) for x in self._weight(label))

    def e_action(self, i: int):
        return lambda lab: self._e_action(i, lab)

    def f_action(self, i: int):
        return lambda lab: self._f_action(i, lab)

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def E(self, i: int) -> GradedOperator:
        self._check(i)
        return self._memo(("E", i), lambda: GradedOperator.from_action(self.basis, self.e_action(i), self.e_lift))

    def F(self, i: int) -> GradedOperator:
        self._check(i)
        return self._memo(("F", i), lambda: GradedOperator.from_action(self.basis, self.f_action(i), self.f_lift))

    def qX(self, coeffs: Sequence, nu=1) -> GradedOperator:
        """``q^{nu * sum_j c_j K_j}`` as a diagonal operator."""
        coeffs = tuple(Fraction(c) for c in coeffs)
        nu = Fraction(nu)

        def diag(lab):
            w = self.weight(lab)
            return _const(q_pow(nu * sum(c * x for c, x in zip(coeffs, w))))

        return self._memo(("qX", coeffs, nu), lambda: GradedOperator.diagonal(self.basis, diag))

    def qK(self, i: int, nu=1) -> GradedOperator:
        c = [0] * (self.l + 1)
        c[i - 1] = 1
        return self.qX(c, nu)

    def F_top(self) -> GradedOperator:
        """``F_{1,l+1}`` from its closed action when available, else by the root-vector recursion."""
        if self._top_action is None:
            return gl_root_vector("F", 1, self.l + 1, self)
        return self._memo(("Ftop",), lambda: GradedOperator.from_action(self.basis, self._top_action, 1))

    def top_action(self):
        if self._top_action is None:
            raise ValueError(f"{self.name} has no closed F_(1,l+1) action")
        return self._top_action

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.l:
            raise ValueError(f"generator index {i} out of range for l={self.l}")

    def corrupted(self, which: str) -> "GLModule":
        """Copy with a deliberate defect (``"E1"``: E_1 scaled by q)."""
        if which != "E1":
            raise ValueError(f"unknown corruption {which!r}")
        base = self._e_action

        def e_bad(i, lab):
            out = list(base(i, lab))
            if i == 1:
                out = [(t, c * t_pow(2)) for t, c in out]
            return out

        return GLModule(self.l, self.basis, e_bad, self._f_action, self._weight, self.e_lift, self.f_lift,
                        self._top_action, self.name + "[corrupt E1]", self.lam)


# -- Verma module -----------------------------------------------------------------


def verma_module(lam: Sequence[int], N: int) -> GLModule:
    """Verma module of highest weight ``lam`` (K-basis integers), truncated at degree ``N``."""
    lam = tuple(lam)
    if any(Fraction(x).denominator != 1 for x in lam):
        raise ValueError("Verma highest weights must be integral")
    lam = tuple(int(x) for x in lam)
    l = len(lam) - 1
    if l < 1:
        raise ValueError("need at least two weight components")
    if N < 1:
        raise ValueError("truncation N must be at least 1")
    pairs = positive_pairs(l)
    pos = {p: k for k, p in enumerate(pairs)}
    basis = MTupleBasis(l, N)

    def m(lab, i, j):
        return lab[pos[(i, j)]]

    def shift(lab, *moves):
        out = list(lab)
        for (i, j), d in moves:
            out[pos[(i, j)]] += d
        return tuple(out)

    def weight(lab):
        return [lam[i - 1] + sum(m(lab, k, i) for k in range(1, i))
                - sum(m(lab, i, k) for k in range(i + 1, l + 2)) for i in range(1, l + 2)]

    def f_act(i, lab):
        out = []
        e0 = -sum(m(lab, k, i) - m(lab, k, i + 1) for k in range(1, i))
        out.append((shift(lab, ((i, i + 1), 1)), _const(q_pow(e0))))
        for j in range(1, i):
            mji = m(lab, j, i)
            if mji == 0:
                continue
            e = -sum(m(lab, k, i) - m(lab, k, i + 1) for k in range(1, j))
            out.append((shift(lab, ((j, i), -1), ((j, i + 1), 1)), _const(q_pow(e) * qnum(mji))))
        return out

    def e_act(i, lab):
        out = []
        d = lam[i - 1] - lam[i]
        tail = sum(m(lab, i, j) - m(lab, i + 1, j) for j in range(i + 2, l + 2))
        mii = m(lab, i, i + 1)
        if mii:
            c = qnum(d - tail - mii + 1) * qnum(mii)
            out.append((shift(lab, ((i, i + 1), -1)), _const(c)))
        pre = d - 2 * mii - tail
        for j in range(1, i):
            mj = m(lab, j, i + 1)
            if mj == 0:
                continue
            e = pre + sum(m(lab, k, i) - m(lab, k, i + 1) for k in range(j + 1, i))
            out.append((shift(lab, ((j, i + 1), -1), ((j, i), 1)), _const(q_pow(e) * qnum(mj))))
        for j in range(i + 2, l + 2):
            mij = m(lab, i, j)
            if mij == 0:
                continue
            e = -d - 2 + sum(m(lab, i, k) - m(lab, i + 1, k) for k in range(j, l + 2))
            out.append((shift(lab, ((i, j), -1), ((i + 1, j), 1)), _const(-(q_pow(e) * qnum(mij)))))
        return out

    def top(lab):
        e = sum(m(lab, 1, i) for i in range(2, l + 1))
        return [(shift(lab, ((1, l + 1), 1)), _const(q_pow(e)))]

    return GLModule(l, basis, e_act, f_act, weight, 0, 1, top, f"verma{lam}", lam)


def verma_operator(gen: str, lam: Sequence[int], N: int, i: int | None = None, nu=1) -> GradedOperator:
    """One generator on the truncated Verma module: ``"qK"``, ``"E"``, ``"F"`` or ``"Ftop"``."""
    mod = verma_module(lam, N)
    return _module_operator(mod, gen, i, nu)


def _module_operator(mod: GLModule, gen: str, i, nu) -> GradedOperator:
    if gen == "qK":
        return mod.qK(i, nu)
    if gen == "E":
        return mod.E(i)
    if gen == "F":
        return mod.F(i)
    if gen == "Ftop":
        return mod.F_top()
    raise ValueError(f"unknown generator {gen!r}")


# -- vector representation ------------------------------------------------------------


def vector_module(l: int) -> GLModule:
    """The (l+1)-dimensional representation on one-hot labels ``u_1, ..., u_{l+1}``."""
    if l < 1:
        raise ValueError("rank l must be at least 1")
    n = l + 1

    def u(k):
        return tuple(1 if x == k else 0 for x in range(1, n + 1))

    basis = Basis([u(k) for k in range(1, n + 1)], N=1, name=f"vector(l={l})")
    one = _const(1)

    def which(lab):
        return lab.index(1) + 1

    def e_act(i, lab):
        return [(u(i), one)] if which(lab) == i + 1 else []

    def f_act(i, lab):
        return [(u(i + 1), one)] if which(lab) == i else []

    def weight(lab):
        return list(lab)

    return GLModule(l, basis, e_act, f_act, weight, 0, 0, None, f"vector(l={l})", (1,) + (0,) * l)


def vector_rep_operator(gen: str, l: int, i: int | None = None, nu=1) -> GradedOperator:
    return _module_operator(vector_module(l), gen, i, nu)


# -- root vectors ---------------------------------------------------------------------------


def gl_root_vector(kind: str, i: int, j: int, base: GLModule) -> GradedOperator:
    """Jimbo root vector ``E_ij`` or ``F_ij`` built by recursion from the simple generators."""
    if not 1 <= i < j <= base.l + 1:
        raise ValueError(f"invalid pair ({i}, {j}) for l={base.l}")
    if kind not in ("E", "F"):
        raise ValueError(f"kind must be 'E' or 'F', not {kind!r}")
    key = ("root", kind, i, j)
    if key in base._cache:
        return base._cache[key]
    if j == i + 1:
        op = base.E(i) if kind == "E" else base.F(i)
    else:
        a = gl_root_vector(kind, i, j - 1, base)
        b = gl_root_vector(kind, j - 1, j, base)
        if kind == "E":
            op = (a @ b) - (b @ a).scale(q_pow(1))
        else:
            op = (b @ a) - (a @ b).scale(q_pow(-1))
    base._cache[key] = op
    return op


# -- relation checks ------------------------------------------------------------------------


def describe_entries(op: GradedOperator, entries, limit: int = 3) -> str:
    """Human-readable witness from ``(row, col, value)`` triples."""
    parts = []
    for i, j, v in entries[:limit]:
        parts.append(f"<{op.basis.labels[i]}|.|{op.basis.labels[j]}> = {v}")
    if len(entries) > limit:
        parts.append(f"... ({len(entries)} nonzero entries)")
    return "; ".join(parts)


def residual_item(report: CheckReport, name: str, residual: GradedOperator, **detail) -> None:
    bad = residual.safe_residual()
    safe = len(residual.safe_columns())
    report.add(name, not bad, describe_entries(residual, bad) if bad else None,
               safe_columns=safe, **detail)
    if safe == 0:
        report.checks[-1].ok = False
        report.checks[-1].witness = "empty safe domain"


def check_relations_finite(mod: GLModule, nus: Sequence = (1, Fraction(1, 2))) -> CheckReport:
    """Defining relations and Serre relations of U_q(gl_{l+1}) on ``mod``.

    Residuals are exact operators; only basis vectors on which the
    relation's truncated matrix is exact are inspected.
    """
    l = mod.l
    rep = CheckReport("relations-finite", {"module": mod.name, "l": l, "N": mod.basis.N})
    ident = GradedOperator.identity(mod.basis)
    # q^X q^Y = q^{X+Y}, q^0 = 1
    for i in range(1, l + 2):
        res = mod.qK(i, 1) @ mod.qK(i, -1) - ident
        residual_item(rep, f"qK{i}*qK{i}^-1=1", res)
    # weight relations
    for nu in nus:
        for i in range(1, l + 1):
            for j in range(1, l + 2):
                pair = (1 if j == i else 0) - (1 if j == i + 1 else 0)
                for name, g, sgn in (("E", mod.E(i), 1), ("F", mod.F(i), -1)):
                    res = mod.qK(j, nu) @ g @ mod.qK(j, -nu) - g.scale(q_pow(sgn * nu * pair))
                    residual_item(rep, f"qK{j}^{nu} {name}{i} qK{j}^-{nu}", res)
    # [E_i, F_j]
    kap_inv = kappa().inverse()
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            res = mod.E(i) @ mod.F(j) - mod.F(j) @ mod.E(i)
            if i == j:
                c = [0] * (l + 1)
                c[i - 1], c[i] = 1, -1
                res = res - (mod.qX(c, 1) - mod.qX(c, -1)).scale(kap_inv)
            residual_item(rep, f"[E{i},F{j}]", res)
    # Serre
    two = qnum(2)
    for name, g in (("E", mod.E), ("F", mod.F)):
        for i in range(1, l + 1):
            for j in range(1, l + 1):
                if abs(i - j) >= 2 and i < j:
                    residual_item(rep, f"serre {name}{i}{name}{j}", g(i) @ g(j) - g(j) @ g(i))
                elif abs(i - j) == 1:
                    x, y = g(i), g(j)
                    res = x @ x @ y - (x @ y @ x).scale(two) + y @ x @ x
                    residual_item(rep, f"serre {name}{i}^2{name}{j}", res)
    return rep
