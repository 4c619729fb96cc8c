"""Representations of the quantum loop algebra and of its positive Borel subalgebra.

A :class:`GeneratorMap` assigns exact label actions to ``e_0, ..., e_l`` and
diagonal exponents to ``q^{h_0}, ..., q^{h_l}``.  The q-oscillator modules
``theta_a`` and ``bar-theta_a`` are produced from the homomorphism ``rho``
into the l-fold oscillator algebra by twisting with the diagram automorphisms
``sigma`` and ``tau`` and realizing each oscillator factor by one of the Fock
representations ``chi+`` or ``chi-``.

Operator words such as ``b_i b^dag_{i+1} q^{N_i - N_{i+1} - 1}`` are
:class:`OscMonomial` values; the rightmost factor acts first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .cartan import RankConfig, cartan_matrices
from .finite_reps import GLModule, gl_root_vector, q_binomial, residual_item
from .operators import Basis, GradedOperator
from .report import CheckReport
from .scalars import Scalar, SpectralPoly, kappa, q_pow, qnum, t_pow

__all__ = [
    "OscMonomial",
    "RhoTable",
    "GeneratorMap",
    "rho_table",
    "twist",
    "sigma_power",
    "tau",
    "chi_pattern",
    "realize",
    "osc_rep",
    "jimbo_map",
    "evaluation_map",
    "tensor_rep",
    "check_relations_borel",
]


# -- oscillator words -------------------------------------------------------------


@dataclass(frozen=True)
class OscMonomial:
    """``coeff * f_1 f_2 ... f_k`` in the l-fold q-oscillator algebra.

    Factors are ``("b", k)``, ``("bd", k)`` (mode ``k`` counted from 1) or
    ``("qN", lin, const)`` meaning ``q^{sum_k lin[k] N_k + const}``.
    """

    coeff: Scalar
    factors: tuple

    def render(self) -> str:
        parts = []
        for f in self.factors:
            if f[0] == "b":
                parts.append(f"b{f[1]}")
            elif f[0] == "bd":
                parts.append(f"bd{f[1]}")
            else:
                lin, const = f[1], f[2]
                terms = [f"{c}N{k + 1}" for k, c in enumerate(lin) if c]
                if const:
                    terms.append(str(const))
                parts.append("q^(" + "+".join(terms or ["0"]) + ")")
        return f"({self.coeff})*" + " ".join(parts)

    def scaled(self, c: Scalar) -> "OscMonomial":
        return OscMonomial(self.coeff * c, self.factors)


def _n_value(chi: str, m: int) -> int:
    """Eigenvalue of ``N`` on ``v_m``: ``m`` for chi+, ``-(m+1)`` for chi-."""
    return m if chi == "+" else -(m + 1)


def apply_monomial(mono: OscMonomial, chis: str, label: tuple) -> tuple[tuple, Scalar] | None:
    """Exact action on a Fock label; ``None`` for a zero result."""
    m = list(label)
    coeff = mono.coeff
    for f in reversed(mono.factors):
        if f[0] == "qN":
            lin, const = f[1], f[2]
            e = const + sum(c * _n_value(chis[k], m[k]) for k, c in enumerate(lin) if c)
            coeff = coeff * q_pow(e)
            continue
        k = f[1] - 1
        chi = chis[k]
        if (f[0] == "b") == (chi == "-"):
            # b on chi- and b^dag on chi+ raise without coefficient
            m[k] += 1
        else:
            if m[k] == 0:
                return None
            c = qnum(m[k])
            coeff = coeff * (c if chi == "+" else -c)
            m[k] -= 1
    return tuple(m), coeff


def monomial_lift(mono: OscMonomial, chis: str) -> int:
    d = 0
    for f in mono.factors:
        if f[0] in ("b", "bd"):
            raises = (f[0] == "b") == (chis[f[1] - 1] == "-")
            d += 1 if raises else -1
    return d


# -- the homomorphism rho and its twists ----------------------------------------------------


@dataclass(frozen=True)
class RhoTable:
    """Images of ``e_i`` (as oscillator monomials) and of ``q^{h_i}`` (as linear forms in N)."""

    l: int
    e: tuple  # OscMonomial per i in 0..l
    h: tuple  # tuple of l ints per i in 0..l: q^{nu h_i} -> q^{nu sum h[i][k] N_k}
    name: str = "rho"

    def render(self) -> dict:
        return {
            "e": {i: m.render() for i, m in enumerate(self.e)},
            "h": {i: list(v) for i, v in enumerate(self.h)},
        }


def rho_table(l: int, corrupt: str | None = None) -> RhoTable:
    """The homomorphism ``rho`` from the Borel subalgebra to the l-fold oscillator algebra.

    ``corrupt="rho"`` removes the ``q^{N_l}`` factor from the image of ``e_l``
    (a non-scalar defect that the Serre relations detect).
    """
    if l < 1:
        raise ValueError("rank l must be at least 1")
    one = Scalar.const(1)
    e = [None] * (l + 1)
    h = [None] * (l + 1)
    unit = lambda k: tuple(1 if x == k else 0 for x in range(1, l + 1))
    add = lambda *vs: tuple(sum(c) for c in zip(*vs))
    scale = lambda c, v: tuple(c * x for x in v)
    rest = add(*[unit(j) for j in range(2, l + 1)]) if l > 1 else (0,) * l
    h[0] = add(scale(2, unit(1)), rest)
    e[0] = OscMonomial(one, (("bd", 1), ("qN", rest, 0)))
    for i in range(1, l):
        h[i] = add(unit(i + 1), scale(-1, unit(i)))
        lin = add(unit(i), scale(-1, unit(i + 1)))
        e[i] = OscMonomial(-one, (("b", i), ("bd", i + 1), ("qN", lin, -1)))
    front = add(*[unit(j) for j in range(1, l)]) if l > 1 else (0,) * l
    h[l] = scale(-1, add(scale(2, unit(l)), front))
    if corrupt == "rho":
        e[l] = OscMonomial(-kappa().inverse(), (("b", l),))
    else:
        e[l] = OscMonomial(-kappa().inverse(), (("b", l), ("qN", unit(l), 0)))
    return RhoTable(l, tuple(e), tuple(h), "rho" + (f"[corrupt {corrupt}]" if corrupt else ""))


def sigma_power(l: int, k: int) -> Callable[[int], int]:
    """Index map of ``sigma^k``: ``e_i -> e_{i+k mod l+1}``."""
    return lambda i: (i + k) % (l + 1)


def tau(l: int) -> Callable[[int], int]:
    """Index map of ``tau``: ``e_0 -> e_0``, ``e_i -> e_{l-i+1}``."""
    return lambda i: 0 if i == 0 else l - i + 1


def twist(table: RhoTable, *autos: Callable[[int], int]) -> RhoTable:
    """``table o a_1 o a_2 o ...`` for automorphisms given as index maps.

    ``twist(rho, sigma_power(l, -a))`` is ``rho o sigma^{-a}``.
    """
    def compose(i):
        for a in reversed(autos):
            i = a(i)
        return i

    idx = [compose(i) for i in range(table.l + 1)]
    return RhoTable(table.l, tuple(table.e[k] for k in idx), tuple(table.h[k] for k in idx), table.name + "*tw")


def chi_pattern(l: int, a: int, kind: str) -> str:
    """Per-mode choice of Fock representation: ``"-"`` for chi-, ``"+"`` for chi+."""
    if not 1 <= a <= l + 1:
        raise ValueError(f"a must lie in 1..{l + 1}")
    if kind == "theta":
        n_minus = l - a + 1
    elif kind == "theta_bar":
        n_minus = a - 1
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return "-" * n_minus + "+" * (l - n_minus)


def twisted_table(l: int, a: int, kind: str, corrupt: str | None = None) -> RhoTable:
    """``rho_a = rho o sigma^{-a}`` or ``bar-rho_a = rho o tau o sigma^{-a+1}``."""
    base = rho_table(l, corrupt if corrupt == "rho" else None)
    if kind == "theta":
        return twist(base, sigma_power(l, -a))
    if kind == "theta_bar":
        return twist(base, tau(l), sigma_power(l, -a + 1))
    raise ValueError(f"unknown kind {kind!r}")


# -- generator maps ---------------------------------------------------------------------------


class GeneratorMap:
    """Borel (or loop) generators acting on a degree-truncated label space.

    ``e_actions[i](label)`` yields ``(label, SpectralPoly)`` pairs and already
    includes the spectral factor ``zeta^{s_i}``; ``h_exponents[i](label)`` is
    the exponent ``x`` with ``q^{nu h_i} v = q^{nu x} v``.
    """

    def __init__(self, l: int, label_len: int, N: int, e_actions: Sequence[Callable],
                 e_lifts: Sequence[int], h_exponents: Sequence[Callable], nslots: int = 1,
                 name: str = "", basis: Basis | None = None, cfg: RankConfig | None = None,
                 f_actions: Sequence[Callable] | None = None, f_lifts: Sequence[int] | None = None,
                 factors: tuple = ()):
        self.l = l
        self.label_len = label_len
        self.N = N
        self.e_actions = tuple(e_actions)
        self.e_lifts = tuple(e_lifts)
        self.h_exponents = tuple(h_exponents)
        self.nslots = nslots
        self.name = name
        self.cfg = cfg or RankConfig(l)
        self.f_actions = tuple(f_actions) if f_actions else None
        self.f_lifts = tuple(f_lifts) if f_lifts else None
        self.factors = factors or (self,)
        self._basis = basis
        self._cache: dict = {}

    @property
    def algebra(self) -> str:
        return "loop" if self.f_actions else "borel"

    @property
    def basis(self) -> Basis:
        if self._basis is None:
            self._basis = Basis.truncated(self.label_len, self.N, name=self.name)
        return self._basis

    def vacuum(self) -> tuple:
        return (0,) * self.label_len

    def e(self, i: int) -> GradedOperator:
        key = ("e", i)
        if key not in self._cache:
            self._cache[key] = GradedOperator.from_action(self.basis, self.e_actions[i], self.e_lifts[i], self.nslots)
        return self._cache[key]

    def f(self, i: int) -> GradedOperator:
        if not self.f_actions:
            raise ValueError(f"{self.name} is a Borel map without f generators")
        key = ("f", i)
        if key not in self._cache:
            self._cache[key] = GradedOperator.from_action(self.basis, self.f_actions[i], self.f_lifts[i], self.nslots)
        return self._cache[key]

    def h_exponent(self, i: int, label: tuple) -> Fraction:
        return Fraction(self.h_exponents[i](label))

    def qh(self, i: int, nu=1) -> GradedOperator:
        nu = Fraction(nu)
        key = ("qh", i, nu)
        if key not in self._cache:
            fn = self.h_exponents[i]
            self._cache[key] = GradedOperator.diagonal(
                self.basis, lambda lab: SpectralPoly.const(q_pow(nu * fn(lab)), self.nslots), self.nslots)
        return self._cache[key]

    def generators(self) -> dict[int, GradedOperator]:
        return {i: self.e(i) for i in range(self.l + 1)}

    def with_truncation(self, N: int) -> "GeneratorMap":
        if self._basis is not None and self.factors == (self,) and not _is_truncated(self._basis):
            raise ValueError("this module has a fixed basis")
        return GeneratorMap(self.l, self.label_len, N, self.e_actions, self.e_lifts, self.h_exponents,
                            self.nslots, self.name, None, self.cfg, self.f_actions, self.f_lifts)

    def dump(self) -> dict:
        """JSON-ready basis labels and sparse generator entries."""
        out = {"name": self.name, "basis": [list(b) for b in self.basis.labels], "generators": {}}
        for i in range(self.l + 1):
            out["generators"][f"e{i}"] = self.e(i).to_dump()
            out["generators"][f"qh{i}"] = self.qh(i).to_dump()
        return out

    def __repr__(self) -> str:
        return f"GeneratorMap({self.name}, l={self.l}, N={self.N}, slots={self.nslots})"


def _is_truncated(basis: Basis) -> bool:
    return basis.name.startswith("verma") or basis.name.startswith("fock")


def realize(table: RhoTable, chis: str, cfg: RankConfig, N: int, name: str = "",
            slot: int = 0, nslots: int = 1) -> GeneratorMap:
    """Compose an oscillator table with the Fock representations ``chis`` and attach ``zeta^{s_i}``."""
    l = table.l
    if len(chis) != l:
        raise ValueError("one chi per oscillator mode is required")

    def make_e(i):
        mono = table.e[i]
        z = SpectralPoly.zeta(cfg.s[i], slot, nslots)

        def act(label):
            r = apply_monomial(mono, chis, label)
            if r is None:
                return []
            return [(r[0], z * r[1])]

        return act

    def make_h(i):
        lin = table.h[i]
        return lambda label: sum(c * _n_value(chis[k], label[k]) for k, c in enumerate(lin) if c)

    e_actions = [make_e(i) for i in range(l + 1)]
    lifts = [monomial_lift(table.e[i], chis) for i in range(l + 1)]
    h_exps = [make_h(i) for i in range(l + 1)]
    basis = Basis.truncated(l, N, name=f"fock({name})")
    return GeneratorMap(l, l, N, e_actions, lifts, h_exps, nslots, name, basis, cfg)


def osc_rep(l: int, a: int, kind: str = "theta", N: int = 4, s: Sequence[int] | None = None,
            corrupt: str | None = None) -> GeneratorMap:
    """The module ``theta_a`` (``kind="theta"``) or ``bar-theta_a`` (``kind="theta_bar"``).

    ``corrupt`` accepts ``"rho"`` (defective image of ``e_l`` before twisting)
    and ``"e0"`` (``e_0`` rescaled by ``q``).
    """
    cfg = RankConfig(l, tuple(s) if s else ())
    table = twisted_table(l, a, kind, corrupt)
    if corrupt == "e0":
        e = list(table.e)
        e[0] = e[0].scaled(t_pow(2))
        table = RhoTable(l, tuple(e), table.h, table.name + "[corrupt e0]")
    elif corrupt not in (None, "rho"):
        raise ValueError(f"unknown corruption {corrupt!r}")
    sym = "theta" if kind == "theta" else "theta_bar"
    return realize(table, chi_pattern(l, a, kind), cfg, N, name=f"{sym}_{a}(l={l})")


# -- evaluation modules --------------------------------------------------------------------------


def jimbo_map(gen: str, l: int) -> str:
    """Image of a loop generator under Jimbo's evaluation map, as a formula string."""
    if gen == "e0":
        return f"F_(1,{l + 1}) q^(K_1+K_{l + 1})"
    if gen == "f0":
        return f"E_(1,{l + 1}) q^(-K_1-K_{l + 1})"
    if gen == "qh0":
        return f"q^(K_{l + 1}-K_1)"
    if gen.startswith("qh"):
        i = int(gen[2:])
        return f"q^(K_{i}-K_{i + 1})"
    if gen[0] in "ef":
        i = int(gen[1:])
        return f"{'E' if gen[0] == 'e' else 'F'}_({i},{i + 1})"
    raise ValueError(f"unknown generator {gen!r}")


def evaluation_map(mod: GLModule, s: Sequence[int] | None = None, full: bool = False) -> GeneratorMap:
    """The Borel (or, for the vector module, full loop) map ``epsilon o Gamma_zeta`` on ``mod``."""
    l = mod.l
    cfg = RankConfig(l, tuple(s) if s else ())
    zeta = [SpectralPoly.zeta(cfg.s[i]) for i in range(l + 1)]

    def wrap(action, z):
        def act(label):
            return [(t, z * c) for t, c in action(label)]
        return act

    try:
        top = mod.top_action()
    except ValueError:
        top = None
    if top is None:
        fop = mod.F_top()

        def top(label):
            j = mod.basis.index[label]
            return [(mod.basis.labels[i], v) for i, v in fop.cols.get(j, {}).items()]

    def e0(label):
        w = mod.weight(label)
        c = q_pow(w[0] + w[-1])
        return [(t, zeta[0] * (v * c)) for t, v in top(label)]

    e_actions = [e0] + [wrap(mod.e_action(i), zeta[i]) for i in range(1, l + 1)]
    e_lifts = [mod.f_lift] + [mod.e_lift] * l

    def make_h(i):
        if i == 0:
            return lambda label: mod.weight(label)[-1] - mod.weight(label)[0]
        return lambda label: mod.weight(label)[i - 1] - mod.weight(label)[i]

    h_exps = [make_h(i) for i in range(l + 1)]
    f_actions = f_lifts = None
    if full:
        if mod.lam is None or mod.name.startswith("verma"):
            raise ValueError("the f_0 action on Verma modules is not provided")
        e_top = _gl_top_E(mod)
        zinv = [SpectralPoly.zeta(-cfg.s[i]) for i in range(l + 1)]

        def f0(label):
            w = mod.weight(label)
            c = q_pow(-(w[0] + w[-1]))
            j = mod.basis.index[label]
            return [(mod.basis.labels[i], zinv[0] * (v * c)) for i, v in e_top.cols.get(j, {}).items()]

        f_actions = [f0] + [wrap(mod.f_action(i), zinv[i]) for i in range(1, l + 1)]
        f_lifts = [0] * (l + 1)
    return GeneratorMap(l, len(mod.basis.labels[0]), mod.basis.N, e_actions, e_lifts, h_exps, 1,
                        f"eval[{mod.name}]", mod.basis, cfg, f_actions, f_lifts)


def _gl_top_E(mod: GLModule) -> GradedOperator:
    return gl_root_vector("E", 1, mod.l + 1, mod)


# -- tensor products -------------------------------------------------------------------------------


def tensor_rep(m1: GeneratorMap, m2: GeneratorMap, N: int | None = None) -> GeneratorMap:
    """Coproduct action ``Delta(e_i) = e_i (x) 1 + q^{h_i} (x) e_i`` on concatenated labels.

    Spectral slots are kept separate: the slots of ``m2`` follow those of ``m1``.
    The tensor basis is truncated by total degree ``N`` (default: the larger factor truncation).
    """
    if m1.l != m2.l:
        raise ValueError("tensor factors must have the same rank")
    l = m1.l
    n1, n2 = m1.nslots, m2.nslots
    ns = n1 + n2
    k1 = m1.label_len

    def make_e(i):
        a1, a2, h1 = m1.e_actions[i], m2.e_actions[i], m1.h_exponents[i]

        def act(label):
            x, y = label[:k1], label[k1:]
            out = [(t + y, c.embed(ns, 0)) for t, c in a1(x)]
            hq = q_pow(h1(x))
            out += [(x + t, c.embed(ns, n1) * hq) for t, c in a2(y)]
            return out

        return act

    def make_h(i):
        h1, h2 = m1.h_exponents[i], m2.h_exponents[i]
        return lambda label: h1(label[:k1]) + h2(label[k1:])

    lifts = [max(a, b) for a, b in zip(m1.e_lifts, m2.e_lifts)]
    N = max(m1.N, m2.N) if N is None else N
    return GeneratorMap(l, k1 + m2.label_len, N, [make_e(i) for i in range(l + 1)], lifts,
                        [make_h(i) for i in range(l + 1)], ns, f"{m1.name}(x){m2.name}",
                        None, m1.cfg, factors=m1.factors + m2.factors)


# -- relation checks ----------------------------------------------------------------------------------


def check_relations_borel(gmap: GeneratorMap, nus: Sequence = (1, Fraction(1, 2))) -> CheckReport:
    """Weight relations, ``q^{nu c} = 1`` and the e-Serre relations of the Borel subalgebra."""
    l = gmap.l
    a_ext = cartan_matrices(l)[2]
    rep = CheckReport("relations-borel", {"module": gmap.name, "l": l, "N": gmap.N})
    ident = GradedOperator.identity(gmap.basis, gmap.nslots)
    for nu in nus:
        prod = ident
        for i in range(l + 1):
            prod = prod @ gmap.qh(i, nu)
        residual_item(rep, f"prod q^({nu} h_i) = 1", prod - ident)
    for nu in nus:
        for j in range(l + 1):
            for i in range(l + 1):
                g = gmap.e(i)
                res = gmap.qh(j, nu) @ g @ gmap.qh(j, -nu) - g.scale(q_pow(nu * a_ext[j][i]))
                residual_item(rep, f"q^({nu} h{j}) e{i} q^(-{nu} h{j})", res)
    for i in range(l + 1):
        for j in range(l + 1):
            if i == j:
                continue
            n = 1 - a_ext[i][j]
            x, y = gmap.e(i), gmap.e(j)
            res = None
            for k in range(n + 1):
                term = (x ** (n - k)) @ y @ (x ** k)
                c = q_binomial_signed(n, k)
                term = term.scale(c)
                res = term if res is None else res + term
            residual_item(rep, f"serre e{i}^{n} e{j}", res)
    return rep


def q_binomial_signed(n: int, k: int) -> Scalar:
    return q_binomial(n, k) * (-1) ** k
