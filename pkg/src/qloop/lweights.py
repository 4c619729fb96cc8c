"""ℓ-weights of Borel modules: computed from root vectors and in closed rational form.

The generating series ``phi+_i(u) = q^{h_i} (1 - kappa e'_{delta, alpha_i}((-1)^i u))``
has ``u^n`` coefficient ``-kappa (-1)^{i n} q^{h_i} e'_{n delta, alpha_i}``.
On an ℓ-weight vector ``v`` each coefficient acts by a scalar, giving the
series ``Psi_i(u)``.

Closed forms are :class:`RationalU` values: quotients of polynomials in ``u``
whose coefficients are :class:`~qloop.scalars.SpectralPoly` (so the spectral
parameter ``x = zeta^s`` is carried symbolically).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cartan import Weight, fundamental_weight, rho_pairing
from .loop_reps import GeneratorMap
from .operators import GradedOperator, TruncationError
from .report import CheckReport
from .rootvec import WordEvaluator, build_imag_prime, build_real_plus
from .scalars import Scalar, SpectralPoly, USeries, kappa, q_pow

__all__ = [
    "RationalU",
    "LWeight",
    "NotLWeightVector",
    "phi_plus_series",
    "lweight_of_vector",
    "highest_vector_check",
    "closed_lweight",
    "lweight_product",
    "drinfeld_chi_series",
    "check_closed_vs_computed",
    "check_barred_symmetry",
    "check_verma_vs_evaluation",
    "spectral_x",
    "rho_shift",
]


class NotLWeightVector(ValueError):
    """The vector is not a common eigenvector of the phi+ coefficients."""

    def __init__(self, message: str, witness: str):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


# -- rational functions of u ---------------------------------------------------------


def _trim(p: Sequence[SpectralPoly]) -> tuple:
    p = list(p)
    while len(p) > 1 and p[-1].is_zero():
        p.pop()
    return tuple(p)


def _pmul(a: Sequence[SpectralPoly], b: Sequence[SpectralPoly]) -> tuple:
    zero = a[0] * 0
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return _trim(out)


@dataclass(frozen=True)
class RationalU:
    """``num(u) / den(u)`` with coefficient lists (lowest power first)."""

    num: tuple
    den: tuple

    @classmethod
    def const(cls, c, nslots: int = 1) -> "RationalU":
        c = c if isinstance(c, SpectralPoly) else SpectralPoly.const(c, nslots)
        return cls((c,), (SpectralPoly.const(1, c.nslots),))

    @classmethod
    def linear(cls, c0, c1, power: int = 1) -> "RationalU":
        """``(c0 + c1 u)^power`` for ``power`` in ``{1, -1}``."""
        lin = (c0, c1)
        one = (SpectralPoly.const(1, c0.nslots),)
        if power == 1:
            return cls(_trim(lin), one)
        if power == -1:
            return cls(one, _trim(lin))
        raise ValueError("power must be 1 or -1")

    @property
    def nslots(self) -> int:
        return self.num[0].nslots

    def __mul__(self, other: "RationalU") -> "RationalU":
        return RationalU(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def inverse(self) -> "RationalU":
        return RationalU(self.den, self.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalU):
            return NotImplemented
        return _pmul(self.num, other.den) == _pmul(other.num, self.den)

    def __hash__(self):
        raise TypeError("RationalU is unhashable (equality is by cross-multiplication)")

    def constant_term(self) -> SpectralPoly:
        return self.num[0] * self.den[0].inverse()

    def expand(self, order: int) -> USeries:
        return USeries.expand_rational(self.num, self.den, order)

    def substitute(self, c: SpectralPoly) -> "RationalU":
        """``f(c u)``."""
        def sub(p):
            out, power = [], None
            for k, x in enumerate(p):
                if k == 0:
                    out.append(x)
                    continue
                power = c if power is None else power * c
                out.append(x * power)
            return tuple(out)
        return RationalU(sub(self.num), sub(self.den))

    def render(self, names=None) -> dict:
        def poly(p):
            terms = []
            for k, c in enumerate(p):
                if c.is_zero():
                    continue
                body = c.render(names)
                terms.append(f"({body})" + ("" if k == 0 else "*u" if k == 1 else f"*u^{k}"))
            return " + ".join(terms) or "0"
        return {"num": poly(self.num), "den": poly(self.den)}

    def __str__(self) -> str:
        r = self.render()
        return f"[{r['num']}] / [{r['den']}]"


# -- ℓ-weights ---------------------------------------------------------------------------------


@dataclass
class LWeight:
    """Weight ``lam`` (omega basis) together with ``Psi_1..Psi_l`` (rational or truncated series)."""

    lam: Weight
    psi: list

    @property
    def l(self) -> int:
        return self.lam.l

    def is_rational(self) -> bool:
        return all(isinstance(p, RationalU) for p in self.psi)

    def series(self, order: int) -> list[USeries]:
        out = []
        for p in self.psi:
            if isinstance(p, RationalU):
                out.append(p.expand(order))
            else:
                if p.order < order:
                    raise ValueError(f"series known only to order {p.order}")
                out.append(USeries(p.coeffs[:order + 1]))
        return out

    def __mul__(self, other: "LWeight") -> "LWeight":
        return lweight_product(self, other)

    def equals(self, other: "LWeight", order: int | None = None) -> bool:
        if self.lam != other.lam:
            return False
        if order is None and self.is_rational() and other.is_rational():
            return all(a == b for a, b in zip(self.psi, other.psi))
        if order is None:
            order = min(p.order for p in self.psi + other.psi if isinstance(p, USeries))
        return self.series(order) == other.series(order)

    def diff(self, other: "LWeight", order: int | None = None) -> str | None:
        """Description of the first discrepancy, or ``None``."""
        if self.lam != other.lam:
            return f"lambda {self.lam} != {other.lam}"
        rational = order is None and self.is_rational() and other.is_rational()
        if order is None and not rational:
            order = min(p.order for p in self.psi + other.psi if isinstance(p, USeries))
        for i, (a, b) in enumerate(zip(self.psi, other.psi), start=1):
            if rational:
                if a != b:
                    return f"Psi_{i}: {a} != {b}"
            else:
                sa, sb = self.series(order)[i - 1], other.series(order)[i - 1]
                for n, (x, y) in enumerate(zip(sa.coeffs, sb.coeffs)):
                    if x != y:
                        return f"Psi_{i}, u^{n}: {x} != {y}"
        return None

    def to_json(self) -> dict:
        psi = []
        for p in self.psi:
            if isinstance(p, RationalU):
                psi.append(p.render())
            else:
                psi.append({"series": [c.render() for c in p.coeffs]})
        return {"lambda_omega": [str(c) for c in self.lam.comps], "psi": psi}


def lweight_product(w1: LWeight, w2: LWeight) -> LWeight:
    """``(lambda_1 + lambda_2, Psi_1 Psi_2)``."""
    if w1.l != w2.l:
        raise ValueError("ℓ-weights of different rank")
    psi = []
    for a, b in zip(w1.psi, w2.psi):
        if isinstance(a, RationalU) and isinstance(b, RationalU):
            psi.append(a * b)
        else:
            order = min(p.order for p in (a, b) if isinstance(p, USeries))
            sa = a.expand(order) if isinstance(a, RationalU) else USeries(a.coeffs[:order + 1])
            sb = b.expand(order) if isinstance(b, RationalU) else USeries(b.coeffs[:order + 1])
            psi.append(sa * sb)
    return LWeight(w1.lam + w2.lam, psi)


# -- computed ℓ-weights ----------------------------------------------------------------------------


def _evaluator(gmap: GeneratorMap) -> WordEvaluator:
    ev = gmap._cache.get("evaluator")
    if ev is None:
        ev = WordEvaluator(gmap.e)
        gmap._cache["evaluator"] = ev
    return ev


def phi_plus_series(gmap: GeneratorMap, i: int, n_max: int) -> USeries:
    """Operator-valued ``phi+_i(u)`` up to ``u^{n_max}``."""
    if not 1 <= i <= gmap.l:
        raise ValueError(f"node {i} out of range")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    ev = _evaluator(gmap)
    qh = gmap.qh(i)
    kap = kappa()
    coeffs = [qh]
    for n in range(1, n_max + 1):
        op = ev(build_imag_prime(gmap.l, n, i))
        sign = -1 if (i * n) % 2 else 1
        coeffs.append((qh @ op).scale(-kap * sign))
    return USeries(coeffs)


def _require_safe(op: GradedOperator, label: tuple, what: str) -> None:
    basis = op.basis
    deg = basis.degree_fn(label)
    if deg + op.reach > basis.N:
        raise TruncationError(
            f"{what}: needs truncation N >= {deg + op.reach}, have N = {basis.N}")


def _as_vector(gmap: GeneratorMap, vector) -> dict[int, SpectralPoly]:
    if vector is None:
        vector = gmap.vacuum()
    if isinstance(vector, dict):
        items = vector.items()
    else:
        items = [(tuple(vector), 1)]
    out = {}
    for lab, c in items:
        c = c if isinstance(c, SpectralPoly) else SpectralPoly.const(c, gmap.nslots)
        if not c.is_zero():
            out[gmap.basis.index[tuple(lab)]] = c
    if not out:
        raise ValueError("the zero vector has no ℓ-weight")
    return out


def lweight_of_vector(gmap: GeneratorMap, label=None, n_max: int = 3) -> LWeight:
    """ℓ-weight of a vector, as truncated series; raises :class:`NotLWeightVector` otherwise.

    ``label`` is a basis label (default: the vacuum) or a mapping from labels
    to constant coefficients.
    """
    basis = gmap.basis
    vec = _as_vector(gmap, label)
    pivot = min(vec)
    c_inv = vec[pivot].constant_scalar().inverse()
    psi = []
    for i in range(1, gmap.l + 1):
        phi = phi_plus_series(gmap, i, n_max)
        coeffs = []
        for n, op in enumerate(phi.coeffs):
            image: dict[int, SpectralPoly] = {}
            for j, c in vec.items():
                _require_safe(op, basis.labels[j], f"phi+_{i} coefficient u^{n}")
                for k, v in op.column(j).items():
                    image[k] = image[k] + v * c if k in image else v * c
            ev = image.get(pivot, SpectralPoly.const(0, gmap.nslots)) * c_inv
            for k in sorted(set(image) | set(vec)):
                want = vec[k] * ev if k in vec else SpectralPoly.const(0, gmap.nslots)
                got = image.get(k, SpectralPoly.const(0, gmap.nslots))
                if got != want:
                    raise NotLWeightVector(
                        f"phi+_{i} u^{n} does not preserve the line of the vector",
                        f"component {basis.labels[k]}: {got - want}")
            coeffs.append(ev)
        psi.append(USeries(coeffs))
    weights = {tuple(gmap.h_exponent(i, basis.labels[j]) for i in range(1, gmap.l + 1)) for j in vec}
    if len(weights) != 1:
        raise NotLWeightVector("vector is not a weight vector", f"weights {sorted(weights)}")
    lam = Weight(gmap.l, weights.pop(), "omega")
    return LWeight(lam, psi)


def highest_vector_check(gmap: GeneratorMap, label: tuple | None = None, n_max: int = 3) -> CheckReport:
    """``e_{alpha_i + n delta} v = 0`` for every node ``i`` and ``0 <= n <= n_max``."""
    label = gmap.vacuum() if label is None else tuple(label)
    rep = CheckReport("highest-vector", {"module": gmap.name, "vector": list(label), "n_max": n_max})
    ev = _evaluator(gmap)
    j = gmap.basis.index[label]
    for i in range(1, gmap.l + 1):
        for n in range(n_max + 1):
            op = ev(build_real_plus(gmap.l, i, i + 1, n))
            name = f"e[a{i}+{n}d] v"
            try:
                _require_safe(op, label, name)
            except TruncationError as exc:
                rep.add(name, False, str(exc))
                continue
            col = op.column(j)
            if col:
                k, v = sorted(col.items())[0]
                rep.add(name, False, f"component {gmap.basis.labels[k]}: {v}")
            else:
                rep.add(name, True)
    return rep


def drinfeld_chi_series(gmap: GeneratorMap, i: int, n_max: int) -> USeries:
    """Operators ``chi_{i,n}`` (``n = 1..n_max``; index 0 is zero) from the logarithm of the primed series."""
    ev = _evaluator(gmap)
    kap = kappa()
    basis = gmap.basis
    zero = GradedOperator.zero(basis, gmap.nslots)
    x = [zero] + [ev(build_imag_prime(gmap.l, n, i)).scale(-kap) for n in range(1, n_max + 1)]
    logs = USeries(x).log1p()
    out = [zero]
    for n in range(1, n_max + 1):
        sign = -1 if (i * n) % 2 else 1
        out.append(logs.coeffs[n].scale(kap.inverse() * sign))
    return USeries(out)


# -- closed forms ---------------------------------------------------------------------------------------


def _q(e, nslots: int = 1) -> SpectralPoly:
    return SpectralPoly.const(q_pow(e), nslots)


def _one(nslots: int = 1) -> RationalU:
    return RationalU.const(1, nslots)


def _factor(const_exp, coeff: SpectralPoly, power: int) -> RationalU:
    """``q^{const_exp} (1 - coeff u)^{power}``."""
    ns = coeff.nslots
    return RationalU.const(_q(const_exp, ns)) * RationalU.linear(SpectralPoly.const(1, ns), -coeff, power)


def _lam(l: int, *pairs) -> Weight:
    w = Weight.zero(l)
    for i, c in pairs:
        w = w + fundamental_weight(l, i, c)
    return w


def closed_lweight(kind: str, l: int, **params) -> LWeight:
    """Closed highest ℓ-weights.

    ``kind``/``params``:

    * ``"theta"``, ``"theta_bar"``: ``a``, ``x`` (spectral value, a :class:`SpectralPoly`);
    * ``"prefund_plus"``, ``"prefund_minus"``: ``i``, ``x`` (Psi_i = (1 - x u)^{+-1});
    * ``"onedim"``: ``xi`` (a :class:`Weight`);
    * ``"verma"``: ``lam`` (integral K-basis components), ``x``;
    * ``"trivial"``.
    """
    x = params.get("x")
    ns = x.nslots if isinstance(x, SpectralPoly) else params.get("nslots", 1)
    psi = [_one(ns) for _ in range(l)]
    if kind == "trivial":
        return LWeight(Weight.zero(l), psi)
    if kind == "onedim":
        xi = params["xi"]
        return LWeight(xi, [RationalU.const(_q(xi.h(i), ns)) for i in range(1, l + 1)])
    if kind in ("prefund_plus", "prefund_minus"):
        i = params["i"]
        if not 1 <= i <= l:
            raise ValueError(f"node {i} out of range")
        psi[i - 1] = _factor(0, x, 1 if kind == "prefund_plus" else -1)
        return LWeight(Weight.zero(l), psi)
    if kind == "verma":
        lam = tuple(int(c) for c in params["lam"])
        if len(lam) != l + 1:
            raise ValueError("Verma weight needs l+1 components")
        for i in range(1, l + 1):
            up = _factor(lam[i - 1] - lam[i], x * _q(2 * lam[i] - i + 1, ns), 1)
            down = _factor(0, x * _q(2 * lam[i - 1] - i + 1, ns), -1)
            psi[i - 1] = up * down
        return LWeight(Weight.from_K(lam).to_omega(), psi)
    if kind not in ("theta", "theta_bar"):
        raise ValueError(f"unknown ℓ-weight kind {kind!r}")
    a = params["a"]
    if not 1 <= a <= l + 1:
        raise ValueError(f"a must lie in 1..{l + 1}")
    if kind == "theta":
        if a == l + 1:
            psi[l - 1] = _factor(0, x * _q(1, ns), 1)
            return LWeight(Weight.zero(l), psi)
        if a == 1:
            psi[0] = _factor(-l - 1, x * _q(-l, ns), -1)
            return LWeight(_lam(l, (1, -(l + 1))), psi)
        psi[a - 2] = _factor(l - a + 1, x * _q(-l + a, ns), 1)
        psi[a - 1] = _factor(-l + a - 2, x * _q(-l + a - 1, ns), -1)
        return LWeight(_lam(l, (a - 1, l - a + 1), (a, -(l - a + 2))), psi)
    sgn = -1 if l % 2 else 1  # the factor (1 + (-1)^l c u) is (1 - (-(-1)^l c) u)
    if a == 1:
        psi[0] = _factor(0, x * _q(1, ns) * (-sgn), 1)
        return LWeight(Weight.zero(l), psi)
    if a == l + 1:
        psi[l - 1] = _factor(-l - 1, x * _q(-l, ns) * (-sgn), -1)
        return LWeight(_lam(l, (l, -(l + 1))), psi)
    psi[a - 2] = _factor(-a, x * _q(-a + 1, ns) * (-sgn), -1)
    psi[a - 1] = _factor(a - 1, x * _q(-a + 2, ns) * (-sgn), 1)
    return LWeight(_lam(l, (a - 1, -a), (a, a - 1)), psi)


def spectral_x(s_total: int, slot: int = 0, nslots: int = 1, shift: int = 0, sign: int = 1) -> SpectralPoly:
    """``sign * q^{shift} * zeta_slot^s`` as a spectral monomial."""
    return SpectralPoly.zeta(s_total, slot, nslots, coeff=q_pow(shift) * sign)


def homogeneity_witness(series: Sequence[USeries], step: Sequence[int]) -> str | None:
    """Check that the ``u^n`` coefficient is zero or homogeneous of spectral degree ``n * step``."""
    for i, ser in enumerate(series, start=1):
        for n, c in enumerate(ser.coeffs):
            for e in c.terms:
                if tuple(e) != tuple(n * s for s in step):
                    return f"Psi_{i} u^{n} has spectral exponent {e}, expected {n}*{tuple(step)}"
    return None


def check_closed_vs_computed(l: int, a: int, kind: str, N: int = 5, n_max: int = 3,
                             s: Sequence[int] | None = None, corrupt: str | None = None) -> CheckReport:
    """Computed ℓ-weight of the vacuum of ``theta_a``/``bar-theta_a`` against its closed form."""
    from .loop_reps import osc_rep

    gmap = osc_rep(l, a, kind, N, s, corrupt=corrupt)
    s_tot = gmap.cfg.s_total
    rep = CheckReport("lweights", {"l": l, "a": a, "kind": kind, "N": N, "n_max": n_max,
                                   "s": list(gmap.cfg.s)})
    with rep.timed(f"{kind}_{a} closed=computed") as box:
        try:
            got = lweight_of_vector(gmap, None, n_max)
        except (TruncationError, NotLWeightVector) as exc:
            box["ok"], box["witness"] = False, str(exc)
            got = None
        if got is not None:
            want = closed_lweight(kind, l, a=a, x=spectral_x(s_tot))
            d = got.diff(want, n_max)
            hom = homogeneity_witness(got.series(n_max), (s_tot,))
            box["ok"] = d is None and hom is None
            box["witness"] = d or hom
    rep.extend(highest_vector_check(gmap, None, n_max))
    return rep


def rho_shift(lam: Sequence[int], l: int, i: int) -> int:
    """Exponent ``2 <lambda + rho, K_i>`` (an integer for integral ``lam``)."""
    v = 2 * (Fraction(lam[i - 1]) + rho_pairing(l, i))
    if v.denominator != 1:
        raise ValueError("non-integral shift")
    return int(v)


def check_barred_symmetry(l: int, a: int | None = None, N: int = 5, n_max: int = 3,
                          s: Sequence[int] | None = None, corrupt: str | None = None) -> CheckReport:
    """Computed ``bar-Psi_{i,a}(u) = Psi_{l-i+1, l-a+2}(-(-1)^l u)`` and ``bar-lambda_a = iota(lambda_{l-a+2})``.

    ``corrupt`` is passed to the barred module.
    """
    from .loop_reps import osc_rep

    rep = CheckReport("barred-symmetry", {"l": l, "N": N, "n_max": n_max, "s": list(s) if s else None})
    sign = SpectralPoly.const(-1 if l % 2 == 0 else 1)  # -(-1)^l
    for b in ([a] if a else range(1, l + 2)):
        with rep.timed(f"theta_bar_{b} vs theta_{l - b + 2}") as box:
            try:
                bar = lweight_of_vector(osc_rep(l, b, "theta_bar", N, s, corrupt=corrupt), None, n_max)
                plain = lweight_of_vector(osc_rep(l, l - b + 2, "theta", N, s), None, n_max)
            except (TruncationError, NotLWeightVector) as exc:
                box["ok"], box["witness"] = False, str(exc)
                continue
            flipped = LWeight(plain.lam.iota(), [p.substitute(sign) for p in reversed(plain.psi)])
            d = bar.diff(flipped, n_max)
            box["ok"], box["witness"] = d is None, d
    return rep


def check_verma_vs_evaluation(lam: Sequence[int], N: int = 4, n_max: int = 2,
                              s: Sequence[int] | None = None) -> CheckReport:
    """Closed Verma ℓ-weight against the computed one on the evaluation Borel module."""
    from .finite_reps import verma_module
    from .loop_reps import evaluation_map

    gmap = evaluation_map(verma_module(lam, N), s)
    rep = CheckReport("verma-lweight", {"lambda": list(lam), "N": N, "n_max": n_max,
                                        "s": list(gmap.cfg.s)})
    with rep.timed("closed=computed") as box:
        try:
            got = lweight_of_vector(gmap, None, n_max)
        except (TruncationError, NotLWeightVector) as exc:
            box["ok"], box["witness"] = False, str(exc)
        else:
            want = closed_lweight("verma", gmap.l, lam=lam, x=spectral_x(gmap.cfg.s_total))
            d = got.diff(want, n_max)
            box["ok"], box["witness"] = d is None, d
    rep.extend(highest_vector_check(gmap, None, n_max))
    return rep
