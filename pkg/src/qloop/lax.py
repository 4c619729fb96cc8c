"""Explicit monodromy and L-operators and the R-matrix that intertwines them.

``M~(zeta)`` has entries in U_q(gl_{l+1}), ``L~(zeta)`` in the l-fold
q-oscillator algebra and ``R~(zeta)`` in rational functions of
``z = zeta^s`` times monomials ``zeta^{s_ij}``.  Entries are kept symbolic
(:class:`LaxTerm` lists) and realized on a module on demand.

Yang-Baxter and RLL identities are verified three ways: exactly with
symbolic spectral parameters after clearing the common denominator
``1 - q^2 z``, by exact rational evaluation at seeded points, and (for the
R-matrix) on a product grid large enough to certify the polynomial identity.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from .cartan import RankConfig
from .finite_reps import GLModule, gl_root_vector
from .loop_reps import OscMonomial, apply_monomial, monomial_lift
from .operators import Basis, GradedOperator
from .report import CheckReport
from .scalars import PoleError, Scalar, SpectralPoly, kappa, q_pow

__all__ = [
    "LaxTerm",
    "LaxMatrix",
    "RMatrix",
    "build_M_tilde",
    "build_L_tilde",
    "build_R_tilde",
    "realize_osc",
    "realize_osc_factorwise",
    "realize_gl",
    "a_of",
    "b_of",
    "check_ybe_R",
    "check_rll",
    "check_rmm",
]


# -- symbolic Lax matrices --------------------------------------------------------------


@dataclass(frozen=True)
class LaxTerm:
    """``coeff * zeta^zeta * f_1 ... f_k`` (the rightmost factor acts first)."""

    zeta: int
    coeff: Scalar
    factors: tuple

    def render(self, algebra: str) -> str:
        if algebra == "osc":
            body = OscMonomial(self.coeff, self.factors).render()
        else:
            body = f"({self.coeff})*" + " ".join(_render_gl(f) for f in self.factors)
        return body if self.zeta == 0 else f"zeta^{self.zeta} {body}"


def _render_gl(f) -> str:
    if f[0] == "qK":
        terms = [f"{c}K{k + 1}" for k, c in enumerate(f[1]) if c]
        return "q^(" + "+".join(terms or ["0"]) + ")"
    return f"{f[0]}_({f[1]},{f[2]})"


@dataclass
class LaxMatrix:
    """Square matrix of size ``l+1`` over the oscillator (``"osc"``) or U_q(gl) (``"gl"``) symbols."""

    cfg: RankConfig
    algebra: str
    entries: dict

    @property
    def l(self) -> int:
        return self.cfg.l

    @property
    def size(self) -> int:
        return self.cfg.l + 1

    def entry(self, i: int, j: int) -> tuple:
        return self.entries.get((i, j), ())

    def zeta_degrees(self) -> dict:
        """Set of zeta exponents per entry."""
        return {k: sorted({t.zeta for t in v}) for k, v in self.entries.items() if v}

    def scaled_entry(self, i: int, j: int, c: Scalar) -> "LaxMatrix":
        ent = dict(self.entries)
        ent[(i, j)] = tuple(LaxTerm(t.zeta, t.coeff * c, t.factors) for t in self.entry(i, j))
        return LaxMatrix(self.cfg, self.algebra, ent)

    def render(self) -> dict:
        return {f"{i},{j}": [t.render(self.algebra) for t in self.entry(i, j)]
                for i in range(1, self.size + 1) for j in range(1, self.size + 1)}


def _nsum(l: int, i: int, j: int, c: int = 1) -> list[int]:
    """Linear form ``c * N_{ij} = c * (N_i + ... + N_{j-1})``."""
    lin = [0] * l
    for k in range(i, j):
        lin[k - 1] += c
    return lin


def _add(*forms) -> tuple:
    return tuple(sum(x) for x in zip(*forms))


def _unit(l: int, k: int, c: int = 1) -> list[int]:
    lin = [0] * l
    lin[k - 1] = c
    return lin


def build_L_tilde(l: int, s: Sequence[int] | None = None, printed: bool = False) -> LaxMatrix:
    """The L-operator ``L~(zeta)`` with entries in the l-fold oscillator algebra.

    The last column carries ``q^{2 N_{1i} - N_{1,l+1} + N_{i+1,l+1} + i - 1}``
    and the entries with ``1 < i - j < l`` carry the prefactor ``+kappa_q``.
    ``printed=True`` uses ``+N_{1,l+1}`` and ``-kappa_q`` instead; those signs
    violate the RLL relation (the first already for l = 1, the second from l = 3 on).
    """
    cfg = RankConfig(l, tuple(s) if s else ())
    S = cfg.s_total
    sp = cfg.s_partial
    kap = kappa()
    one = Scalar.const(1)
    n = l + 1
    ent: dict = {}
    for i in range(1, l + 1):
        ent[(i, i)] = (LaxTerm(0, one, (("qN", tuple(_unit(l, i)), 0),)),)
    nall = _nsum(l, 1, n)
    ent[(n, n)] = (
        LaxTerm(0, one, (("qN", tuple(-c for c in nall), 0),)),
        LaxTerm(S, -one, (("qN", tuple(nall), l + 1),)),
    )
    for i in range(1, l):
        lin = _add(_unit(l, i, 2), _unit(l, i + 1, -1))
        ent[(i + 1, i)] = (LaxTerm(sp(i, i + 1), kap, (("b", i), ("bd", i + 1), ("qN", lin, -1))),)
    for i in range(1, l + 1):
        lin = _add(_unit(l, i), _nsum(l, i, n))
        ent[(n, i)] = (LaxTerm(sp(i, n), one, (("b", i), ("qN", lin, l - i))),)
        lin = _add(_nsum(l, 1, i, 2), nall if printed else [-c for c in nall], _nsum(l, i + 1, n))
        ent[(i, n)] = (LaxTerm(S - sp(i, n), -kap, (("bd", i), ("qN", lin, i - 1))),)
    for i in range(1, l + 1):
        for j in range(1, i - 1):
            if 1 < i - j < l:
                lin = _add(_unit(l, j), _nsum(l, j, i), _unit(l, i, -1))
                ent[(i, j)] = (LaxTerm(sp(j, i), -kap if printed else kap,
                                       (("b", j), ("bd", i), ("qN", lin, i - j - 2))),)
    return LaxMatrix(cfg, "osc", ent)


def build_M_tilde(l: int, s: Sequence[int] | None = None) -> LaxMatrix:
    """The monodromy matrix ``M~(zeta)`` with entries in U_q(gl_{l+1})."""
    cfg = RankConfig(l, tuple(s) if s else ())
    S = cfg.s_total
    kap = kappa()
    one = Scalar.const(1)
    n = l + 1

    def qk(i, c):
        co = [0] * n
        co[i - 1] = c
        return ("qK", tuple(co))

    ent: dict = {}
    for i in range(1, n + 1):
        ent[(i, i)] = (LaxTerm(0, one, (qk(i, -1),)), LaxTerm(S, -one, (qk(i, 1),)))
        for j in range(i + 1, n + 1):
            ent[(i, j)] = (LaxTerm(S - cfg.s_partial(i, j), -kap, (qk(i, 1), ("F", i, j))),)
            ent[(j, i)] = (LaxTerm(cfg.s_partial(i, j), -kap, (("E", i, j), qk(i, -1))),)
    return LaxMatrix(cfg, "gl", ent)


# -- realization ----------------------------------------------------------------------------------


def fock_basis(l: int, N: int) -> Basis:
    return Basis.truncated(l, N, name=f"fock(lax,l={l})")


def realize_osc(L: LaxMatrix, chis: str, basis: Basis, slot: int = 0, nslots: int = 1) -> dict:
    """Entry operators of an oscillator Lax matrix on a Fock basis (spectral variable in ``slot``)."""
    if L.algebra != "osc":
        raise ValueError("not an oscillator Lax matrix")
    out = {}
    for i in range(1, L.size + 1):
        for j in range(1, L.size + 1):
            terms = L.entry(i, j)
            if not terms:
                out[(i, j)] = GradedOperator.zero(basis, nslots)
                continue
            monos = [(t.zeta, OscMonomial(t.coeff, t.factors)) for t in terms]

            def act(label, monos=monos):
                res = []
                for z, mono in monos:
                    r = apply_monomial(mono, chis, label)
                    if r is not None:
                        res.append((r[0], SpectralPoly.zeta(z, slot, nslots, coeff=r[1])))
                return res

            lift = max(monomial_lift(m, chis) for _, m in monos)
            out[(i, j)] = GradedOperator.from_action(basis, act, lift, nslots)
    return out


def _osc_factor(f, chis: str, basis: Basis, nslots: int) -> GradedOperator:
    mono = OscMonomial(Scalar.const(1), (f,))

    def act(label):
        r = apply_monomial(mono, chis, label)
        return [] if r is None else [(r[0], SpectralPoly.const(r[1], nslots))]

    return GradedOperator.from_action(basis, act, monomial_lift(mono, chis), nslots)


def realize_osc_factorwise(L: LaxMatrix, chis: str, basis: Basis, slot: int = 0, nslots: int = 1) -> dict:
    """Same as :func:`realize_osc`, but multiplying the images of single oscillator symbols."""
    out = {}
    for i in range(1, L.size + 1):
        for j in range(1, L.size + 1):
            acc = GradedOperator.zero(basis, nslots)
            for t in L.entry(i, j):
                op = GradedOperator.identity(basis, nslots)
                for f in t.factors:
                    op = op @ _osc_factor(f, chis, basis, nslots)
                acc = acc + op.scale(SpectralPoly.zeta(t.zeta, slot, nslots, coeff=t.coeff))
            out[(i, j)] = acc
    return out


def _embed_op(op: GradedOperator, nslots: int, offset: int) -> GradedOperator:
    cols = {j: {i: v.embed(nslots, offset) for i, v in col.items()} for j, col in op.cols.items()}
    return GradedOperator._raw(op.basis, cols, op.lift, op.reach, nslots)


def realize_gl(M: LaxMatrix, mod: GLModule, slot: int = 0, nslots: int = 1) -> dict:
    """Entry operators of ``M~`` on a U_q(gl_{l+1})-module."""
    if M.algebra != "gl":
        raise ValueError("not a U_q(gl) Lax matrix")

    def factor(f):
        if f[0] == "qK":
            return mod.qX(f[1])
        return gl_root_vector(f[0], f[1], f[2], mod)

    out = {}
    for i in range(1, M.size + 1):
        for j in range(1, M.size + 1):
            acc = GradedOperator.zero(mod.basis, nslots)
            for t in M.entry(i, j):
                op = GradedOperator.identity(mod.basis)
                for f in t.factors:
                    op = op @ factor(f)
                acc = acc + _embed_op(op, nslots, 0).scale(
                    SpectralPoly.zeta(t.zeta, slot, nslots, coeff=t.coeff))
            out[(i, j)] = acc
    return out


# -- the R-matrix ---------------------------------------------------------------------------------


def a_of(z):
    """``a(z) = q (1 - z) / (1 - q^2 z)`` for a :class:`Scalar` (or integer) ``z``."""
    z = z if isinstance(z, Scalar) else Scalar.const(z)
    return q_pow(1) * (1 - z) / (1 - q_pow(2) * z)


def b_of(z):
    """``b(z) = (1 - q^2) / (1 - q^2 z)``."""
    z = z if isinstance(z, Scalar) else Scalar.const(z)
    return (1 - q_pow(2)) / (1 - q_pow(2) * z)


@dataclass
class RMatrix:
    """``R~(zeta)`` on ``C^{l+1} (x) C^{l+1}``.

    ``entries`` lists ``((i1, i2), (j1, j2), kind, e)``: the coefficient is
    ``1``, ``a(z)`` or ``b(z)`` (``kind``) times ``zeta^e``.
    """

    cfg: RankConfig
    entries: list
    corrupt: str | None = None

    @property
    def size(self) -> int:
        return self.cfg.l + 1

    def _ab(self, t: Fraction, z: Fraction, clear: bool) -> tuple[Fraction, Fraction, Fraction]:
        q = t * t
        den = 1 - q * q * z
        a_num = (q if self.corrupt != "a" else 1) * (1 - z)
        b_num = 1 - q * q
        if clear:
            return den, a_num, b_num
        if den == 0:
            raise PoleError(f"1 - q^2 z vanishes at t={t}, z={z}")
        return Fraction(1), a_num / den, b_num / den

    def numeric(self, t, w, clear: bool = False) -> dict:
        """Entries at ``zeta = w`` (a ratio of leg parameters); ``clear`` multiplies by ``1 - q^2 z``."""
        t, w = Fraction(t), Fraction(w)
        z = w ** self.cfg.s_total
        one, a, b = self._ab(t, z, clear)
        out: dict = {}
        for r, c, kind, e in self.entries:
            v = one if kind == "one" else a if kind == "a" else b
            v = v * w ** e
            if v:
                out.setdefault(r, {})[c] = v
        return out

    def symbolic(self, slot_a: int, slot_b: int, nslots: int, clear: bool = True) -> dict:
        """Entries with ``zeta = zeta_a / zeta_b``; only the cleared form is polynomial."""
        if not clear:
            raise ValueError("only the cleared R-matrix has polynomial entries")

        def mono(e, c):
            exps = [0] * nslots
            exps[slot_a] += e
            exps[slot_b] -= e
            return SpectralPoly.monomial(c, exps)

        S = self.cfg.s_total
        q, q2 = q_pow(1), q_pow(2)
        one_ = mono(0, 1) - mono(S, q2)
        a_ = (mono(0, q) if self.corrupt != "a" else mono(0, 1)) * (mono(0, 1) - mono(S, 1))
        b_ = mono(0, 1 - q2)
        out: dict = {}
        for r, c, kind, e in self.entries:
            base = one_ if kind == "one" else a_ if kind == "a" else b_
            out.setdefault(r, {})[c] = base * mono(e, 1)
        return out

    def leg_swapped(self) -> "RMatrix":
        """``P R P``: the same matrix acting with its tensor legs exchanged."""
        ent = [((r[1], r[0]), (c[1], c[0]), kind, e) for r, c, kind, e in self.entries]
        return RMatrix(self.cfg, ent, self.corrupt)

    def render(self) -> list[dict]:
        return [{"row": list(r), "col": list(c), "coeff": kind, "zeta": e} for r, c, kind, e in self.entries]


def build_R_tilde(l: int, s: Sequence[int] | None = None, corrupt: str | None = None) -> RMatrix:
    """``R~(zeta)``; ``corrupt="a"`` drops the factor ``q`` from ``a(z)``."""
    cfg = RankConfig(l, tuple(s) if s else ())
    if corrupt not in (None, "a"):
        raise ValueError(f"unknown corruption {corrupt!r}")
    n = l + 1
    S = cfg.s_total
    ent = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                ent.append(((i, i), (i, i), "one", 0))
            else:
                ent.append(((i, j), (i, j), "a", 0))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            sij = cfg.s_partial(i, j)
            ent.append(((i, j), (j, i), "b", sij))
            ent.append(((j, i), (i, j), "b", S - sij))
    return RMatrix(cfg, ent, corrupt)


# -- sparse block arithmetic -----------------------------------------------------------------------


def _mat_mul(A: dict, B: dict, iszero: Callable) -> dict:
    out: dict = {}
    for r, row in A.items():
        acc: dict = {}
        for k, x in row.items():
            brow = B.get(k)
            if not brow:
                continue
            for c, y in brow.items():
                acc[c] = acc[c] + x * y if c in acc else x * y
        acc = {c: v for c, v in acc.items() if not iszero(v)}
        if acc:
            out[r] = acc
    return out


def _mat_sub(A: dict, B: dict, iszero: Callable) -> dict:
    out: dict = {}
    for r in set(A) | set(B):
        ra, rb = A.get(r, {}), B.get(r, {})
        row = {}
        for c in set(ra) | set(rb):
            if c in ra and c in rb:
                v = ra[c] - rb[c]
            elif c in ra:
                v = ra[c]
            else:
                v = -rb[c]
            if not iszero(v):
                row[c] = v
        if row:
            out[r] = row
    return out


def _legs(R2: dict, legs: tuple[int, int], n: int) -> dict:
    """Embed a two-leg matrix into three legs."""
    other = 3 - sum(legs)
    out: dict = {}
    for r, row in R2.items():
        for k in range(1, n + 1):
            rr = [0, 0, 0]
            rr[legs[0]], rr[legs[1]], rr[other] = r[0], r[1], k
            new = {}
            for c, v in row.items():
                cc = [0, 0, 0]
                cc[legs[0]], cc[legs[1]], cc[other] = c[0], c[1], k
                new[tuple(cc)] = v
            out[tuple(rr)] = new
    return out


def _scalar_zero(v) -> bool:
    return v == 0


def _poly_zero(v) -> bool:
    return v.is_zero()


def _first(residual: dict, limit: int = 2) -> str:
    parts = []
    for r in sorted(residual):
        for c in sorted(residual[r]):
            parts.append(f"[{r},{c}] = {residual[r][c]}")
            if len(parts) >= limit:
                return "; ".join(parts)
    return "; ".join(parts)


def _mismatch_factor(lhs: dict, rhs: dict):
    """Common ratio ``lhs / rhs`` when the sides are proportional, else ``None``."""
    ratio = None
    for r in set(lhs) | set(rhs):
        for c in set(lhs.get(r, {})) | set(rhs.get(r, {})):
            x, y = lhs.get(r, {}).get(c, 0), rhs.get(r, {}).get(c, 0)
            if y == 0:
                if x != 0:
                    return None
                continue
            v = Fraction(x) / Fraction(y)
            if ratio is None:
                ratio = v
            elif v != ratio:
                return None
    return ratio


# -- Yang-Baxter for R~ ------------------------------------------------------------------------------


def _rand_rat(rng: random.Random, lo: int = 2, hi: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, hi)) * rng.choice((1, -1))


def seeded_points(count: int, seed: int, arity: int = 2) -> list[tuple]:
    """Rational points ``(t, w_1, ..., w_arity)`` avoiding ``t in {0, 1, -1}`` and zero ``w``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        t = _rand_rat(rng)
        if t in (0, 1, -1):
            continue
        out.append((t,) + tuple(_rand_rat(rng) for _ in range(arity)))
    return out


def _ybe_sides(R: RMatrix, t, w1, w2, clear: bool) -> tuple[dict, dict]:
    n = R.size
    r12 = _legs(R.numeric(t, w1, clear), (0, 1), n)
    r13 = _legs(R.numeric(t, w1 * w2, clear), (0, 2), n)
    r23 = _legs(R.numeric(t, w2, clear), (1, 2), n)
    z = _scalar_zero
    lhs = _mat_mul(_mat_mul(r12, r13, z), r23, z)
    rhs = _mat_mul(_mat_mul(r23, r13, z), r12, z)
    return lhs, rhs


def ybe_degree_bounds(R: RMatrix) -> dict:
    """Spans of the cleared YBE residual in ``t``, ``w1 = zeta_1/zeta_2`` and ``w2 = zeta_2/zeta_3``."""
    sym = R.symbolic(0, 1, 2)
    tmin = tmax = wmin = wmax = None
    for row in sym.values():
        for v in row.values():
            for e, c in v.terms.items():
                if not c.is_laurent():
                    raise ValueError("cleared R-matrix entry is not a Laurent polynomial")
                lo, hi = c.t_degree_span()
                tmin = lo if tmin is None else min(tmin, lo)
                tmax = hi if tmax is None else max(tmax, hi)
                wmin = e[0] if wmin is None else min(wmin, e[0])
                wmax = e[0] if wmax is None else max(wmax, e[0])
    t_span, w_span = tmax - tmin, wmax - wmin
    # w1 enters R12 and R13, w2 enters R13 and R23; t enters all three factors
    return {"t": 3 * t_span, "w1": 2 * w_span, "w2": 2 * w_span}


def check_ybe_R(l: int, s: Sequence[int] | None = None, points: int | Sequence[tuple] = 20, seed: int = 0,
                grid: bool = True, symbolic: bool = True, corrupt: str | None = None) -> CheckReport:
    """``R12(z12) R13(z12 z23) R23(z23) = R23(z23) R13(z12 z23) R12(z12)``."""
    R = build_R_tilde(l, s, corrupt)
    pts = seeded_points(points, seed) if isinstance(points, int) else [tuple(map(Fraction, p)) for p in points]
    rep = CheckReport("ybe", {"l": l, "s": list(R.cfg.s), "seed": seed, "points": len(pts),
                              "corrupt": corrupt})
    if symbolic:
        with rep.timed("symbolic (cleared denominators)") as box:
            n = R.size
            r12 = _legs(R.symbolic(0, 1, 3), (0, 1), n)
            r13 = _legs(R.symbolic(0, 2, 3), (0, 2), n)
            r23 = _legs(R.symbolic(1, 2, 3), (1, 2), n)
            z = _poly_zero
            lhs = _mat_mul(_mat_mul(r12, r13, z), r23, z)
            rhs = _mat_mul(_mat_mul(r23, r13, z), r12, z)
            res = _mat_sub(lhs, rhs, z)
            box["ok"] = not res
            box["witness"] = _first(res) if res else None
    for k, (t, w1, w2) in enumerate(pts):
        name = f"point {k}: t={t}, z12={w1}, z23={w2}"
        start = time.perf_counter()
        try:
            lhs, rhs = _ybe_sides(R, t, w1, w2, clear=False)
        except PoleError as exc:
            rep.add(name, True, None, (time.perf_counter() - start) * 1000, skipped=str(exc))
            continue
        res = _mat_sub(lhs, rhs, _scalar_zero)
        detail = {}
        if res:
            f = _mismatch_factor(lhs, rhs)
            if f is not None:
                detail["scalar_mismatch_factor"] = str(f)
        rep.add(name, not res, _first(res) if res else None, (time.perf_counter() - start) * 1000, **detail)
    if grid:
        with rep.timed("grid certification") as box:
            bounds = ybe_degree_bounds(R)
            tv = [Fraction(k + 2) for k in range(bounds["t"] + 1)]
            w1v = [Fraction(k + 2) for k in range(bounds["w1"] + 1)]
            w2v = [Fraction(-(k + 2)) for k in range(bounds["w2"] + 1)]
            bad = None
            for t, w1, w2 in product(tv, w1v, w2v):
                lhs, rhs = _ybe_sides(R, t, w1, w2, clear=True)
                res = _mat_sub(lhs, rhs, _scalar_zero)
                if res:
                    bad = f"t={t}, w1={w1}, w2={w2}: {_first(res, 1)}"
                    break
            box["ok"] = bad is None
            box["witness"] = bad
            box["degree_bounds"] = bounds
            box["grid"] = [len(tv), len(w1v), len(w2v)]
            box["certified"] = bad is None
    return rep


# -- RLL -------------------------------------------------------------------------------------------------


def _lax_for_check(l: int, s, corrupt: str | None, printed: bool) -> LaxMatrix:
    L = build_L_tilde(l, s, printed)
    if corrupt is None:
        return L
    if corrupt == "L21":
        # l >= 2: drops the constant -1 in the q-exponent of L~_{21}; l = 1: rescales L~_{21} by q
        return L.scaled_entry(2, 1, q_pow(1))
    raise ValueError(f"unknown corruption {corrupt!r}")


def _aux_R(l: int, s, r_legs: str, corrupt: str | None = None) -> RMatrix:
    if r_legs not in ("12", "21"):
        raise ValueError(f"r_legs must be '12' or '21', not {r_legs!r}")
    R = build_R_tilde(l, s, corrupt)
    return R if r_legs == "12" else R.leg_swapped()


def _block_products(A: dict, B: dict, n: int) -> dict:
    """Blocks ``P[(i1,i2),(j1,j2)] = A[i1,j1] B[i2,j2]`` (operator products)."""
    out = {}
    for i1, i2, j1, j2 in product(range(1, n + 1), repeat=4):
        op = A[(i1, j1)] @ B[(i2, j2)]
        if not op.is_zero():
            out[((i1, i2), (j1, j2))] = op
    return out


def _block_products_swapped(A: dict, B: dict, n: int) -> dict:
    """Blocks ``P[(i1,i2),(j1,j2)] = B[i2,j2] A[i1,j1]``."""
    out = {}
    for i1, i2, j1, j2 in product(range(1, n + 1), repeat=4):
        op = B[(i2, j2)] @ A[(i1, j1)]
        if not op.is_zero():
            out[((i1, i2), (j1, j2))] = op
    return out


def _rll_residual(Rsym: dict, left: dict, right: dict, n: int, basis: Basis, nslots: int, columns) -> list:
    """Blocks of ``R . left - right . R`` restricted to ``columns``."""
    zero = GradedOperator.zero(basis, nslots)
    pairs = list(product(range(1, n + 1), repeat=2))
    bad = []
    for i in pairs:
        for j in pairs:
            acc = zero
            for k, r in Rsym.get(i, {}).items():
                blk = left.get((k, j))
                if blk is not None:
                    acc = acc + blk.scale(r)
            for k in pairs:
                r = Rsym.get(k, {}).get(j)
                blk = right.get((i, k))
                if r is not None and blk is not None:
                    acc = acc - blk.scale(r)
            hits = acc.nonzero_on(columns)
            if hits:
                bad.append((i, j, hits))
    return bad


def _num_blocks(ops: dict, t, z) -> dict:
    return {k: v.eval_at(t, [z]) for k, v in ops.items()}


def _num_apply(blk: dict, vec: dict) -> dict:
    out: dict = {}
    for j, x in vec.items():
        for i, v in blk.get(j, {}).items():
            out[i] = out.get(i, 0) + v * x
    return out


def _num_rll(R: RMatrix, L1: dict, L2: dict, t, z1, z2, n: int, columns, orientation: str) -> str | None:
    """Pointwise RLL on the given Fock columns; ``None`` when it holds."""
    A = _num_blocks(L1, t, z1)
    B = _num_blocks(L2, t, z2)
    Rn = R.numeric(t, Fraction(z1) / Fraction(z2))
    pairs = list(product(range(1, n + 1), repeat=2))

    for col in columns:
        for j in pairs:
            for i in pairs:
                lhs: dict = {}
                rhs: dict = {}
                for k, r in Rn.get(i, {}).items():
                    if orientation == "standard":
                        v = _num_apply(A[(k[0], j[0])], _num_apply(B[(k[1], j[1])], {col: 1}))
                    else:
                        v = _num_apply(B[(k[1], j[1])], _num_apply(A[(k[0], j[0])], {col: 1}))
                    for x, y in v.items():
                        lhs[x] = lhs.get(x, 0) + r * y
                for k in pairs:
                    r = Rn.get(k, {}).get(j)
                    if not r:
                        continue
                    if orientation == "standard":
                        v = _num_apply(B[(i[1], k[1])], _num_apply(A[(i[0], k[0])], {col: 1}))
                    else:
                        v = _num_apply(A[(i[0], k[0])], _num_apply(B[(i[1], k[1])], {col: 1}))
                    for x, y in v.items():
                        rhs[x] = rhs.get(x, 0) + r * y
                diff = {x: lhs.get(x, 0) - rhs.get(x, 0) for x in set(lhs) | set(rhs)}
                diff = {x: v for x, v in diff.items() if v}
                if diff:
                    x = min(diff)
                    return f"block {i},{j} column {col}: row {x} differs by {diff[x]}"
    return None


def _rll_symbolic(L_or_M: tuple, R: RMatrix, orientation: str, n: int, basis: Basis, columns) -> list:
    A, B = L_or_M
    if orientation == "standard":
        left, right = _block_products(A, B, n), _block_products_swapped(A, B, n)
    else:
        left, right = _block_products_swapped(A, B, n), _block_products(A, B, n)
    return _rll_residual(R.symbolic(0, 1, 2), left, right, n, basis, 2, columns)


def _describe_blocks(bad: list, basis: Basis) -> str | None:
    if not bad:
        return None
    i, j, hits = bad[0]
    r, c, v = hits[0]
    return f"block {i},{j}: <{basis.labels[r]}|.|{basis.labels[c]}> = {v} ({len(bad)} nonzero blocks)"


def check_rll(l: int, s: Sequence[int] | None = None, N: int = 5, points: int = 10, seed: int = 0,
              chis: str | None = None, orientation: str = "standard", r_legs: str = "21",
              symbolic: bool = True, printed: bool = False, corrupt: str | None = None) -> CheckReport:
    """``R(zeta_1/zeta_2) L13(zeta_1) L23(zeta_2) = L23(zeta_2) L13(zeta_1) R(zeta_1/zeta_2)``.

    ``R`` acts on the two auxiliary legs; ``r_legs="21"`` (the default) lets
    its first tensor factor act on the second auxiliary leg, which is the
    convention under which both ``M~`` and ``L~`` satisfy the relation;
    ``r_legs="12"`` is the literal placement.  ``orientation="swapped"``
    checks ``R L23 L13 = L13 L23 R`` instead.  The Fock space uses the
    chi-pattern ``chis`` (default all ``+``) truncated at total degree
    ``N``; only columns of degree at most ``N - 2`` are compared.  The
    symbolic check also records the residual count of the literal leg
    placement and of the other orientation.
    """
    if orientation not in ("standard", "swapped"):
        raise ValueError(f"unknown orientation {orientation!r}")
    chis = chis or "+" * l
    if len(chis) != l or set(chis) - {"+", "-"}:
        raise ValueError(f"chi pattern must have {l} signs")
    L = _lax_for_check(l, s, corrupt, printed)
    R = _aux_R(l, s, r_legs)
    n = l + 1
    basis = fock_basis(l, N)
    L1n = realize_osc(L, chis, basis, 0, 1)
    margin = 2 * max(op.reach for op in L1n.values())
    columns = [j for j, d in enumerate(basis.degrees) if d <= N - margin]
    rep = CheckReport("rll", {"l": l, "s": list(L.cfg.s), "N": N, "chis": chis, "points": points,
                              "seed": seed, "orientation": orientation, "r_legs": r_legs,
                              "printed": printed, "corrupt": corrupt})
    if not columns:
        rep.add("safe domain", False, f"N = {N} leaves no Fock vectors of degree <= N - {margin}")
        return rep
    with rep.timed("grading: zeta degrees of L match R monomials") as box:
        S, sp = L.cfg.s_total, L.cfg.s_partial
        wrong = []
        for (i, j), degs in L.zeta_degrees().items():
            want = {sp(j, i)} if i > j else {S - sp(i, j)} if i < j else {0, S} if i == n else {0}
            if not set(degs) <= want:
                wrong.append(f"({i},{j}): {degs} not in {sorted(want)}")
        box["ok"] = not wrong
        box["witness"] = "; ".join(wrong) or None
    if symbolic:
        with rep.timed(f"symbolic ({orientation}, R legs {r_legs}, cleared denominators)") as box:
            L1 = realize_osc(L, chis, basis, 0, 2)
            L2 = realize_osc(L, chis, basis, 1, 2)
            bad = _rll_symbolic((L1, L2), R, orientation, n, basis, columns)
            box["ok"] = not bad
            box["witness"] = _describe_blocks(bad, basis)
            other_legs = "12" if r_legs == "21" else "21"
            other_ori = "swapped" if orientation == "standard" else "standard"
            box["residual_blocks_other_legs"] = len(
                _rll_symbolic((L1, L2), _aux_R(l, s, other_legs), orientation, n, basis, columns))
            box["residual_blocks_other_orientation"] = len(
                _rll_symbolic((L1, L2), R, other_ori, n, basis, columns))
            box["safe_columns"] = len(columns)
            box["margin"] = margin
    for k, (t, z1, z2) in enumerate(seeded_points(points, seed)):
        name = f"point {k}: t={t}, zeta1={z1}, zeta2={z2}"
        start = time.perf_counter()
        try:
            w = _num_rll(R, L1n, L1n, t, z1, z2, n, columns, orientation)
        except PoleError as exc:
            rep.add(name, True, None, (time.perf_counter() - start) * 1000, skipped=str(exc))
            continue
        rep.add(name, w is None, w, (time.perf_counter() - start) * 1000)
    return rep


def check_rmm(l: int, lam: Sequence[int], N: int = 4, s: Sequence[int] | None = None,
              orientation: str = "standard", r_legs: str = "21") -> CheckReport:
    """The same exchange relation for ``M~`` realized on a truncated Verma module (symbolic, cleared)."""
    from .finite_reps import verma_module

    if orientation not in ("standard", "swapped"):
        raise ValueError(f"unknown orientation {orientation!r}")
    M = build_M_tilde(l, s)
    R = _aux_R(l, s, r_legs)
    mod = verma_module(lam, N)
    n = l + 1
    rep = CheckReport("rmm", {"l": l, "lambda": list(lam), "N": N, "orientation": orientation,
                              "r_legs": r_legs})
    with rep.timed(f"symbolic ({orientation}, R legs {r_legs}, cleared denominators)") as box:
        M1 = realize_gl(M, mod, 0, 2)
        M2 = realize_gl(M, mod, 1, 2)
        reach = max(a.reach + b.reach for a in M1.values() for b in M2.values())
        columns = mod.basis.safe_columns(reach)
        if not columns:
            box["ok"], box["witness"] = False, "empty safe domain"
        else:
            bad = _rll_symbolic((M1, M2), R, orientation, n, mod.basis, columns)
            box["ok"] = not bad
            box["witness"] = _describe_blocks(bad, mod.basis)
        box["safe_columns"] = len(columns)
    return rep
