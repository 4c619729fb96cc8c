"""Exact scalars: rational functions in ``t = q^(1/2)`` and truncated series in ``u``.

The ground field is Q(t) with ``q = t**2``.  A :class:`Scalar` is stored in a
canonical form ``t**shift * num(t) / den(t)`` where ``num`` and ``den`` are
ordinary polynomials with nonzero constant terms, ``den(0) == 1`` and
``gcd(num, den) == 1``.  Canonical forms make equality structural.

Spectral dependence never enters the field.  :class:`SpectralPoly` is a
Laurent polynomial in one or more formal spectral slots ``zeta_1, ...``
with :class:`Scalar` coefficients; it is the coefficient ring for operator
entries and for ℓ-weight series.

:class:`USeries` is a truncated power series in ``u`` over any coefficient
ring providing ``+``, ``*`` and multiplication by :class:`fractions.Fraction`.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from flint import fmpq, fmpq_poly

__all__ = [
    "Rat",
    "Scalar",
    "SpectralPoly",
    "USeries",
    "PoleError",
    "ZERO",
    "ONE",
    "qnum",
    "qfact",
    "q_pow",
    "t_pow",
    "kappa",
    "scalar_normalize",
    "parse_scalar",
    "series_ops",
]

Rat = Fraction

_ZERO_POLY = fmpq_poly([])
_ONE_POLY = fmpq_poly([1])


class PoleError(ZeroDivisionError):
    """Raised when a scalar is evaluated at a root of its denominator."""


def _to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    x = Fraction(x)
    return fmpq(x.numerator, x.denominator)


def _to_fraction(x: fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def _valuation(p: fmpq_poly) -> int:
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    raise ValueError("valuation of the zero polynomial")


def _drop_low(p: fmpq_poly, k: int) -> fmpq_poly:
    if k == 0:
        return p
    return fmpq_poly(p.coeffs()[k:])


def _raise(p: fmpq_poly, k: int) -> fmpq_poly:
    if k == 0:
        return p
    return fmpq_poly([0] * k + p.coeffs())


class Scalar:
    """Element of Q(t), ``q = t**2``, in canonical reduced form."""

    __slots__ = ("shift", "num", "den", "_hash")

    def __init__(self, shift: int, num: fmpq_poly, den: fmpq_poly, _canonical: bool = False):
        if not _canonical:
            shift, num, den = _canonicalize(shift, num, den)
        self.shift = shift
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "Scalar":
        if isinstance(c, Scalar):
            return c
        c = _to_fmpq(c)
        if c == 0:
            return ZERO
        return cls(0, fmpq_poly([c]), _ONE_POLY, _canonical=True)

    @classmethod
    def from_laurent(cls, coeffs: Mapping[int, object]) -> "Scalar":
        """Build ``sum c_k t**k`` from a mapping ``k -> c_k``."""
        items = {k: _to_fmpq(c) for k, c in coeffs.items() if c != 0}
        if not items:
            return ZERO
        lo = min(items)
        hi = max(items)
        dense = [0] * (hi - lo + 1)
        for k, c in items.items():
            dense[k - lo] = c
        return cls(lo, fmpq_poly(dense), _ONE_POLY, _canonical=True)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.degree() < 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_laurent(self) -> bool:
        return self.den.degree() == 0

    def is_monomial(self) -> bool:
        return self.den.degree() == 0 and self.num.degree() == 0

    def t_power(self) -> int | None:
        """Exponent ``k`` when ``self == t**k`` exactly, else ``None``."""
        if self.is_monomial() and self.num[0] == 1:
            return self.shift
        return None

    def q_power(self) -> Fraction | None:
        """Exponent ``e`` when ``self == q**e`` exactly, else ``None``."""
        k = self.t_power()
        return None if k is None else Fraction(k, 2)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        k = min(self.shift, other.shift)
        a = _raise(self.num, self.shift - k)
        b = _raise(other.num, other.shift - k)
        if self.den == other.den:
            if self.den.degree() == 0:
                n = a + b
                if n.degree() < 0:
                    return ZERO
                v = _valuation(n)
                return Scalar(k + v, _drop_low(n, v), _ONE_POLY, _canonical=True)
            return Scalar(k, a + b, self.den)
        return Scalar(k, a * other.den + b * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        if self.is_zero():
            return self
        return Scalar(self.shift, -self.num, self.den, _canonical=True)

    def __sub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return _coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return ZERO
        if self.den.degree() == 0 and other.den.degree() == 0:
            return Scalar(self.shift + other.shift, self.num * other.num, _ONE_POLY, _canonical=True)
        # cross-cancel before multiplying keeps degrees small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n = (self.num // g1) * (other.num // g2)
        d = (self.den // g2) * (other.den // g1)
        c = d[0]
        return Scalar(self.shift + other.shift, n / c, d / c, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        c = self.num[0]
        return Scalar(-self.shift, self.den / c, self.num / c, _canonical=True)

    def __truediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return _coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int):
            raise TypeError("Scalar powers must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_monomial():
            return Scalar(self.shift * n, self.num ** n, _ONE_POLY, _canonical=True)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is NotImplemented:
                return False
        return self.shift == other.shift and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shift, tuple(self.num.coeffs()), tuple(self.den.coeffs())))
        return self._hash

    # -- evaluation -------------------------------------------------------------
    def eval_at(self, t) -> Fraction:
        """Substitute a rational value for ``t``."""
        tv = _to_fmpq(t)
        d = self.den(tv)
        if d == 0:
            raise PoleError(f"t = {t} is a root of the denominator of {self}")
        if tv == 0 and self.shift < 0:
            raise PoleError("t = 0 is a pole")
        return _to_fraction(self.num(tv) / d * tv ** self.shift)

    def laurent_num(self) -> dict[int, Fraction]:
        return {self.shift + i: _to_fraction(c) for i, c in enumerate(self.num.coeffs()) if c != 0}

    def laurent_den(self) -> dict[int, Fraction]:
        return {i: _to_fraction(c) for i, c in enumerate(self.den.coeffs()) if c != 0}

    def t_degree_span(self) -> tuple[int, int]:
        """(lowest, highest) t-exponent of numerator and denominator combined."""
        lo = min(self.shift, 0)
        hi = max(self.shift + max(self.num.degree(), 0), max(self.den.degree(), 0))
        return lo, hi

    # -- rendering ---------------------------------------------------------------
    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        num = _render_laurent(self.laurent_num())
        if self.den.degree() == 0:
            return num
        den = _render_laurent(self.laurent_den())
        return f"({num})/({den})"

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"


def _canonicalize(shift: int, num: fmpq_poly, den: fmpq_poly):
    if den.degree() < 0:
        raise ZeroDivisionError("zero denominator")
    if num.degree() < 0:
        return 0, _ZERO_POLY, _ONE_POLY
    v = _valuation(num)
    w = _valuation(den)
    num = _drop_low(num, v)
    den = _drop_low(den, w)
    shift += v - w
    if den.degree() > 0:
        g = num.gcd(den)
        if g.degree() > 0:
            num = num // g
            den = den // g
    c = den[0]
    if c != 1:
        num = num / c
        den = den / c
    return shift, num, den


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction, fmpq)):
        return Scalar.const(x)
    return NotImplemented


def _render_coeff_power(c: Fraction, e: int) -> str:
    if e == 0:
        power = ""
    elif e % 2 == 0:
        k = e // 2
        power = "q" if k == 1 else f"q^{k}" if k > 0 else f"q^({k})"
    else:
        power = f"q^({e}/2)"
    mag = abs(c)
    if not power:
        body = str(mag)
    elif mag == 1:
        body = power
    else:
        body = f"{mag}*{power}"
    return ("-" if c < 0 else "+", body)


def _render_laurent(terms: Mapping[int, Fraction]) -> str:
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, reverse=True):
        sign, body = _render_coeff_power(terms[e], e)
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


ZERO = Scalar(0, _ZERO_POLY, _ONE_POLY, _canonical=True)
ONE = Scalar(0, _ONE_POLY, _ONE_POLY, _canonical=True)
Scalar.ZERO = ZERO
Scalar.ONE = ONE


def t_pow(k: int) -> Scalar:
    return Scalar(int(k), _ONE_POLY, _ONE_POLY, _canonical=True)


def q_pow(e) -> Scalar:
    """``q**e`` for an integer or half-integer ``e``."""
    e2 = Fraction(e) * 2
    if e2.denominator != 1:
        raise ValueError(f"q**{e} is not a Laurent monomial in t")
    return t_pow(int(e2))


def qnum(n: int) -> Scalar:
    """The q-number ``(q**n - q**-n) / (q - q**-1)``."""
    if n == 0:
        return ZERO
    if n < 0:
        return -qnum(-n)
    return Scalar.from_laurent({2 * (n - 1 - 2 * j): 1 for j in range(n)})


def qfact(n: int) -> Scalar:
    if n < 0:
        raise ValueError("q-factorial of a negative integer")
    result = ONE
    for m in range(2, n + 1):
        result = result * qnum(m)
    return result


def kappa() -> Scalar:
    """``q - q**-1``."""
    return Scalar.from_laurent({2: 1, -2: -1})


def scalar_normalize(num: Mapping[int, object], den: Mapping[int, object]) -> Scalar:
    """Canonical scalar ``num/den`` from Laurent coefficient maps ``{t-exponent: coeff}``."""
    d = Scalar.from_laurent(den)
    if d.is_zero():
        raise ZeroDivisionError("zero denominator")
    return Scalar.from_laurent(num) / d


# -- parsing ----------------------------------------------------------------

_ALLOWED_BIN = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def parse_scalar(text: str) -> Scalar:
    """Parse the rendering grammar of :class:`Scalar` (``q``, ``t``, rationals, ``+-*/^``)."""
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc
    return _eval_node(tree.body, text)


def _const_value(node, text) -> Fraction:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _const_value(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Div, ast.Add, ast.Sub, ast.Mult)):
        a = _const_value(node.left, text)
        b = _const_value(node.right, text)
        if isinstance(node.op, ast.Div):
            return a / b
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        return a * b
    raise ValueError(f"non-constant exponent in {text!r}")


def _eval_node(node, text) -> Scalar:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int) and not isinstance(node.value, bool):
            return Scalar.const(node.value)
        raise ValueError(f"unsupported literal {node.value!r} in {text!r}")
    if isinstance(node, ast.Name):
        if node.id == "q":
            return t_pow(2)
        if node.id == "t":
            return t_pow(1)
        raise ValueError(f"unknown symbol {node.id!r} in {text!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BIN):
        if isinstance(node.op, ast.Pow):
            e = _const_value(node.right, text)
            if isinstance(node.left, ast.Name) and node.left.id in ("q", "t"):
                scale = 2 if node.left.id == "q" else 1
                k = e * scale
                if k.denominator != 1:
                    raise ValueError(f"exponent {e} not representable in t in {text!r}")
                return t_pow(int(k))
            if e.denominator != 1:
                raise ValueError(f"fractional power of a compound expression in {text!r}")
            return _eval_node(node.left, text) ** int(e)
        a = _eval_node(node.left, text)
        b = _eval_node(node.right, text)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        return a / b
    raise ValueError(f"cannot parse {text!r}")


# -- spectral polynomials ---------------------------------------------------


class SpectralPoly:
    """Laurent polynomial in spectral slots ``zeta_1..zeta_k`` over :class:`Scalar`.

    ``terms`` maps integer exponent tuples (one entry per slot) to nonzero
    scalars.  Instances are treated as immutable.
    """

    __slots__ = ("terms", "nslots", "_hash")

    def __init__(self, terms: Mapping[tuple, Scalar], nslots: int):
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        self.nslots = nslots
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nslots: int) -> "SpectralPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.nslots = nslots
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c, nslots: int = 1) -> "SpectralPoly":
        c = Scalar.const(c) if not isinstance(c, Scalar) else c
        if c.is_zero():
            return cls._raw({}, nslots)
        return cls._raw({(0,) * nslots: c}, nslots)

    @classmethod
    def monomial(cls, c, exps: Sequence[int]) -> "SpectralPoly":
        c = Scalar.const(c) if not isinstance(c, Scalar) else c
        exps = tuple(int(e) for e in exps)
        if c.is_zero():
            return cls._raw({}, len(exps))
        return cls._raw({exps: c}, len(exps))

    @classmethod
    def zeta(cls, exp: int, slot: int = 0, nslots: int = 1, coeff=1) -> "SpectralPoly":
        e = [0] * nslots
        e[slot] = exp
        return cls.monomial(coeff, e)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def monomial_parts(self) -> tuple[tuple, Scalar]:
        if len(self.terms) != 1:
            raise ValueError(f"{self} is not a monomial")
        (e, c), = self.terms.items()
        return e, c

    def constant_scalar(self) -> Scalar:
        """The scalar value of a constant (zeta-free) polynomial."""
        if not self.terms:
            return ZERO
        e, c = self.monomial_parts()
        if any(e):
            raise ValueError(f"{self} depends on the spectral parameters")
        return c

    def _coerce(self, other):
        if isinstance(other, SpectralPoly):
            if other.nslots != self.nslots:
                raise ValueError("spectral slot count mismatch")
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return SpectralPoly.const(other, self.nslots)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return SpectralPoly._raw(out, self.nslots)

    __radd__ = __add__

    def __neg__(self):
        return SpectralPoly._raw({e: -c for e, c in self.terms.items()}, self.nslots)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            if not isinstance(other, Scalar):
                other = Scalar.const(other)
            if other.is_zero():
                return SpectralPoly._raw({}, self.nslots)
            return SpectralPoly._raw({e: c * other for e, c in self.terms.items()}, self.nslots)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                if e in out:
                    s = out[e] + p
                    if s.is_zero():
                        del out[e]
                    else:
                        out[e] = s
                else:
                    out[e] = p
        return SpectralPoly._raw(out, self.nslots)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = SpectralPoly.const(1, self.nslots)
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> "SpectralPoly":
        """Inverse of a unit (a monomial with nonzero coefficient)."""
        e, c = self.monomial_parts()
        return SpectralPoly._raw({tuple(-x for x in e): c.inverse()}, self.nslots)

    def __truediv__(self, other):
        if isinstance(other, SpectralPoly):
            return self * other.inverse()
        return self * Scalar.const(other).inverse() if not isinstance(other, Scalar) else self * other.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (Scalar, int, Fraction)):
            other = SpectralPoly.const(other, self.nslots)
        if not isinstance(other, SpectralPoly):
            return False
        return self.nslots == other.nslots and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nslots, frozenset(self.terms.items())))
        return self._hash

    def embed(self, nslots: int, offset: int) -> "SpectralPoly":
        """Place this polynomial's slots at ``offset..`` inside ``nslots`` slots."""
        out = {}
        for e, c in self.terms.items():
            full = [0] * nslots
            full[offset: offset + len(e)] = e
            out[tuple(full)] = c
        return SpectralPoly._raw(out, nslots)

    def exponents(self) -> list[tuple]:
        return sorted(self.terms)

    def eval_at(self, t, zetas: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c.eval_at(t)
            for z, k in zip(zetas, e):
                v *= Fraction(z) ** k
            total += v
        return total

    def collapse(self, step: int, shifts: Sequence[int]) -> "SpectralPoly":
        """Merge all slots into one, substituting ``zeta_a**step = t**shifts[a] * zeta**step``.

        Every slot exponent must be a multiple of ``step``.
        """
        out: dict = {}
        for e, c in self.terms.items():
            tk = 0
            for a, k in enumerate(e):
                if k % step:
                    raise ValueError(f"slot exponent {k} is not a multiple of {step}")
                tk += shifts[a] * (k // step)
            key = (sum(e),)
            val = c * t_pow(tk)
            out[key] = out[key] + val if key in out else val
        return SpectralPoly(out, 1)

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = ["zeta"] if self.nslots == 1 else [f"zeta{i + 1}" for i in range(self.nslots)]
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" if k > 0 else f"{n}^({k})"
                for n, k in zip(names, e) if k
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"SpectralPoly({self.render()!r})"


# -- truncated series in u ----------------------------------------------------


class USeries:
    """Truncated power series ``sum_{n <= order} c_n u**n``.

    Coefficients may be scalars, :class:`SpectralPoly` or operators; the only
    requirement is ring arithmetic and multiplication by integers/fractions.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _zero(self):
        return self.coeffs[0] * 0

    def _check(self, other: "USeries") -> None:
        if not isinstance(other, USeries):
            raise TypeError("expected USeries")
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "USeries") -> "USeries":
        self._check(other)
        return USeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "USeries") -> "USeries":
        self._check(other)
        return USeries(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "USeries":
        return USeries(-a for a in self.coeffs)

    def __mul__(self, other) -> "USeries":
        if not isinstance(other, USeries):
            return USeries(a * other for a in self.coeffs)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(len(a)):
            acc = a[0] * b[n]
            for k in range(1, n + 1):
                acc = acc + a[k] * b[n - k]
            out.append(acc)
        return USeries(out)

    def scale(self, c) -> "USeries":
        return USeries(c * a for a in self.coeffs)

    def substitute(self, c) -> "USeries":
        """Series of ``f(c*u)``."""
        out = [self.coeffs[0]]
        p = None
        for a in self.coeffs[1:]:
            p = c if p is None else p * c
            out.append(a * p)
        return USeries(out)

    def inverse(self) -> "USeries":
        a = self.coeffs
        try:
            b0 = a[0].inverse()
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError("series constant term is not invertible") from exc
        b = [b0]
        for n in range(1, len(a)):
            acc = a[1] * b[n - 1]
            for k in range(2, n + 1):
                acc = acc + a[k] * b[n - k]
            b.append(-(b0 * acc))
        return USeries(b)

    def _powers_sum(self, weights) -> "USeries":
        # sum_k weights(k) * x**k for x = self with zero constant term
        zero = self._zero()
        if not _is_zero(self.coeffs[0]):
            raise ValueError("series must have zero constant term")
        total = [zero] * len(self.coeffs)
        power = self
        for k in range(1, len(self.coeffs)):
            w = weights(k)
            total = [t + p * w for t, p in zip(total, power.coeffs)]
            power = power * self
        return USeries(total)

    def log1p(self) -> "USeries":
        """``log(1 + x)`` for a series ``x`` with zero constant term."""
        return self._powers_sum(lambda k: Fraction((-1) ** (k + 1), k))

    def expm1(self) -> "USeries":
        """``exp(x) - 1`` for a series ``x`` with zero constant term."""
        fact = [1]
        for k in range(1, len(self.coeffs) + 1):
            fact.append(fact[-1] * k)
        return self._powers_sum(lambda k: Fraction(1, fact[k]))

    def __eq__(self, other) -> bool:
        return isinstance(other, USeries) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return "USeries([" + ", ".join(str(c) for c in self.coeffs) + "])"

    @classmethod
    def expand_rational(cls, num: Sequence, den: Sequence, order: int) -> "USeries":
        """Series of ``num(u)/den(u)`` (coefficient lists, lowest power first)."""
        zero = den[0] * 0
        pad = lambda p: [p[i] if i < len(p) else zero for i in range(order + 1)]
        return cls(pad(list(num))) * cls(pad(list(den))).inverse()


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def series_ops(a: USeries, b: USeries | None, kind: str) -> USeries:
    """Dispatch helper over ``add | mul | inverse | log1p | expm1``."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inverse":
        return a.inverse()
    if kind == "log1p":
        return a.log1p()
    if kind == "expm1":
        return a.expm1()
    raise ValueError(f"unknown series operation {kind!r}")

