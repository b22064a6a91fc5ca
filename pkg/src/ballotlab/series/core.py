"""
Exact truncated power series in the variables x, y, t, z.

A :class:`Series` stores rational coefficients for monomials whose exponents
lie inside a :class:`TruncationBox`.  Truncating at a box is a ring
homomorphism (the discarded monomials form an ideal), so every coefficient
inside the box is exact no matter how many operations were chained.

Inversion, square roots, exp and log use recurrences over the total-degree
grading; the Euler operator ``sum_v e_v d/dv`` is a derivation, which is all
those recurrences need.

>>> box = TruncationBox(3, 0, 0, 0)
>>> x = Series.var("x", box)
>>> print(exp_series(x).dump(), end="")
# box nx=3 ny=0 nt=0 nz=0 guard=4
0 0 0 0 1/1
1 0 0 0 1/1
2 0 0 0 1/2
3 0 0 0 1/6
"""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "VARIABLES", "Monomial", "TruncationBox", "Series", "InexactDivisionError",
    "add", "sub", "mul", "div_exact", "inverse", "sqrt_series", "exp_series",
    "ln1p_series", "integrate_x", "derivative_x", "twist_xt", "reflect_t",
    "reflect_tz", "D_trunc", "scale_x", "specialize", "coeff", "egf_count",
    "from_egf_table", "load_dump",
]

VARIABLES = ("x", "y", "t", "z")
Monomial = tuple[int, int, int, int]
Coefficient = Union[int, Fraction]

_ZERO: Monomial = (0, 0, 0, 0)


class InexactDivisionError(ArithmeticError):
    """The quotient is not a power series, or the box has too little guard."""


@dataclass(frozen=True)
class TruncationBox:
    """Per-variable degree bounds plus guard orders for valuation-shifting steps."""
    nx: int = 10
    ny: int = 10
    nt: int = 10
    nz: int = 10
    guard: int = 4

    def __post_init__(self):
        if min(self.bounds) < 0 or self.guard < 0:
            raise ValueError(f"box bounds and guard must be nonnegative: {self}")

    @property
    def bounds(self) -> Monomial:
        return (self.nx, self.ny, self.nt, self.nz)

    def admits(self, m: Monomial) -> bool:
        return all(e <= b for e, b in zip(m, self.bounds))

    def meet(self, other: TruncationBox) -> TruncationBox:
        return TruncationBox(*(min(a, b) for a, b in zip(self.bounds, other.bounds)),
                             guard=min(self.guard, other.guard))

    def widened(self, variables: str = "xytz", extra: int | None = None) -> TruncationBox:
        """Bounds raised by ``extra`` (default: the guard) in the named variables."""
        extra = self.guard if extra is None else extra
        return dataclasses.replace(self, **{f"n{v}": getattr(self, f"n{v}") + extra
                                            for v in variables})

    def shifted(self, m: Monomial) -> TruncationBox:
        """Bounds lowered by ``m``: what remains known after dividing by ``x^m``."""
        new = tuple(b - e for b, e in zip(self.bounds, m))
        if min(new) < 0:
            raise InexactDivisionError(
                f"dividing by monomial {m} exhausts the box {self.bounds}; raise the guard")
        return TruncationBox(*new, guard=self.guard)

    def replace(self, **kw) -> TruncationBox:
        return dataclasses.replace(self, **kw)

    def header(self) -> str:
        return (f"# box nx={self.nx} ny={self.ny} nt={self.nt} nz={self.nz} "
                f"guard={self.guard}")


DEFAULT_BOX = TruncationBox()


# --- packed monomial kernel -------------------------------------------------
# Four 16-bit fields; exponents stay below 2**15 so a carry into the top bit
# of a field signals that the bound was exceeded.

_W = 16
_TOP = 1 << (_W - 1)
_MASK = sum(_TOP << (_W * i) for i in range(4))


def _pack(m: Monomial) -> int:
    ex, ey, et, ez = m
    return (((ex << _W | ey) << _W) | et) << _W | ez


def _unpack(k: int) -> Monomial:
    f = (1 << _W) - 1
    return (k >> 3 * _W & f, k >> 2 * _W & f, k >> _W & f, k & f)


def _offset(bounds: Monomial) -> int:
    if max(bounds) >= _TOP - 1:
        raise ValueError(f"bounds {bounds} too large")
    return _pack(tuple(_TOP - 1 - b for b in bounds))


def _degree(k: int) -> int:
    return sum(_unpack(k))


def _mul_into(acc: dict, p: Mapping[int, Coefficient], q: Mapping[int, Coefficient],
              offset: int) -> None:
    q_items = list(q.items())
    for ka, ca in p.items():
        for kb, cb in q_items:
            k = ka + kb
            if (k + offset) & _MASK:
                continue
            acc[k] = acc.get(k, 0) + ca * cb


def _clean(d: dict) -> dict:
    return {k: c for k, c in d.items() if c}


def _scale(d: Mapping[int, Coefficient], s: Coefficient) -> dict:
    return {k: c * s for k, c in d.items()}


def _graded(d: Mapping[int, Coefficient], max_degree: int) -> list[dict]:
    parts: list[dict] = [{} for _ in range(max_degree + 1)]
    for k, c in d.items():
        parts[_degree(k)][k] = c
    return parts


def _frac(c: Coefficient, n: int) -> Coefficient:
    if isinstance(c, int):
        return Fraction(c, n)
    return c / n


# --- the series type --------------------------------------------------------

class Series:
    """An exact truncated series; immutable after construction."""

    __slots__ = ("_c", "box")

    def __init__(self, coeffs: Mapping[Monomial, Rational] | None = None,
                 box: TruncationBox = DEFAULT_BOX):
        self.box = box
        packed = {}
        for m, c in (coeffs or {}).items():
            m = tuple(m)
            if len(m) != 4 or min(m) < 0:
                raise ValueError(f"bad exponent vector {m!r}")
            if c and box.admits(m):
                packed[_pack(m)] = _exact(c)
        self._c = packed

    @classmethod
    def _raw(cls, packed: dict, box: TruncationBox) -> Series:
        s = object.__new__(cls)
        s.box = box
        s._c = packed
        return s

    @classmethod
    def constant(cls, c: Rational, box: TruncationBox = DEFAULT_BOX) -> Series:
        return cls({_ZERO: c}, box)

    @classmethod
    def var(cls, name: str, box: TruncationBox = DEFAULT_BOX) -> Series:
        return cls.monomial(box=box, **{name: 1})

    @classmethod
    def monomial(cls, c: Rational = 1, box: TruncationBox = DEFAULT_BOX,
                 **exps: int) -> Series:
        return cls({_exponents(exps): c}, box)

    @classmethod
    def polynomial(cls, terms: Iterable[tuple[Monomial, Rational]],
                   box: TruncationBox = DEFAULT_BOX) -> Series:
        acc: dict = {}
        for m, c in terms:
            acc[tuple(m)] = acc.get(tuple(m), 0) + c
        return cls(acc, box)

    # -- inspection --

    @property
    def coeffs(self) -> dict[Monomial, Fraction]:
        return {_unpack(k): Fraction(c) for k, c in self._c.items()}

    def items(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.coeffs.items())

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def constant_term(self) -> Fraction:
        return Fraction(self._c.get(0, 0))

    def coeff(self, exps: Monomial | Mapping[str, int]) -> Fraction:
        m = _exponents(exps) if isinstance(exps, Mapping) else tuple(exps)
        if not self.box.admits(m):
            raise ValueError(f"monomial {m} lies outside the box {self.box.bounds}")
        return Fraction(self._c.get(_pack(m), 0))

    def x_row(self, n: int) -> dict[tuple[int, int, int], Fraction]:
        """Coefficients of ``x^n`` as a map from (e_y, e_t, e_z)."""
        return {m[1:]: c for m, c in self.coeffs.items() if m[0] == n}

    def max_degree(self) -> int:
        return sum(self.box.bounds)

    def restrict(self, box: TruncationBox) -> Series:
        box = self.box.meet(box).replace(guard=box.guard)
        off = _offset(box.bounds)
        return Series._raw({k: c for k, c in self._c.items() if not (k + off) & _MASK}, box)

    def with_box(self, box: TruncationBox) -> Series:
        """Reinterpret under ``box``; only valid when ``box`` does not exceed the current one."""
        if not all(a <= b for a, b in zip(box.bounds, self.box.bounds)):
            raise ValueError(f"cannot enlarge box {self.box.bounds} to {box.bounds}")
        return self.restrict(box)

    def map_monomials(self, f: Callable[[Monomial], Monomial | None],
                      box: TruncationBox | None = None) -> Series:
        """Apply an exponent substitution; ``f`` returning None drops the term."""
        box = box or self.box
        out: dict = {}
        for k, c in self._c.items():
            m = f(_unpack(k))
            if m is None:
                continue
            if min(m) < 0:
                raise ValueError(f"substitution produced negative exponents {m}")
            if box.admits(m):
                key = _pack(m)
                out[key] = out.get(key, 0) + c
        return Series._raw(_clean(out), box)

    def dump(self) -> str:
        lines = [self.box.header()]
        for m, c in self.items():
            lines.append(f"{m[0]} {m[1]} {m[2]} {m[3]} {c.numerator}/{c.denominator}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*{_fmt(m)}" for m, c in self.items()[:8])
        more = " + ..." if len(self) > 8 else ""
        return f"Series({terms or '0'}{more}; box={self.box.bounds})"

    # -- ring operations --

    def _coerce(self, other) -> Series | None:
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Fraction)):
            return Series.constant(other, self.box)
        return None

    def __add__(self, other) -> Series:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other) -> Series:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return sub(self, other)

    def __rsub__(self, other) -> Series:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return sub(other, self)

    def __neg__(self) -> Series:
        return Series._raw({k: -c for k, c in self._c.items()}, self.box)

    def __mul__(self, other) -> Series:
        if isinstance(other, (int, Fraction)):
            if not other:
                return Series._raw({}, self.box)
            return Series._raw(_scale(self._c, other), self.box)
        if isinstance(other, Series):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> Series:
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, Series):
            return div_exact(self, other)
        return NotImplemented

    def __rtruediv__(self, other) -> Series:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return div_exact(other, self)

    def __pow__(self, k: int) -> Series:
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Series.constant(1, self.box)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Series.constant(other, self.box)
        if not isinstance(other, Series):
            return NotImplemented
        return self.box.bounds == other.box.bounds and self._c == other._c

    __hash__ = None  # type: ignore[assignment]

    def agrees_with(self, other: Series, box: TruncationBox | None = None) -> bool:
        """Equality of all coefficients inside ``box`` (default: the common box)."""
        box = box or self.box.meet(other.box)
        return self.restrict(box)._c == other.restrict(box)._c

    def differences(self, other: Series, box: TruncationBox | None = None) -> list:
        """Monomials inside ``box`` where the two series disagree, with both values."""
        box = box or self.box.meet(other.box)
        a, b = self.restrict(box).coeffs, other.restrict(box).coeffs
        return [(m, a.get(m, Fraction(0)), b.get(m, Fraction(0)))
                for m in sorted(set(a) | set(b)) if a.get(m) != b.get(m)]


def _exact(c) -> Coefficient:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def _exponents(exps: Mapping[str, int]) -> Monomial:
    bad = set(exps) - set(VARIABLES)
    if bad:
        raise KeyError(f"unknown variable(s) {sorted(bad)}")
    return tuple(exps.get(v, 0) for v in VARIABLES)


def _fmt(m: Monomial) -> str:
    parts = [f"{v}^{e}" if e > 1 else v for v, e in zip(VARIABLES, m) if e]
    return "*".join(parts) or "1"


# --- ring operations --------------------------------------------------------

def add(a: Series, b: Series) -> Series:
    box = a.box.meet(b.box)
    off = _offset(box.bounds)
    out = {k: c for k, c in a._c.items() if not (k + off) & _MASK}
    for k, c in b._c.items():
        if not (k + off) & _MASK:
            out[k] = out.get(k, 0) + c
    return Series._raw(_clean(out), box)


def sub(a: Series, b: Series) -> Series:
    return add(a, -b)


def mul(a: Series, b: Series) -> Series:
    box = a.box.meet(b.box)
    acc: dict = {}
    small, large = (a._c, b._c) if len(a._c) <= len(b._c) else (b._c, a._c)
    _mul_into(acc, small, large, _offset(box.bounds))
    return Series._raw(_clean(acc), box)


def _inverse_packed(d: Mapping[int, Coefficient], box: TruncationBox) -> dict:
    c0 = d.get(0, 0)
    if not c0:
        raise InexactDivisionError("series with zero constant term has no inverse")
    inv0 = 1 / Fraction(c0)
    off = _offset(box.bounds)
    maxdeg = sum(box.bounds)
    parts = _graded(d, maxdeg)
    q: list[dict] = [{0: _exact(inv0)}] + [{} for _ in range(maxdeg)]
    for deg in range(1, maxdeg + 1):
        acc: dict = {}
        for j in range(1, deg + 1):
            if parts[j] and q[deg - j]:
                _mul_into(acc, parts[j], q[deg - j], off)
        q[deg] = _clean(_scale(acc, -inv0))
    return {k: c for part in q for k, c in part.items()}


def inverse(b: Series) -> Series:
    return Series._raw(_inverse_packed(b._c, b.box), b.box)


def div_exact(a: Series, b: Series) -> Series:
    """
    The quotient ``q`` with ``q * b == a``.

    ``b`` is split as ``x^m * b'`` with ``m`` the largest monomial dividing
    every term of ``b``; ``b'`` must then have a nonzero constant term and
    every term of ``a`` must be divisible by ``x^m``.  The quotient is only
    known on the box lowered by ``m``, which is what the guard band pays for.
    """
    if not b:
        raise ZeroDivisionError("division by the zero series")
    mons = [_unpack(k) for k in b._c]
    m = tuple(min(e[i] for e in mons) for i in range(4))
    box = a.box.meet(b.box).shifted(m)
    km = _pack(m)
    for k in a._c:
        if any(e < f for e, f in zip(_unpack(k), m)):
            raise InexactDivisionError(
                f"term {_fmt(_unpack(k))} of the numerator is not divisible by {_fmt(m)}")
    off = _offset(box.bounds)
    num = {k - km: c for k, c in a._c.items() if not (k - km + off) & _MASK}
    den = {k - km: c for k, c in b._c.items() if not (k - km + off) & _MASK}
    if 0 not in den:
        raise InexactDivisionError(
            f"denominator has no invertible part after removing {_fmt(m)}")
    acc: dict = {}
    _mul_into(acc, num, _inverse_packed(den, box), off)
    return Series._raw(_clean(acc), box)


def _rational_sqrt(c: Fraction) -> Fraction:
    if c < 0:
        raise ValueError(f"constant term {c} is negative")
    p, q = c.numerator, c.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp != p or rq * rq != q:
        raise ValueError(f"constant term {c} is not the square of a rational")
    return Fraction(rp, rq)


def sqrt_series(a: Series) -> Series:
    """Principal square root: the root whose constant term is positive."""
    if not a:
        return a
    s0 = _rational_sqrt(Fraction(a._c.get(0, 0)))
    if not s0:
        raise ValueError("square root of a series with zero constant term is not supported")
    box = a.box
    off = _offset(box.bounds)
    maxdeg = sum(box.bounds)
    parts = _graded(a._c, maxdeg)
    half_inv = 1 / (2 * s0)
    s: list[dict] = [{0: _exact(s0)}] + [{} for _ in range(maxdeg)]
    for deg in range(1, maxdeg + 1):
        acc = dict(parts[deg])
        cross: dict = {}
        for j in range(1, deg):
            if s[j] and s[deg - j]:
                _mul_into(cross, s[j], s[deg - j], off)
        for k, c in cross.items():
            acc[k] = acc.get(k, 0) - c
        s[deg] = _clean(_scale(acc, half_inv))
    return Series._raw({k: c for part in s for k, c in part.items()}, box)


def _require_zero_constant(a: Series, what: str) -> None:
    if a._c.get(0):
        raise ValueError(f"{what} needs a series with zero constant term")


def exp_series(a: Series) -> Series:
    """``exp(a)`` for ``a`` with zero constant term."""
    _require_zero_constant(a, "exp_series")
    box = a.box
    off = _offset(box.bounds)
    maxdeg = sum(box.bounds)
    parts = _graded(a._c, maxdeg)
    weighted = [_scale(p, j) for j, p in enumerate(parts)]
    f: list[dict] = [{0: 1}] + [{} for _ in range(maxdeg)]
    for deg in range(1, maxdeg + 1):
        acc: dict = {}
        for j in range(1, deg + 1):
            if weighted[j] and f[deg - j]:
                _mul_into(acc, weighted[j], f[deg - j], off)
        f[deg] = _clean({k: _frac(c, deg) for k, c in acc.items()})
    return Series._raw({k: c for part in f for k, c in part.items()}, box)


def ln1p_series(a: Series) -> Series:
    """``log(1 + a)`` for ``a`` with zero constant term."""
    _require_zero_constant(a, "ln1p_series")
    box = a.box
    off = _offset(box.bounds)
    maxdeg = sum(box.bounds)
    parts = _graded(a._c, maxdeg)
    weighted: list[dict] = [{} for _ in range(maxdeg + 1)]  # j * g_j
    g: list[dict] = [{} for _ in range(maxdeg + 1)]
    for deg in range(1, maxdeg + 1):
        acc: dict = {}
        for j in range(1, deg):
            if weighted[j] and parts[deg - j]:
                _mul_into(acc, weighted[j], parts[deg - j], off)
        cur = dict(parts[deg])
        for k, c in acc.items():
            cur[k] = cur.get(k, 0) - _frac(c, deg)
        g[deg] = _clean(cur)
        weighted[deg] = _scale(g[deg], deg)
    return Series._raw({k: c for part in g for k, c in part.items()}, box)


# --- calculus and substitutions ---------------------------------------------

def integrate_x(a: Series) -> Series:
    """Antiderivative in x vanishing at x = 0."""
    out = {}
    for k, c in a._c.items():
        ex, ey, et, ez = _unpack(k)
        if ex + 1 <= a.box.nx:
            out[_pack((ex + 1, ey, et, ez))] = _frac(c, ex + 1)
    return Series._raw(out, a.box)


def derivative_x(a: Series) -> Series:
    """Partial derivative in x; the x bound drops by one."""
    box = a.box.replace(nx=max(a.box.nx - 1, 0))
    out = {}
    for k, c in a._c.items():
        ex, ey, et, ez = _unpack(k)
        if ex:
            out[_pack((ex - 1, ey, et, ez))] = c * ex
    return Series._raw(out, box).restrict(box)


def twist_xt(a: Series) -> Series:
    """
    The substitution ``x -> x t``: ``x^n y^k t^d -> x^n y^k t^(d+n)``.

    Terms pushed past the t bound are truncated; the substitution maps the
    truncation ideal into itself, so in-box coefficients stay exact.
    """
    return a.map_monomials(lambda m: (m[0], m[1], m[2] + m[0], m[3]))


def reflect_t(a: Series) -> Series:
    """
    ``x^n y^k t^d -> x^n y^k t^(n-d)``, i.e. ``B(x, y, t) -> B(x t, y, 1/t)``
    on series whose t-degree never exceeds the x-degree.
    """
    if a.box.nt < a.box.nx:
        raise ValueError("reflect_t needs nt >= nx so no reflected term was truncated away")

    def f(m: Monomial) -> Monomial:
        if m[2] > m[0]:
            raise ValueError(f"reflect_t: term {_fmt(m)} has t-degree above its x-degree")
        return (m[0], m[1], m[0] - m[2], m[3])

    return a.map_monomials(f)


def reflect_tz(a: Series) -> Series:
    """
    ``x^n y^k t^d -> x^n y^k z^(n-2d) t^(n-d)``, i.e. ``B(x z t, y, 1/(z^2 t))``
    for a series in x, y, t with ``2 d <= n`` on every term.
    """
    if a.box.nt < a.box.nx or a.box.nz < a.box.nx:
        raise ValueError("reflect_tz needs nt >= nx and nz >= nx")

    def f(m: Monomial) -> Monomial:
        if m[3]:
            raise ValueError("reflect_tz expects a series free of z")
        if 2 * m[2] > m[0]:
            raise ValueError(f"reflect_tz: term {_fmt(m)} has 2*t-degree above its x-degree")
        return (m[0], m[1], m[0] - m[2], m[0] - 2 * m[2])

    return a.map_monomials(f)


def D_trunc(a: Series, var1: str = "t", var2: str = "x") -> Series:
    """Keep exactly the terms whose ``var1`` exponent ``e1`` satisfies ``2 e1 <= e2 - 1``."""
    if var1 == var2:
        raise ValueError("D_trunc needs two distinct variables")
    i, j = VARIABLES.index(var1), VARIABLES.index(var2)
    return Series._raw({k: c for k, c in a._c.items()
                        if 2 * _unpack(k)[i] <= _unpack(k)[j] - 1}, a.box)


def scale_x(a: Series, factor: Rational) -> Series:
    """The substitution ``x -> factor * x``."""
    factor = Fraction(factor)
    return Series._raw(_clean({k: c * factor ** _unpack(k)[0] for k, c in a._c.items()}),
                       a.box)


def specialize(a: Series, var: str, value: Rational) -> Series:
    """
    Set ``var`` to a constant.  Only meaningful when the series is polynomial
    in ``var`` within the box, as it is for every x-row of a finite count.
    """
    i = VARIABLES.index(var)
    value = Fraction(value)
    box = a.box.replace(**{f"n{var}": 0})
    out: dict = {}
    for k, c in a._c.items():
        m = list(_unpack(k))
        e, m[i] = m[i], 0
        key = _pack(tuple(m))
        out[key] = out.get(key, 0) + c * value ** e
    return Series._raw(_clean({k: _exact(c) for k, c in out.items()}), box)


# --- coefficient access -----------------------------------------------------

def coeff(a: Series, exps: Monomial | Mapping[str, int]) -> Fraction:
    return a.coeff(exps)


def egf_count(a: Series, exps: Monomial | Mapping[str, int]) -> int:
    """``e_x! * coefficient``, which must be an integer for a counting series."""
    m = _exponents(exps) if isinstance(exps, Mapping) else tuple(exps)
    value = a.coeff(m) * math.factorial(m[0])
    if value.denominator != 1:
        raise ArithmeticError(f"{m[0]}! * [{_fmt(m)}] = {value} is not an integer")
    return value.numerator


def from_egf_table(counts: Mapping[tuple[int, ...], int], variables: str,
                   box: TruncationBox) -> Series:
    """
    Build ``sum count * x^n / n! * (other variables)`` from a map whose keys
    are ``(n, e_1, e_2, ...)`` aligned with ``variables`` (e.g. ``"yt"``).
    """
    coeffs: dict = {}
    for key, c in counts.items():
        n, rest = key[0], key[1:]
        m = [n, 0, 0, 0]
        for v, e in zip(variables, rest):
            m[VARIABLES.index(v)] = e
        coeffs[tuple(m)] = coeffs.get(tuple(m), 0) + Fraction(c, math.factorial(n))
    return Series(coeffs, box)


def load_dump(text: str) -> Series:
    """Parse the output of :meth:`Series.dump`."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("# box"):
        raise ValueError("missing box header")
    fields = dict(f.split("=") for f in lines[0].split()[2:])
    box = TruncationBox(int(fields["nx"]), int(fields["ny"]), int(fields["nt"]),
                        int(fields["nz"]), guard=int(fields["guard"]))
    coeffs = {}
    for ln in lines[1:]:
        *exps, value = ln.split()
        coeffs[tuple(int(e) for e in exps)] = Fraction(value)
    return Series(coeffs, box)
