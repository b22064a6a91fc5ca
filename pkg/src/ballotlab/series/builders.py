"""
Closed-form generating functions, each built from exact series arithmetic.

Every builder takes the box the caller wants and returns a series exact on
that box.  Builders that divide by a monomial work on a box widened by the
guard in y and t and raise :class:`InexactDivisionError` if the guard runs
out before the requested box is reached.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from ..permcore import eulerian
from .core import (
    D_trunc, InexactDivisionError, Series, TruncationBox, derivative_x, div_exact,
    exp_series, ln1p_series, sqrt_series,
)

__all__ = [
    "gf_eulerian", "gf_ballot_count", "gf_B_des", "gf_B_des_via_D", "gf_O",
    "gf_B_pk", "gf_P_pk", "gf_P_depth", "gf_uvw", "gf_P_pk_des", "gf_B_pk_des",
    "zhuang_rhs", "odd_part_exponent", "ode_residual_O", "BUILDERS",
]


def _finish(s: Series, box: TruncationBox) -> Series:
    if not all(a >= b for a, b in zip(s.box.bounds, box.bounds)):
        raise InexactDivisionError(
            f"guard {box.guard} too small: result only known on {s.box.bounds}, "
            f"requested {box.bounds}")
    return s.restrict(box)


def _vars(box: TruncationBox):
    return (Series.var("x", box), Series.var("y", box), Series.var("t", box),
            Series.var("z", box))


@lru_cache(maxsize=None)
def gf_eulerian(box: TruncationBox) -> Series:
    """E(x, t) = (e^((1-t)x) - 1) / (1 - t e^((1-t)x)), the n >= 1 Eulerian EGF."""
    x, _, t, _ = _vars(box)
    g = exp_series((1 - t) * x)
    return (g - 1) / (1 - t * g)


@lru_cache(maxsize=None)
def gf_ballot_count(box: TruncationBox) -> Series:
    """sqrt((1 + x) / (1 - x)), the EGF of the number of ballot permutations."""
    x = Series.var("x", box)
    return sqrt_series((1 + x) / (1 - x))


def odd_part_exponent(box: TruncationBox, var: str = "t", flip: bool = False) -> Series:
    """
    2 * sum_{k>=1} sum_{d<=k-1} E(2k, d) s^(d+1) x^(2k+1) / (2k+1)!  with s = ``var``.

    With ``flip`` the inner weight is ``E(2k, k-1-d) s^(2d+1)`` instead.
    """
    coeffs = {}
    idx = "xytz".index(var)
    for k in range(1, (box.nx - 1) // 2 + 1):
        for d in range(k):
            if flip:
                c, e = eulerian(2 * k, k - 1 - d), 2 * d + 1
            else:
                c, e = eulerian(2 * k, d), d + 1
            m = [2 * k + 1, 0, 0, 0]
            m[idx] = e
            coeffs[tuple(m)] = Fraction(2 * c, factorial(2 * k + 1))
    return Series(coeffs, box)


@lru_cache(maxsize=None)
def gf_B_des(box: TruncationBox) -> Series:
    """Descents over ballot permutations: exp(x + odd-part exponent)."""
    x = Series.var("x", box)
    return exp_series(x + odd_part_exponent(box))


@lru_cache(maxsize=None)
def gf_B_des_via_D(box: TruncationBox) -> Series:
    """The same series obtained as exp(D^{t,x} log(1 + (1 + t) E(x, t)))."""
    t = Series.var("t", box)
    return exp_series(D_trunc(ln1p_series((1 + t) * gf_eulerian(box)), "t", "x"))


@lru_cache(maxsize=None)
def gf_O(box: TruncationBox) -> Series:
    """Odd order permutations by M: exp(x + 2 sum E(2k,d) t^(d+1) x^(2k+1)/(2k+1)!)."""
    x = Series.var("x", box)
    return exp_series(x + odd_part_exponent(box))


def ode_residual_O(o: Series) -> Series:
    """
    dO/dx - O * (1 + 2t sum_{k>=1} sum_{d<=k-1} E(2k, d) t^d x^(2k) / (2k)!),
    on the box with the x bound lowered by one.
    """
    box = o.box.replace(nx=max(o.box.nx - 1, 0))
    coeffs = {(0, 0, 0, 0): 1}
    for k in range(1, box.nx // 2 + 1):
        for d in range(k):
            coeffs[(2 * k, 0, d + 1, 0)] = Fraction(2 * eulerian(2 * k, d), factorial(2 * k))
    rate = Series(coeffs, box)
    return derivative_x(o) - o.restrict(box) * rate


@lru_cache(maxsize=None)
def _cosh_sinh(box: TruncationBox) -> tuple[Series, Series]:
    # cosh(x s) and sinh(x s) / s with s = sqrt(1 - y), as honest power series
    y = Series.var("y", box)
    one_minus_y = 1 - y
    cosh, sinh = {}, {}
    power = Series.constant(1, box)
    for m in range(box.nx // 2 + 1):
        for (_, ey, _, _), c in power.coeffs.items():
            cosh[(2 * m, ey, 0, 0)] = c / factorial(2 * m)
            sinh[(2 * m + 1, ey, 0, 0)] = c / factorial(2 * m + 1)
        power = power * one_minus_y
    return Series(cosh, box), Series(sinh, box)


@lru_cache(maxsize=None)
def gf_B_pk(box: TruncationBox) -> Series:
    """
    Peaks over ballot permutations (peak variable y):
    sqrt((cosh + sinh/s) / (cosh - sinh/s)), the common sqrt(1-y) cancelled.
    """
    c, s = _cosh_sinh(box)
    return sqrt_series((c + s) / (c - s))


@lru_cache(maxsize=None)
def gf_P_pk(box: TruncationBox) -> Series:
    """Peaks over all permutations: cosh / (cosh - sinh/s)."""
    c, s = _cosh_sinh(box)
    return c / (c - s)


@lru_cache(maxsize=None)
def gf_P_depth(box: TruncationBox) -> Series:
    """
    Depth over all permutations (depth variable z):
    z/(1+z) + sqrt((1+x)/(1-x)) / (1+z) * exp(xz + flipped odd-part exponent in z).
    """
    x, _, _, z = _vars(box)
    inv = 1 / (1 + z)
    tail = exp_series(x * z + odd_part_exponent(box, var="z", flip=True))
    return z * inv + gf_ballot_count(box) * inv * tail


def _uv_wide(wide: TruncationBox) -> tuple[Series, Series]:
    _, y, t, _ = _vars(wide)
    root = sqrt_series((1 + t) ** 2 - 4 * y * t)
    u = div_exact(1 + t * t - 2 * y * t - (1 - t) * root, 2 * (1 - y) * t)
    v = div_exact((1 + t) ** 2 - 2 * y * t - (1 + t) * root, 2 * y * t)
    return u, v


def _w(x: Series, u: Series, v: Series) -> Series:
    return exp_series(x * (1 + u) * (1 - v) / (1 + u * v))


@lru_cache(maxsize=None)
def gf_uvw(box: TruncationBox) -> tuple[Series, Series, Series]:
    """
    u and v (series in y, t) from their radical formulas, with the principal
    square root, and w = exp(x (1+u)(1-v) / (1+uv)).
    """
    wide = box.widened("yt")
    u, v = _uv_wide(wide)
    x = Series.var("x", u.box.meet(v.box))
    w = _w(x, u, v)
    return _finish(u, box), _finish(v, box), _finish(w, box)


def _P_pk_des_wide(box: TruncationBox) -> Series:
    wide = box.widened("yt")
    _, y, t, _ = _vars(wide)
    u, v = _uv_wide(wide)
    x = Series.var("x", u.box.meet(v.box))
    w = _w(x, u, v)
    v_over_yt = div_exact(v, y * t)
    return 1 + (1 + u) * v_over_yt * (w - 1) / ((1 + u * v) * (1 - v * w))


@lru_cache(maxsize=None)
def gf_P_pk_des(box: TruncationBox) -> Series:
    """(pk, des) over all permutations: 1 + (1+u) v (w-1) / (y t (1+uv)(1-vw))."""
    return _finish(_P_pk_des_wide(box), box)


@lru_cache(maxsize=None)
def gf_B_pk_des(box: TruncationBox) -> Series:
    """(pk, des) over ballot permutations: exp(D^{t,x} log(1 + (1+t)(P - 1)))."""
    # after D^{t,x} every term has 2 e_t <= e_x - 1, and exp keeps that, so
    # t-degrees above (nx-1)/2 are identically zero and need not be computed
    inner = box.replace(nt=min(box.nt, max((box.nx - 1) // 2, 0)))
    p = _finish(_P_pk_des_wide(inner), inner)
    t = Series.var("t", inner)
    log_b = D_trunc(ln1p_series((1 + t) * (p - 1)), "t", "x")
    b = exp_series(log_b)
    return Series._raw(b._c, box)


def zhuang_rhs(n: int, box: TruncationBox) -> Series:
    """((1+u)/(1+uv))^(n+1) * v * A_n(v) as a series in y and t."""
    u, v, _ = gf_uvw(box)
    ratio = (1 + u) / (1 + u * v)
    eul = Series.constant(0, box)
    for d in reversed(range(max(n, 1))):
        eul = eul * v + eulerian(n, d)
    return ratio ** (n + 1) * v * eul


def _u(box): return gf_uvw(box)[0]
def _v(box): return gf_uvw(box)[1]
def _w_only(box): return gf_uvw(box)[2]


BUILDERS = {
    "E": gf_eulerian,
    "ballot_count": gf_ballot_count,
    "B_des": gf_B_des,
    "B_pk": gf_B_pk,
    "B_pk_des": gf_B_pk_des,
    "P_pk": gf_P_pk,
    "P_pk_des": gf_P_pk_des,
    "P_depth": gf_P_depth,
    "O": gf_O,
    "u": _u,
    "v": _v,
    "w": _w_only,
}
