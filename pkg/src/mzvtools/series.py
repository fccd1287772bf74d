"""Floating-point evaluation of zeta-, zeta-star-, T-values, Li_k and A(k; x).

Nested sums run outer level first.  For a level with exponent ``s`` the sum
over ``n' = n + a, n + a + c, ...`` of ``F_prev(n') / (n' - alpha)^s`` is
kept exactly for ``n < N`` and replaced by its asymptotic expansion in
``1/(n - alpha)`` at the cut ``N``.  The expansion of each level is built
from the previous one with the Hurwitz asymptotic series

    zeta(s, y + b) ~ sum_l (-1)^l B_l(b) / l! * (s)_{l-1} * y^(1 - s - l),

using exact rational coefficients, so a cut at ``N = 32`` already gives
errors at the rounding level.  The three value families differ only in the
step ``c`` and offset ``a``:

=========  ====  ====  =================================
family     a     c     final index
=========  ====  ====  =================================
zeta       1     1     F_r(0)
T          1     2     2^r * F_r(0)  (alternating parity)
zeta-star  0     1     F_r(1)        (weak inequalities)
=========  ====  ====  =================================

``Li_k`` and ``A(k; x)`` use their power series for ``|x| <= 0.9`` and the
derivative-chain integrator in :mod:`mzvtools._path` closer to 1.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _path
from .compositions import Composition, coarsenings, refinements
from .errors import ConvergenceError, DivergenceError, DomainError

__all__ = [
    "EvalResult",
    "default_tol",
    "eval_zeta",
    "eval_zeta_star",
    "eval_t",
    "eval_li",
    "eval_li_landen",
    "eval_a",
    "li_vector",
    "a_vector",
    "landen_vector",
    "clear_memo",
]

EPS = float(np.finfo(float).eps)
SERIES_RADIUS = 0.9
_ASYM_ORDER = 36
_N_START = 32
_N_MAX = 1 << 14


@dataclass(frozen=True)
class EvalResult:
    value: float
    err_estimate: float
    terms_used: int
    method: str  # series | closed_form | coarsening_sum | refinement_sum | path


def default_tol(k: Sequence[int]) -> float:
    w = sum(k)
    if w <= 4:
        return 1e-8
    if w <= 6:
        return 1e-6
    return 1e-5


def _rounding_allowance(value: float, terms: int) -> float:
    return 10 * EPS * abs(value) * max(1.0, terms / 1e6)


# -- memo -------------------------------------------------------------------

_memo: dict[tuple, EvalResult] = {}
_memo_lock = threading.Lock()


def _memo_get(key: tuple, tol: float) -> EvalResult | None:
    with _memo_lock:
        hit = _memo.get(key)
    if hit is not None and hit.err_estimate <= tol:
        return hit
    return None


def _memo_put(key: tuple, result: EvalResult) -> None:
    with _memo_lock:
        old = _memo.get(key)
        if old is None or result.err_estimate < old.err_estimate:
            _memo[key] = result


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


# -- asymptotic tail engine -------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> tuple[Fraction, ...]:
    """B_0..B_n with B_1 = -1/2."""
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for m in range(1, n + 1):
        b[m] = -sum(math.comb(m + 1, j) * b[j] for j in range(m)) / (m + 1)
    return tuple(b)


@lru_cache(maxsize=None)
def _bernoulli_poly_at(n: int, x: Fraction) -> tuple[Fraction, ...]:
    bn = _bernoulli(n)
    return tuple(sum(math.comb(l, j) * bn[j] * x ** (l - j) for j in range(l + 1)) for l in range(n + 1))


def _rising(s: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= s + i
    return out


@lru_cache(maxsize=None)
def _tail_coefficients(parts: tuple[int, ...], step: int, offset: int, order: int) -> tuple[tuple[float, ...], ...]:
    """Asymptotic coefficients of every level, ``F_j(x) ~ sum_p A[j][p] x^-p``.

    Coefficients are exact rationals internally and returned as floats.
    """
    b = Fraction(offset, step)
    bpoly = _bernoulli_poly_at(order + 1, b)
    prev = {0: Fraction(1)}
    levels = []
    for s in parts:
        g = {p + s: c for p, c in prev.items() if p + s <= order + 1}
        cur: dict[int, Fraction] = {}
        for p, gp in g.items():
            if p < 2:
                raise DivergenceError("non-convergent nested sum")
            cur[p - 1] = cur.get(p - 1, Fraction(0)) + gp / ((p - 1) * step)
            for l in range(1, order + 2 - p + 1):
                e = p - 1 + l
                if e > order:
                    break
                term = (-1) ** l * bpoly[l] / math.factorial(l) * _rising(p, l - 1) * Fraction(step) ** (l - 1)
                if term:
                    cur[e] = cur.get(e, Fraction(0)) + gp * term
        prev = cur
        levels.append(tuple(float(prev.get(p, 0)) for p in range(order + 1)))
    return tuple(levels)


def _asymptotic(coeffs: Sequence[float], x: float) -> tuple[float, float]:
    """Value of the truncated expansion and an estimate of its truncation error."""
    total = 0.0
    tail = 0.0
    xp = 1.0
    n = len(coeffs)
    for p, c in enumerate(coeffs):
        term = c * xp
        total += term
        if p >= n - 4:
            tail = max(tail, abs(term))
        xp /= x
    return total, 4 * tail


def _nested_sum(parts: tuple[int, ...], alpha: float, step: int, offset: int, start: int, n_cut: int) -> tuple[float, float]:
    """``F_r(start)`` for the level recursion described in the module docstring.

    Returns the value and the propagated asymptotic truncation bound.
    """
    coeffs = _tail_coefficients(parts, step, offset, _ASYM_ORDER)
    size = n_cut + 1
    prev = np.ones(size)
    asym_err = 0.0
    log_growth = 2.0 + math.log(n_cut)
    r = len(parts)
    for j, s in enumerate(parts):
        cur = np.empty(size)
        level_err = 0.0
        for n in range(n_cut - step + 1, n_cut + 1):
            cur[n], e = _asymptotic(coeffs[j], n - alpha)
            level_err = max(level_err, e)
        for n in range(n_cut - step, start - 1, -1):
            m = n + offset
            cur[n] = cur[n + step] + prev[m] / (m - alpha) ** s
        asym_err += level_err * log_growth ** (r - 1 - j)
        prev = cur
    return float(prev[start]), asym_err


def _check_zeta_args(k: Sequence[int], alpha: float) -> Composition:
    k = Composition(k)
    if not k.admissible:
        raise DivergenceError(f"index {tuple(k)} is not admissible (first part must be >= 2)")
    if not alpha < 1:
        raise DomainError(f"alpha must be < 1, got {alpha}")
    return k


def _doubling(parts, alpha, step, offset, start, scale, tol, n_terms):
    r = len(parts)
    n = n_terms or _N_START
    while True:
        v1, a1 = _nested_sum(parts, alpha, step, offset, start, n)
        v2, _ = _nested_sum(parts, alpha, step, offset, start, 2 * n)
        v1 *= scale
        v2 *= scale
        floor = 16 * EPS * abs(v1) * r + _rounding_allowance(v1, r * n)
        err = a1 * scale + max(abs(v1 - v2), floor)
        if n_terms is not None or err <= tol / 2 or 2 * n > _N_MAX:
            break
        n *= 2
    if n_terms is None and err > tol:
        raise ConvergenceError(f"could not reach tol={tol:g} (err={err:.3g})")
    return EvalResult(v1, err, 3 * r * n, "series")


def eval_zeta(k: Sequence[int], alpha: float = 0.0, tol: float | None = None, *, n_terms: int | None = None) -> EvalResult:
    """Hurwitz-type multiple zeta value ``zeta(k; 1 - alpha)``.

    Denominators are ``n_i - alpha`` over ``n_1 > ... > n_r > 0``.
    ``n_terms`` fixes the truncation point instead of doubling to ``tol``.
    """
    k = _check_zeta_args(k, alpha)
    tol = default_tol(k) if tol is None else tol
    key = ("zeta", tuple(k), float(alpha))
    if n_terms is None and (hit := _memo_get(key, tol)) is not None:
        return hit
    res = _doubling(tuple(k), float(alpha), 1, 1, 0, 1.0, tol, n_terms)
    if n_terms is None:
        _memo_put(key, res)
    return res


def eval_t(k: Sequence[int], alpha: float = 0.0, tol: float | None = None, *, n_terms: int | None = None) -> EvalResult:
    """Hurwitz-type multiple T-value ``T(k; 1 - alpha)``.

    The ``i``-th denominator is ``2 m_i - r + i - 1 - alpha``; equivalently
    ``n_i - alpha`` with ``n_i`` of parity ``r + 1 - i``.
    """
    k = _check_zeta_args(k, alpha)
    tol = default_tol(k) if tol is None else tol
    key = ("tvalue", tuple(k), float(alpha))
    if n_terms is None and (hit := _memo_get(key, tol)) is not None:
        return hit
    res = _doubling(tuple(k), float(alpha), 2, 1, 0, 2.0 ** len(k), tol, n_terms)
    if n_terms is None:
        _memo_put(key, res)
    return res


def _eval_zeta_star_direct(k: Sequence[int], alpha: float = 0.0, tol: float = 1e-12) -> EvalResult:
    """Weak-inequality nested sum, used to cross-check the coarsening route."""
    k = _check_zeta_args(k, alpha)
    return _doubling(tuple(k), float(alpha), 1, 0, 1, 1.0, tol, None)


def eval_zeta_star(k: Sequence[int], alpha: float = 0.0, tol: float | None = None) -> EvalResult:
    """``zeta*(k; 1 - alpha)`` as the sum of ``zeta(l; 1 - alpha)`` over coarsenings ``l`` of ``k``."""
    k = _check_zeta_args(k, alpha)
    tol = default_tol(k) if tol is None else tol
    parts = coarsenings(k)
    sub_tol = tol / len(parts)
    value = err = 0.0
    terms = 0
    for l in parts:
        res = eval_zeta(l, alpha, sub_tol)
        value += res.value
        err += res.err_estimate
        terms += res.terms_used
    return EvalResult(value, err, terms, "coarsening_sum")


# -- power series ---------------------------------------------------------------


def _series_length(ax: float) -> int:
    if ax == 0:
        return 1
    return int(math.ceil(42 * math.log(10) / -math.log(ax))) + 8


@lru_cache(maxsize=256)
def _power_coefficients(kind: str, word: tuple[int, ...], n_max: int) -> np.ndarray:
    """Coefficients ``c[n]`` of ``x^n`` (``0 <= n <= n_max``) for Li or A.

    A is summed over the m-indices: level ``j`` has denominators
    ``2m - r + j - 1``, valid for ``m >= r - j + 1``.
    """
    r = len(word)
    coeff = np.zeros(n_max + 1)
    if kind == "li":
        m = np.arange(1, n_max + 1, dtype=float)
        cum = None
        for s in reversed(word):
            h = m ** (-float(s))
            if cum is not None:
                h = h * np.concatenate(([0.0], cum[:-1]))
            cum = np.cumsum(h)
        coeff[1:] = h
        return coeff
    m_max = (n_max + r) // 2
    m = np.arange(1, m_max + 1)
    cum = None
    for j in range(r, 0, -1):
        d = (2 * m - r + j - 1).astype(float)
        valid = m >= r - j + 1
        h = np.where(valid, np.where(valid, d, 1.0) ** (-float(word[j - 1])), 0.0)
        if cum is not None:
            h = h * np.concatenate(([0.0], cum[:-1]))
        cum = np.cumsum(h)
    n = 2 * m - r
    ok = (n >= 1) & (n <= n_max)
    coeff[n[ok]] = 2.0**r * h[ok]
    return coeff


def _series_tail_bound(kind: str, r: int, n: int, ax: float) -> float:
    env = (1.0 + math.log(n + 1)) ** max(r - 1, 0) / (n + 1)
    if kind == "a":
        env *= 2.0**r
    return 2 * env * ax ** (n + 1) / (1.0 - ax)


def _series_eval(kind: str, word: tuple[int, ...], x: np.ndarray) -> tuple[np.ndarray, float]:
    x = np.asarray(x, dtype=float)
    ax = float(np.max(np.abs(x))) if x.size else 0.0
    n = _series_length(ax)
    coeff = _power_coefficients(kind, word, n)
    values = np.polynomial.polynomial.polyval(x, coeff)
    return values, _series_tail_bound(kind, len(word), n, ax)


def _series_value(kind: str, word: tuple[int, ...], x: float) -> float:
    return float(_series_eval(kind, word, np.array(x))[0])


# -- Li and A -------------------------------------------------------------------


def _check_x(x: float, lo: float, hi: float) -> float:
    x = float(x)
    if not lo <= x <= hi:
        raise DomainError(f"x must lie in [{lo}, {hi}], got {x}")
    return x


def _path_result(kind: str, word: tuple[int, ...], delta: float) -> EvalResult:
    u = _path.u_from_complement(kind, np.array([delta]))
    value = float(_path.evaluate(kind, word, u)[0])
    err = _path.relative_error(kind, word) * (1.0 + abs(value))
    return EvalResult(value, err, _path.ORDER * len(_path._edges(kind)), "path")


def _series_result(kind: str, word: tuple[int, ...], x: float) -> EvalResult:
    value, tail = _series_eval(kind, word, np.array(x))
    v = float(value)
    n = _series_length(abs(x))
    return EvalResult(v, tail + _rounding_allowance(v, n) + 4 * EPS * abs(v), n, "series")


def _finish(res: EvalResult, tol: float) -> EvalResult:
    if res.err_estimate > tol:
        raise ConvergenceError(f"could not reach tol={tol:g} (err={res.err_estimate:.3g})")
    return res


def eval_li(k: Sequence[int], x: float, tol: float | None = None) -> EvalResult:
    """Multiple polylogarithm ``Li_k(x)`` for ``x`` in ``[-1, 1]``."""
    k = Composition(k)
    x = _check_x(x, -1.0, 1.0)
    tol = default_tol(k) if tol is None else tol
    word = tuple(k)
    if x == 1.0:
        if not k.admissible:
            raise DivergenceError(f"Li_{word}(1) diverges: index is not admissible")
        z = eval_zeta(k, 0.0, tol)
        return EvalResult(z.value, z.err_estimate, z.terms_used, "closed_form")
    if x == 0.0:
        return EvalResult(0.0, 0.0, 0, "closed_form")
    if abs(x) <= SERIES_RADIUS:
        return _finish(_series_result("li", word, x), tol)
    if x > 0:
        return _finish(_path_result("li", word, 1.0 - x), tol)
    # x < -0.9: map to y = x/(x-1) in (0.47, 0.5]
    y = x / (x - 1.0)
    res = eval_li_landen(k, y, tol)
    return res


def eval_li_landen(k: Sequence[int], x: float, tol: float | None = None) -> EvalResult:
    """``Li_k(x/(x-1))`` as ``(-1)^r`` times the sum of ``Li_l(x)`` over refinements ``l`` of ``k``."""
    k = Composition(k)
    x = float(x)
    if not 0.0 <= x < 1.0:
        raise DomainError(f"x must lie in [0, 1), got {x}")
    tol = default_tol(k) if tol is None else tol
    if x == 0.0:
        return EvalResult(0.0, 0.0, 0, "refinement_sum")
    parts = refinements(k)
    sub_tol = tol / len(parts)
    value = err = 0.0
    terms = 0
    for l in parts:
        res = eval_li(l, x, sub_tol)
        value += res.value
        err += res.err_estimate
        terms += res.terms_used
    sign = -1.0 if len(k) % 2 else 1.0
    return EvalResult(sign * value, err, terms, "refinement_sum")


def eval_a(k: Sequence[int], x: float, tol: float | None = None) -> EvalResult:
    """Level-two polylogarithm ``A(k; x)`` for ``x`` in ``[0, 1]``; ``A(k; 1) = T(k)``."""
    k = Composition(k)
    x = _check_x(x, 0.0, 1.0)
    tol = default_tol(k) if tol is None else tol
    word = tuple(k)
    if x == 1.0:
        if not k.admissible:
            raise DivergenceError("A(k; 1) diverges when the first part is 1")
        t = eval_t(k, 0.0, tol)
        return EvalResult(t.value, t.err_estimate, t.terms_used, "closed_form")
    if x == 0.0:
        return EvalResult(0.0, 0.0, 0, "closed_form")
    if x <= SERIES_RADIUS:
        return _finish(_series_result("a", word, x), tol)
    return _finish(_path_result("a", word, 1.0 - x), tol)


# -- vectorised evaluation for quadrature nodes -------------------------------


def _vector(kind: str, word: tuple[int, ...], x: np.ndarray, delta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    delta = np.asarray(delta, dtype=float)
    out = np.empty_like(x)
    err = np.empty_like(x)
    near = x > _path.X_START
    if np.any(~near):
        v, tail = _series_eval(kind, word, x[~near])
        out[~near] = v
        err[~near] = tail + 16 * EPS * np.abs(v)
    if np.any(near):
        u = _path.u_from_complement(kind, delta[near])
        v = _path.evaluate(kind, word, u)
        out[near] = v
        err[near] = _path.relative_error(kind, word) * (1.0 + np.abs(v))
    return out, err


def li_vector(k: Sequence[int], x: np.ndarray, delta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``Li_k`` at ``x`` (with ``delta = 1 - x`` supplied accurately): values and error bounds."""
    return _vector("li", tuple(Composition(k)), x, delta)


def a_vector(k: Sequence[int], x: np.ndarray, delta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return _vector("a", tuple(Composition(k)), x, delta)


def landen_vector(k: Sequence[int], x: np.ndarray, delta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``Li_k(x/(x-1))`` at many nodes via the refinement sum."""
    k = Composition(k)
    total = np.zeros_like(np.asarray(x, dtype=float))
    err = np.zeros_like(total)
    for l in refinements(k):
        v, e = li_vector(l, x, delta)
        total += v
        err += e
    sign = -1.0 if len(k) % 2 else 1.0
    return sign * total, err
