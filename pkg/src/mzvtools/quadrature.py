"""One-dimensional singular integrals over (0, 1).

Three integrand families share the form ``F(x) * L(x)^K * P(x)^(-alpha) / x``:

* ``thm21_zeta``: ``F = Li_k(x)``, ``L = P = 1 - x``
* ``thm21_t``:    ``F = A(k; x)``, ``L = P = (1 - x)/(1 + x)``
* ``thm23_eta``:  ``F = Li_k(x/(x-1))`` (via the refinement sum), ``L = P = 1 - x``

The integral is cut at ``1 - eps`` where ``eps`` is chosen so that a
closed-form bound on the discarded piece stays below ``tol/16``; the rest is
done with a tanh-sinh rule that carries ``1 - x`` separately so nodes next to
the cut are evaluated without cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _path
from .compositions import Composition, refinements
from .errors import ConvergenceError, DivergenceError, DomainError
from .series import a_vector, eval_t, eval_zeta, landen_vector, li_vector

__all__ = [
    "FAMILIES",
    "IntegrandSpec",
    "QuadResult",
    "integrate",
    "xi_value_by_integral",
    "psi_value_by_integral",
    "eta_value_by_integral",
]

FAMILIES = ("thm21_zeta", "thm21_t", "thm23_eta")
DEFAULT_TOL = 1e-8
_T_MAX = 4.5
_MAX_LEVEL = 10
_U_FIRST = 4


@dataclass(frozen=True)
class IntegrandSpec:
    family: str
    index: Composition
    log_power: int = 0
    alpha: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown integrand family {self.family!r}")
        object.__setattr__(self, "index", Composition(self.index))
        if self.log_power < 0:
            raise DomainError("log_power must be >= 0")
        if not self.alpha < 1:
            raise DivergenceError(f"integral diverges at x = 1 for alpha = {self.alpha} >= 1")


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    nodes_used: int
    split_point: float
    split_complement: float
    remainder_bound: float = 0.0

    def scaled(self, factor: float) -> "QuadResult":
        return QuadResult(
            self.value * factor,
            self.err_estimate * abs(factor),
            self.nodes_used,
            self.split_point,
            self.split_complement,
            self.remainder_bound * abs(factor),
        )


# -- remainder bound on (1 - eps, 1) ------------------------------------------


def _factor_envelope(spec: IntegrandSpec) -> list[tuple[float, int]]:
    """``|F| <= sum c * u^d`` on the discarded segment, as ``[(c, d), ...]``.

    Admissible indices are bounded by their value at 1 (positive
    coefficients); otherwise by the all-ones index, ``u^r / r!``.
    """

    def one(k: Composition, kind: str) -> tuple[float, int]:
        if k.admissible:
            v = eval_zeta(k) if kind == "li" else eval_t(k)
            return (v.value + v.err_estimate, 0)
        return (1.0 / math.factorial(len(k)), len(k))

    k = spec.index
    if spec.family == "thm21_zeta":
        return [one(k, "li")]
    if spec.family == "thm21_t":
        return [one(k, "a")]
    return [one(l, "li") for l in refinements(k)]


def _upper_gamma_int(n: int, z: float) -> float:
    """``int_z^inf v^n e^-v dv`` for integer ``n >= 0``."""
    term = 1.0
    total = 1.0
    for m in range(1, n + 1):
        term *= z / m
        total += term
    return math.factorial(n) * math.exp(-z) * total


def _remainder_bound(spec: IntegrandSpec, envelope: list[tuple[float, int]], big_u: float) -> float:
    beta = 1.0 - spec.alpha
    total = 0.0
    for c, d in envelope:
        n = d + spec.log_power
        total += c * _upper_gamma_int(n, beta * big_u) / beta ** (n + 1)
    if spec.family == "thm21_t":
        return total * 2.0 / (1.0 - math.exp(-2 * big_u))
    return total / (1.0 - math.exp(-big_u))


def _split_complement(family: str, big_u: float) -> float:
    if family == "thm21_t":
        return 2.0 / (math.exp(big_u) + 1.0)
    return math.exp(-big_u)


# -- integrand ------------------------------------------------------------------


def _integrand(spec: IntegrandSpec, x: np.ndarray, delta: np.ndarray):
    """Factor values, factor error bounds, the remaining weight and ``u = -log L``."""
    k = spec.index
    if spec.family == "thm21_zeta":
        f, ferr = li_vector(k, x, delta)
        log_w = np.log(delta)
    elif spec.family == "thm21_t":
        f, ferr = a_vector(k, x, delta)
        log_w = np.log(delta) - np.log(2.0 - delta)
    else:
        f, ferr = landen_vector(k, x, delta)
        log_w = np.log(delta)
    rest = log_w**spec.log_power * np.exp(-spec.alpha * log_w) / x
    return f, ferr, rest, -log_w


class _TanhSinh:
    """Nodes of the tanh-sinh rule on (0, b) with complements ``1 - x``."""

    def __init__(self, b: float, eps: float):
        self.b = b
        self.eps = eps

    def nodes(self, t: np.ndarray):
        s = 0.5 * math.pi * np.sinh(t)
        # x = b / (1 + e^{-2s}),  b - x = b / (1 + e^{2s})
        x = self.b * np.exp(-np.logaddexp(0.0, -2.0 * s))
        delta = self.eps + self.b * np.exp(-np.logaddexp(0.0, 2.0 * s))
        e = np.exp(-2.0 * np.abs(s))
        w = self.b * 0.5 * (0.5 * math.pi * np.cosh(t)) * 4.0 * e / (1.0 + e) ** 2
        return x, delta, w


def integrate(spec: IntegrandSpec, tol: float = DEFAULT_TOL) -> QuadResult:
    """Integrate one of the three families over (0, 1) to absolute ``tol``."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    envelope = _factor_envelope(spec)
    big_u = float(_U_FIRST)
    remainder = _remainder_bound(spec, envelope, big_u)
    while remainder > tol / 16 and big_u < _path.U_MAX - 1:
        big_u += 1.0
        remainder = _remainder_bound(spec, envelope, big_u)
    eps = _split_complement(spec.family, big_u)
    b = 1.0 - eps
    rule = _TanhSinh(b, eps)

    def level_sum(t: np.ndarray) -> tuple[float, float]:
        x, delta, w = rule.nodes(t)
        f, ferr, rest, u = _integrand(spec, x, delta)
        g = f * rest
        if not np.all(np.isfinite(g)):
            bad = x[~np.isfinite(g)][0]
            raise ConvergenceError(f"integrand not finite at x = {bad!r} for {spec}")
        _check_envelope(spec, envelope, x, u, f)
        return float(np.sum(w * g)), float(np.sum(w * ferr * np.abs(rest)))

    h = 0.5
    t = np.arange(-_T_MAX, _T_MAX + h / 2, h)
    raw, raw_err = level_sum(t)
    n_nodes = t.size
    estimate = h * raw
    diff = math.inf
    level = 0
    while level < _MAX_LEVEL:
        level += 1
        h /= 2
        t_new = np.arange(-_T_MAX + h, _T_MAX, 2 * h)
        add, add_err = level_sum(t_new)
        raw += add
        raw_err += add_err
        n_nodes += t_new.size
        new_estimate = h * raw
        diff = abs(new_estimate - estimate)
        estimate = new_estimate
        if level >= 3 and diff <= tol / 4:
            break
    err = diff + h * raw_err + remainder + 16 * np.finfo(float).eps * abs(estimate)
    if err > tol:
        raise ConvergenceError(f"quadrature reached err={err:.3g} > tol={tol:g} for {spec}")
    return QuadResult(estimate, err, n_nodes, b, eps, remainder)


def _check_envelope(spec, envelope, x, u, f) -> None:
    """The remainder bound assumes ``|F| <= envelope(u)``; verify it on nodes past x = 0.9."""
    near = x > 0.9
    if not np.any(near):
        return
    bound = sum(c * u[near] ** d for c, d in envelope)
    if np.any(np.abs(f[near]) > bound * (1 + 1e-9) + 1e-12):
        raise ConvergenceError(f"factor exceeds its remainder envelope for {spec}; refusing to extrapolate")


def _log_prefactor(k_log: int) -> float:
    return (-1.0) ** k_log / math.factorial(k_log)


def xi_value_by_integral(k: Sequence[int], k_log: int, tol: float = DEFAULT_TOL) -> QuadResult:
    """``xi(k_log + 1; k)`` from its integral over (0, 1)."""
    c = _log_prefactor(k_log)
    return integrate(IntegrandSpec("thm21_zeta", Composition(k), k_log, 0.0), tol / abs(c)).scaled(c)


def psi_value_by_integral(k: Sequence[int], k_log: int, tol: float = DEFAULT_TOL) -> QuadResult:
    """``psi(k_log + 1; k)`` from its integral over (0, 1)."""
    c = _log_prefactor(k_log)
    return integrate(IntegrandSpec("thm21_t", Composition(k), k_log, 0.0), tol / abs(c)).scaled(c)


def eta_value_by_integral(k: Sequence[int], k_log: int, tol: float = DEFAULT_TOL) -> QuadResult:
    """``eta(k_log + 1; k)`` from ``log^k_log(1-x) Li_k(x/(x-1)) / x``."""
    c = -_log_prefactor(k_log)
    return integrate(IntegrandSpec("thm23_eta", Composition(k), k_log, 0.0), tol / abs(c)).scaled(c)
