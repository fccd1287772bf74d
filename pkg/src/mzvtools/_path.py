"""Li_k and A(k; .) near x = 1 by integrating their derivative chain.

With ``x = 1 - exp(-u)`` (Li) or ``x = tanh(u/2)`` (A) every function in the
chain ``k -> reduce(k) -> ... -> ()`` satisfies

    d/du f_k(u) = kernel(k, u) * f_reduce(k)(u),

where the kernel is 1 when the first part is 1 and ``1/(e^u - 1)``
(respectively ``1/sinh u``) otherwise.  Starting from series values at
``x = 1/2`` the chain is integrated panel by panel with Gauss-Legendre
integration matrices; each function is stored as a Legendre expansion per
panel so it can be evaluated anywhere in ``[u_start, U_MAX]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre as L

X_START = 0.5
U_MAX = 120.0
ORDER = 24
CHECK_ORDER = 16
_EDGES_STEP = 1.0


def u_start(kind: str) -> float:
    if kind == "li":
        return math.log(2.0)
    return math.log(3.0)


def reduce_word(word: tuple[int, ...]) -> tuple[int, ...]:
    if word[0] > 1:
        return (word[0] - 1, *word[1:])
    return word[1:]


def _kernel(kind: str, u: np.ndarray) -> np.ndarray:
    if kind == "li":
        return 1.0 / np.expm1(u)
    return 1.0 / np.sinh(u)


@lru_cache(maxsize=None)
def _rule(order: int):
    nodes, weights = L.leggauss(order)
    vander = L.legvander(nodes, order - 1)
    vinv = np.linalg.inv(vander)
    # integ[i, j] = int_{-1}^{nodes[i]} P_j(s) ds
    integ = np.empty((order, order))
    for j in range(order):
        e = np.zeros(order)
        e[j] = 1.0
        integ[:, j] = L.legval(nodes, L.legint(e, lbnd=-1))
    cumulative = integ @ vinv
    return nodes, weights, vinv, cumulative


@lru_cache(maxsize=None)
def _edges(kind: str) -> np.ndarray:
    u0 = u_start(kind)
    n = int(math.ceil((U_MAX - u0) / _EDGES_STEP))
    return u0 + _EDGES_STEP * np.arange(n + 1)


@dataclass(frozen=True)
class _Chain:
    nodes: np.ndarray  # (panels, order) node values
    coef: np.ndarray  # (panels, order) Legendre coefficients
    ends: np.ndarray  # (panels + 1,) values at panel edges


@lru_cache(maxsize=None)
def _chain(kind: str, word: tuple[int, ...], order: int) -> _Chain:
    edges = _edges(kind)
    n_panels = len(edges) - 1
    s, w, vinv, cumulative = _rule(order)
    if not word:
        ones = np.ones((n_panels, order))
        coef = np.zeros((n_panels, order))
        coef[:, 0] = 1.0
        return _Chain(ones, coef, np.ones(n_panels + 1))

    from .series import _series_value  # local import: series imports this module

    prev = _chain(kind, reduce_word(word), order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    u = mid[:, None] + half[:, None] * s[None, :]
    g = prev.nodes if word[0] == 1 else _kernel(kind, u) * prev.nodes
    totals = half * (g @ w)
    f0 = _series_value(kind, word, X_START)
    ends = f0 + np.concatenate(([0.0], np.cumsum(totals)))
    nodes = ends[:-1, None] + half[:, None] * (g @ cumulative.T)
    coef = nodes @ vinv.T
    return _Chain(nodes, coef, ends)


@lru_cache(maxsize=None)
def relative_error(kind: str, word: tuple[int, ...]) -> float:
    """Discrepancy between two panel orders, relative to ``1 + |f|``."""
    a = _chain(kind, word, ORDER).ends
    b = _chain(kind, word, CHECK_ORDER).ends
    disc = float(np.max(np.abs(a - b) / (1.0 + np.abs(a))))
    return max(disc, 64 * np.finfo(float).eps * len(word))


def evaluate(kind: str, word: tuple[int, ...], u: np.ndarray) -> np.ndarray:
    """Values of ``f_word`` at parameters ``u`` (array, ``u_start <= u <= U_MAX``)."""
    u = np.asarray(u, dtype=float)
    edges = _edges(kind)
    if u.size and (u.min() < edges[0] - 1e-12 or u.max() > edges[-1]):
        raise ValueError(f"path parameter outside [{edges[0]}, {edges[-1]}]")
    chain = _chain(kind, word, ORDER)
    idx = np.clip(np.searchsorted(edges, u, side="right") - 1, 0, len(edges) - 2)
    half = 0.5 * (edges[idx + 1] - edges[idx])
    mid = 0.5 * (edges[idx + 1] + edges[idx])
    s = (u - mid) / half
    return np.sum(L.legvander(s, ORDER - 1) * chain.coef[idx], axis=-1)


def u_from_complement(kind: str, delta: np.ndarray) -> np.ndarray:
    """Path parameter for ``x = 1 - delta``, computed without forming ``x``."""
    delta = np.asarray(delta, dtype=float)
    if kind == "li":
        return -np.log(delta)
    return np.log(2.0 - delta) - np.log(delta)
