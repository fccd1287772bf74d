"""Exact finite-sum expansions of the explicit formulas.

An :class:`Expansion` is ``scalar * sum(coefficient * value)`` where the
scalar is an exact :class:`~fractions.Fraction`, coefficients are Python
ints and each value is a (Hurwitz-shifted) zeta, zeta-star or T-value, or a
product of two depth-one values.  Terms are merged on
``(kind, index, alpha)`` keeping first-appearance order; zero terms are
dropped, so exact cancellations show up as an empty term list.

>>> print(expand_xi((2, 2), 1))
2*zeta(3,2,1) + 2*zeta(2,3,1) + 1*zeta(2,2,2)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .compositions import Composition, add, binom_product, enumerate_weak, format_composition, mzv_dual_index
from .errors import DomainError
from .series import eval_a, eval_t, eval_zeta, eval_zeta_star

__all__ = [
    "KINDS",
    "ExpansionTerm",
    "Expansion",
    "Comparison",
    "expand_thm21_rhs",
    "expand_thm23_rhs",
    "expand_xi",
    "expand_psi",
    "expand_eta",
    "kt_conjecture_sum",
    "sym_sides",
    "sym_residual",
    "cor34_sides",
    "cor34_check",
    "a_transform_terms",
]

KINDS = ("zeta", "zeta_star", "tvalue", "zeta_product", "tvalue_product")
_PRODUCT_OF = {"zeta_product": "zeta", "tvalue_product": "tvalue"}
_TEXT_NAME = {"zeta": "zeta", "zeta_star": "zstar", "tvalue": "T"}
_LATEX_NAME = {"zeta": r"\zeta", "zeta_star": r"\zeta^\star", "tvalue": "T"}
_EVALUATOR = {"zeta": eval_zeta, "zeta_star": eval_zeta_star, "tvalue": eval_t}


def _variant_kind(variant: str) -> str:
    v = variant.lower()
    if v in ("zeta", "z", "mzv"):
        return "zeta"
    if v in ("tvalue", "t"):
        return "tvalue"
    raise DomainError(f"variant must be 'zeta' or 'tvalue', got {variant!r}")


def _hurwitz_argument(alpha: float) -> Fraction:
    return Fraction(1 - Fraction(alpha).limit_denominator(10**6))


@dataclass(frozen=True)
class ExpansionTerm:
    coefficient: int
    kind: str
    index: tuple[Composition, ...]
    alpha: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown term kind {self.kind!r}")
        index = tuple(Composition(c) for c in self.index)
        if self.kind in _PRODUCT_OF:
            index = tuple(sorted(index))
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def key(self) -> tuple:
        return (self.kind, self.index, self.alpha)

    def _factors(self) -> list[tuple[str, Composition]]:
        base = _PRODUCT_OF.get(self.kind, self.kind)
        return [(base, c) for c in self.index]

    def value(self, tol: float) -> tuple[float, float]:
        """Numeric value of the bare (coefficient-free) term and its error bound."""
        v, e = 1.0, 0.0
        for base, comp in self._factors():
            r = _EVALUATOR[base](comp, self.alpha, tol)
            e = abs(v) * r.err_estimate + abs(r.value) * e + e * r.err_estimate
            v *= r.value
        return v, e

    def _shift_text(self, latex: bool) -> str:
        if self.alpha == 0.0:
            return ""
        arg = _hurwitz_argument(self.alpha)
        if latex:
            body = str(arg) if arg.denominator == 1 else rf"\tfrac{{{arg.numerator}}}{{{arg.denominator}}}"
            return ";" + body
        return f";{arg}"

    def text_body(self) -> str:
        base = _PRODUCT_OF.get(self.kind, self.kind)
        return "*".join(f"{_TEXT_NAME[base]}({format_composition(c)}{self._shift_text(False)})" for c in self.index)

    def latex_body(self) -> str:
        base = _PRODUCT_OF.get(self.kind, self.kind)
        return "".join(f"{_LATEX_NAME[base]}({format_composition(c)}{self._shift_text(True)})" for c in self.index)

    def to_dict(self) -> dict:
        return {
            "coefficient": self.coefficient,
            "kind": self.kind,
            "index": [list(c) for c in self.index],
            "alpha": self.alpha,
            "hurwitz_argument": str(_hurwitz_argument(self.alpha)),
        }


def _merge(terms: Iterable[ExpansionTerm]) -> tuple[ExpansionTerm, ...]:
    acc: dict[tuple, int] = {}
    first: dict[tuple, ExpansionTerm] = {}
    for t in terms:
        acc[t.key] = acc.get(t.key, 0) + t.coefficient
        first.setdefault(t.key, t)
    return tuple(
        ExpansionTerm(c, first[key].kind, first[key].index, first[key].alpha) for key, c in acc.items() if c != 0
    )


@dataclass(frozen=True)
class Expansion:
    terms: tuple[ExpansionTerm, ...]
    scalar: Fraction = Fraction(1)
    raw_term_count: int = field(default=0, compare=False)

    @classmethod
    def build(cls, terms: Iterable[ExpansionTerm], scalar=1) -> "Expansion":
        terms = list(terms)
        return cls(_merge(terms), Fraction(scalar), len(terms))

    def __len__(self) -> int:
        return len(self.terms)

    def evaluate(self, tol: float = 1e-12) -> tuple[float, float]:
        """``(value, err)`` with every constituent evaluated to ``tol``."""
        total = err = 0.0
        for t in self.terms:
            v, e = t.value(tol)
            total += t.coefficient * v
            err += abs(t.coefficient) * e
        s = float(self.scalar)
        return s * total, abs(s) * err

    def folded(self) -> list[tuple[Fraction, ExpansionTerm]]:
        return [(self.scalar * t.coefficient, t) for t in self.terms]

    def to_text(self, fold: bool = True) -> str:
        if not self.terms:
            return "0"
        pairs = self.folded() if fold else [(Fraction(t.coefficient), t) for t in self.terms]
        out = ""
        for i, (c, t) in enumerate(pairs):
            piece = f"{abs(c)}*{t.text_body()}"
            if i == 0:
                out = ("-" if c < 0 else "") + piece
            else:
                out += (" - " if c < 0 else " + ") + piece
        if not fold and self.scalar != 1:
            return f"{self.scalar} * [{out}]"
        return out

    def __str__(self) -> str:
        return self.to_text()

    def to_latex(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for i, (c, t) in enumerate(self.folded()):
            mag = abs(c)
            coef = "" if mag == 1 else (str(mag) if mag.denominator == 1 else rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}")
            sign = ("-" if c < 0 else "") if i == 0 else (" - " if c < 0 else " + ")
            out += sign + coef + t.latex_body()
        return out

    def to_dict(self) -> dict:
        return {
            "scalar": str(self.scalar),
            "terms": [t.to_dict() for t in self.terms],
            "text": self.to_text(),
        }


@dataclass(frozen=True)
class Comparison:
    lhs: float
    rhs: float
    lhs_err: float
    rhs_err: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


# -- explicit formulas ------------------------------------------------------------


def _dual_sum(k: Sequence[int], k_log: int, kind: str, alpha: float) -> list[ExpansionTerm]:
    if k_log < 0:
        raise DomainError("k_log must be >= 0")
    dual = mzv_dual_index(k)
    return [
        ExpansionTerm(binom_product(dual, j), kind, (add(dual, j),), alpha) for j in enumerate_weak(k_log, len(dual))
    ]


def expand_thm21_rhs(k: Sequence[int], k_log: int, variant: str = "zeta", alpha: float = 0.0) -> Expansion:
    """Right-hand side of the log-weighted Li/A integral identity.

    ``(-1)^K K! * sum_j B(d; j) V(d + j; 1 - alpha)`` with ``d`` the MZV-dual
    index of ``k`` and ``j`` over weak compositions of ``K`` of length ``dep(d)``.
    """
    kind = _variant_kind(variant)
    scalar = (-1) ** k_log * math.factorial(k_log)
    return Expansion.build(_dual_sum(k, k_log, kind, alpha), scalar)


def expand_thm23_rhs(k: Sequence[int], k_log: int = 0, alpha: float = 0.0) -> Expansion:
    """``int log^K(1-x) Li_k(x/(x-1)) / (x (1-x)^alpha) dx`` as zeta-star values.

    At ``K = 0`` this is ``(-1)^r zeta*(d; 1 - alpha)``; the log weight
    differentiates in ``alpha`` exactly as for the non-star identity.
    """
    k = Composition(k)
    scalar = (-1) ** (k_log + len(k)) * math.factorial(k_log)
    return Expansion.build(_dual_sum(k, k_log, "zeta_star", alpha), scalar)


def expand_xi(k: Sequence[int], k_log: int) -> Expansion:
    """``xi(k_log + 1; k)`` as a positive combination of MZVs."""
    return Expansion.build(_dual_sum(k, k_log, "zeta", 0.0))


def expand_psi(k: Sequence[int], k_log: int) -> Expansion:
    """``psi(k_log + 1; k)`` as a positive combination of multiple T-values."""
    return Expansion.build(_dual_sum(k, k_log, "tvalue", 0.0))


def expand_eta(k: Sequence[int], k_log: int) -> Expansion:
    """``eta(k_log + 1; k)``: zeta-star values with sign ``(-1)^(r-1)``."""
    k = Composition(k)
    return Expansion.build(_dual_sum(k, k_log, "zeta_star", 0.0), (-1) ** (len(k) - 1))


# -- double zeta / double T identities ------------------------------------------------


def _pair_sum(first: int, second: int, total: int, kind: str, sign: int = 1) -> list[ExpansionTerm]:
    """``sum_{i+j=total} C(first+i-1, i) C(second+j-1, j) V(first+i, second+j)``."""
    return [
        ExpansionTerm(sign * math.comb(first + i - 1, i) * math.comb(second + j - 1, j), kind, ((first + i, second + j),))
        for i, j in ((i, total - i) for i in range(total + 1))
    ]


def kt_conjecture_sum(p: int, q: int, m: int, variant: str = "tvalue") -> Expansion:
    """``sum_{i+j=m} C(p+i-1, i) C(q+j-1, j) T(p+i, q+j)``.

    The parity condition ``m + p + q`` even is not enforced; the sum is
    defined regardless.
    """
    if p < 2 or q < 1 or m < 0:
        raise DomainError("need p >= 2, q >= 1, m >= 0")
    return Expansion.build(_pair_sum(p, q, m, _variant_kind(variant)))


def _product_sum(m: int, p: int, q: int, kind: str) -> list[ExpansionTerm]:
    product = "zeta_product" if kind == "zeta" else "tvalue_product"
    return [
        ExpansionTerm((-1) ** j * math.comb(m + i - 1, i) * math.comb(p + j - 1, j), product, ((m + i,), (p + j,)))
        for i, j in ((i, q - 1 - i) for i in range(q))
    ]


def sym_sides(p: int, q: int, m: int, variant: str = "zeta", *, allow_outside_hypotheses: bool = False) -> tuple[Expansion, Expansion]:
    """Both sides of the symmetrised double-value formula as merged expansions."""
    if p < 2 or q < 1 or m < 1:
        raise DomainError("need p >= 2, q >= 1, m >= 1")
    if m < 2 and not allow_outside_hypotheses:
        raise DomainError("m = 1 is outside the stated hypotheses (pass allow_outside_hypotheses=True)")
    kind = _variant_kind(variant)
    lhs = _pair_sum(p, q, m - 1, kind) + _pair_sum(m, q, p - 1, kind, sign=-((-1) ** q))
    return Expansion.build(lhs), Expansion.build(_product_sum(m, p, q, kind))


def _compare(lhs: Expansion, rhs: Expansion, tol: float) -> Comparison:
    lv, le = lhs.evaluate(tol)
    rv, re = rhs.evaluate(tol)
    return Comparison(lv, rv, le, re)


def sym_residual(p: int, q: int, m: int, variant: str = "zeta", tol: float = 1e-12, **kw) -> Comparison:
    return _compare(*sym_sides(p, q, m, variant, **kw), tol)


def cor34_sides(p: int, q: int, variant: str = "zeta") -> tuple[Expansion, Expansion]:
    """The ``m = p`` specialisation; for even ``q`` both term lists are empty."""
    if p < 2 or q < 1:
        raise DomainError("need p >= 2, q >= 1")
    kind = _variant_kind(variant)
    lhs = _pair_sum(p, q, p - 1, kind, sign=1 - (-1) ** q)
    return Expansion.build(lhs), Expansion.build(_product_sum(p, p, q, kind))


def cor34_check(p: int, q: int, variant: str = "zeta", tol: float = 1e-12) -> Comparison:
    return _compare(*cor34_sides(p, q, variant), tol)


def a_transform_terms(p: int, q: int, t: float, tol: float = 1e-12) -> Comparison:
    """Both sides of the ``x -> (1-x)/(1+x)`` transformation of ``A(1^{q-1}, 2, 1^{p-2}; x)``."""
    if p < 2 or q < 1:
        raise DomainError("need p >= 2, q >= 1")
    t = float(t)
    if not 0.0 < t < 1.0:
        raise DomainError(f"t must lie strictly inside (0, 1), got {t}")
    comp = Composition((1,) * (q - 1) + (2,) + (1,) * (p - 2))
    left = eval_a(comp, (1.0 - t) / (1.0 + t), tol)
    lt = math.log(t)
    rhs = rerr = 0.0
    for j in range(q):
        c = (-1) ** (q - 1) * math.comb(p + j - 1, j) / math.factorial(q - 1 - j) * lt ** (q - 1 - j)
        tv = eval_t((p + j,), 0.0, tol)
        rhs += c * tv.value
        rerr += abs(c) * tv.err_estimate
    for j in range(p):
        c = (-1) ** (p + q - 1 + j) * math.comb(q + j - 1, j) / math.factorial(p - 1 - j) * lt ** (p - 1 - j)
        av = eval_a((q + j,), t, tol)
        rhs += c * av.value
        rerr += abs(c) * av.err_estimate
    return Comparison(left.value, rhs, left.err_estimate, rerr)
