"""Identity registry and runner.

Every registered identity computes both sides independently (an integral or
series on one side, an exact expansion on the other) and reports the
residual together with both error estimates.  A case passes when

    residual <= 10 * (lhs_err + rhs_err)   and   residual <= case.tol.

Cases whose parameters violate an identity's preconditions are reported as
skips rather than raising.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Callable, Iterable, Sequence

from .compositions import Composition, parse_composition
from .errors import ConvergenceError, MZVError
from .formulas import (
    Comparison,
    a_transform_terms,
    cor34_check,
    expand_eta,
    expand_psi,
    expand_thm21_rhs,
    expand_thm23_rhs,
    expand_xi,
    sym_residual,
)
from .quadrature import IntegrandSpec, eta_value_by_integral, integrate, psi_value_by_integral, xi_value_by_integral
from .series import eval_zeta

__all__ = [
    "SAFETY_FACTOR",
    "CaseParams",
    "IdentityCase",
    "IdentityReport",
    "REGISTRY",
    "run_case",
    "run_suite",
    "default_grid",
    "parse_grid",
    "make_case",
    "summarize",
]

SAFETY_FACTOR = 10.0
# constituents are computed this much tighter than the case tolerance
_WORK_FACTOR = 1e-3


@dataclass(frozen=True)
class CaseParams:
    k: Composition | None = None
    k_log: int = 0
    alpha: float = 0.0
    p: int | None = None
    q: int | None = None
    m: int | None = None
    t: float | None = None
    variant: str | None = None

    def describe(self) -> str:
        out = []
        for name, value in asdict(self).items():
            if value is None or (name == "k_log" and value == 0 and self.k is None) or (name == "alpha" and value == 0.0 and self.k is None):
                continue
            if name == "k":
                value = ",".join(map(str, value))
            out.append(f"{name}={value}")
        return " ".join(out)


@dataclass(frozen=True)
class IdentityCase:
    id: str
    params: CaseParams
    tol: float


@dataclass(frozen=True)
class IdentityReport:
    case: IdentityCase
    status: str  # pass | fail | skip
    lhs: float | None = None
    rhs: float | None = None
    lhs_err: float | None = None
    rhs_err: float | None = None
    residual: float | None = None
    message: str = ""
    wall_time: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "id": self.case.id,
            "params": self.case.params.describe(),
            "tol": self.case.tol,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "lhs_err": self.lhs_err,
            "rhs_err": self.rhs_err,
            "residual": self.residual,
            "message": self.message,
            "wall_time": self.wall_time,
        }


class _Skip(Exception):
    pass


def _need(params: CaseParams, *names: str) -> None:
    missing = [n for n in names if getattr(params, n) is None]
    if missing:
        raise _Skip(f"missing parameter(s): {', '.join(missing)}")


def _from_quad(quad, expansion, tol) -> Comparison:
    rv, re = expansion.evaluate(tol * _WORK_FACTOR)
    return Comparison(quad.value, rv, quad.err_estimate, re)


def _thm21(variant: str, family: str):
    def run(pr: CaseParams, tol: float) -> Comparison:
        _need(pr, "k")
        quad = integrate(IntegrandSpec(family, pr.k, pr.k_log, pr.alpha), tol * _WORK_FACTOR)
        return _from_quad(quad, expand_thm21_rhs(pr.k, pr.k_log, variant, pr.alpha), tol)

    return run


def _thm23(pr: CaseParams, tol: float) -> Comparison:
    _need(pr, "k")
    quad = integrate(IntegrandSpec("thm23_eta", pr.k, pr.k_log, pr.alpha), tol * _WORK_FACTOR)
    return _from_quad(quad, expand_thm23_rhs(pr.k, pr.k_log, pr.alpha), tol)


def _special_value(by_integral, expand):
    def run(pr: CaseParams, tol: float) -> Comparison:
        _need(pr, "k")
        if pr.alpha != 0.0:
            raise _Skip("special-value identities are defined at alpha = 0 only")
        return _from_quad(by_integral(pr.k, pr.k_log, tol * _WORK_FACTOR), expand(pr.k, pr.k_log), tol)

    return run


def _thm32(variant: str):
    def run(pr: CaseParams, tol: float) -> Comparison:
        _need(pr, "p", "q", "m")
        if pr.p < 2 or pr.q < 1 or pr.m < 2:
            raise _Skip("need p >= 2, q >= 1, m >= 2")
        return sym_residual(pr.p, pr.q, pr.m, variant, tol * _WORK_FACTOR)

    return run


def _cor34(pr: CaseParams, tol: float) -> Comparison:
    _need(pr, "p", "q")
    if pr.p < 2 or pr.q < 1:
        raise _Skip("need p >= 2, q >= 1")
    return cor34_check(pr.p, pr.q, pr.variant or "zeta", tol * _WORK_FACTOR)


def _kta(pr: CaseParams, tol: float) -> Comparison:
    _need(pr, "p", "q", "t")
    if pr.p < 2 or pr.q < 1 or not 0 < pr.t < 1:
        raise _Skip("need p >= 2, q >= 1, 0 < t < 1")
    return a_transform_terms(pr.p, pr.q, pr.t, tol * _WORK_FACTOR)


def _example_li22(pr: CaseParams, tol: float) -> Comparison:
    """Log-weighted Li_{2,2} integral against its three-term expansion, written out literally."""
    quad = integrate(IntegrandSpec("thm21_zeta", (2, 2), 1, pr.alpha), tol * _WORK_FACTOR)
    rhs = err = 0.0
    for coef, idx in ((-2, (3, 2, 1)), (-2, (2, 3, 1)), (-1, (2, 2, 2))):
        r = eval_zeta(idx, pr.alpha, tol * _WORK_FACTOR)
        rhs += coef * r.value
        err += abs(coef) * r.err_estimate
    return Comparison(quad.value, rhs, quad.err_estimate, err)


REGISTRY: dict[str, tuple[Callable[[CaseParams, float], Comparison], float]] = {
    "thm2.1-zeta": (_thm21("zeta", "thm21_zeta"), 1e-5),
    "thm2.1-T": (_thm21("tvalue", "thm21_t"), 1e-5),
    "thm2.3": (_thm23, 1e-5),
    "cor2.2-xi": (_special_value(xi_value_by_integral, expand_xi), 1e-6),
    "cor2.2-psi": (_special_value(psi_value_by_integral, expand_psi), 1e-6),
    "cor2.4": (_special_value(eta_value_by_integral, expand_eta), 1e-6),
    "thm3.2-zeta": (_thm32("zeta"), 1e-6),
    "thm3.2-T": (_thm32("tvalue"), 1e-6),
    "cor3.4": (_cor34, 1e-5),
    "kta-change": (_kta, 1e-5),
    "example-li22": (_example_li22, 1e-5),
}


def make_case(id: str, tol: float | None = None, **params) -> IdentityCase:
    if "k" in params and params["k"] is not None:
        params["k"] = parse_composition(params["k"])
    default = REGISTRY[id][1] if id in REGISTRY else 1e-5
    return IdentityCase(id, CaseParams(**params), default if tol is None else tol)


def run_case(case: IdentityCase) -> IdentityReport:
    start = time.perf_counter()
    entry = REGISTRY.get(case.id)
    if entry is None:
        return IdentityReport(case, "skip", message=f"unknown identity id {case.id!r}")
    handler = entry[0]
    try:
        cmp = handler(case.params, case.tol)
    except _Skip as exc:
        return IdentityReport(case, "skip", message=str(exc), wall_time=time.perf_counter() - start)
    except ConvergenceError as exc:
        return IdentityReport(case, "fail", message=str(exc), wall_time=time.perf_counter() - start)
    except MZVError as exc:
        return IdentityReport(case, "skip", message=str(exc), wall_time=time.perf_counter() - start)
    residual = cmp.residual
    ok = residual <= SAFETY_FACTOR * (cmp.lhs_err + cmp.rhs_err) and residual <= case.tol
    return IdentityReport(
        case,
        "pass" if ok else "fail",
        cmp.lhs,
        cmp.rhs,
        cmp.lhs_err,
        cmp.rhs_err,
        residual,
        wall_time=time.perf_counter() - start,
    )


def run_suite(grid: Iterable[IdentityCase], parallelism: int = 1) -> list[IdentityReport]:
    """Run every case; reports come back in input order for any ``parallelism``."""
    cases = list(grid)
    if parallelism <= 1 or len(cases) <= 1:
        return [run_case(c) for c in cases]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(run_case, cases, chunksize=max(1, len(cases) // (4 * parallelism))))


DEFAULT_KS = ("1", "2", "1,1", "2,1", "1,2", "2,2")


def default_grid() -> list[IdentityCase]:
    grid = []
    for variant in ("thm2.1-zeta", "thm2.1-T"):
        for k in DEFAULT_KS:
            for k_log in (0, 1, 2):
                for alpha in (0.0, -0.5):
                    grid.append(make_case(variant, k=k, k_log=k_log, alpha=alpha))
    for k in DEFAULT_KS:
        for alpha in (0.0, -0.5):
            grid.append(make_case("thm2.3", k=k, alpha=alpha))
    for ident in ("cor2.2-xi", "cor2.2-psi", "cor2.4"):
        for k in DEFAULT_KS:
            for k_log in (0, 1, 2):
                grid.append(make_case(ident, k=k, k_log=k_log))
    for ident in ("thm3.2-zeta", "thm3.2-T"):
        for p in (2, 3):
            for q in (1, 2, 3):
                for m in (2, 3):
                    grid.append(make_case(ident, p=p, q=q, m=m))
    for variant in ("zeta", "tvalue"):
        for p in (2, 3):
            for q in (1, 2, 3, 4):
                grid.append(make_case("cor3.4", p=p, q=q, variant=variant))
    for p in (2, 3):
        for q in (1, 2):
            for t in (0.3, 0.5, 0.7):
                grid.append(make_case("kta-change", p=p, q=q, t=t))
    for alpha in (0.0, -0.5):
        grid.append(make_case("example-li22", alpha=alpha))
    return grid


_INT_KEYS = {"k_log", "p", "q", "m"}
_FLOAT_KEYS = {"alpha", "t", "tol"}


def parse_grid(text: str) -> list[IdentityCase]:
    """Parse ``id key=value ...`` lines; ``#`` starts a comment.

    Unknown ids and out-of-range values are kept (they become skip records);
    malformed syntax raises ``ValueError``.
    """
    cases = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        ident, *pairs = line.split()
        kw: dict = {}
        for pair in pairs:
            key, sep, value = pair.partition("=")
            if not sep:
                raise ValueError(f"line {lineno}: expected key=value, got {pair!r}")
            key = key.replace("-", "_")
            if key == "klog":
                key = "k_log"
            if key in _INT_KEYS:
                kw[key] = int(value)
            elif key in _FLOAT_KEYS:
                kw[key] = float(value)
            elif key in ("k", "variant"):
                kw[key] = value
            else:
                raise ValueError(f"line {lineno}: unknown key {key!r}")
        tol = kw.pop("tol", None)
        cases.append(make_case(ident, tol, **kw))
    return cases


def summarize(reports: Sequence[IdentityReport]) -> dict:
    counts = {"pass": 0, "fail": 0, "skip": 0}
    for r in reports:
        counts[r.status] += 1
    return counts


def without_timing(report: IdentityReport) -> IdentityReport:
    return replace(report, wall_time=0.0)
