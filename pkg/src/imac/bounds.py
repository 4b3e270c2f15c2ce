"""Sum-capacity bounds: genie-aided upper bound and TIN lower bound.

The genie bound minimizes

    log2(1 + (INR + A / (1 - rho^2 + INR)) / eta^2)
    A = p1 (eta - rho h1)^2 + p2 (eta - rho h2)^2 + p1 p2 (h1 - h2)^2

over ``rho in [-1, 1]`` and ``eta^2 <= 1 - rho^2``. Substituting
``eta = t sqrt(1 - rho^2)`` turns the feasible set into the square
``[-1, 1]^2``; the search is a coarse grid in ``(rho, t)`` followed by a
bounded Nelder-Mead polish from the best cell.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .channel import ImacChannel, inr
from .polymatroid import TOL

logger = logging.getLogger(__name__)

ETA_FLOOR = 1e-9


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class GenieParams:
    rho: float
    eta: float

    def __post_init__(self):
        if not (math.isfinite(self.rho) and math.isfinite(self.eta)):
            raise DomainError("rho and eta must be finite")
        if abs(self.rho) > 1:
            raise DomainError(f"rho must lie in [-1, 1], got {self.rho!r}")
        if self.eta**2 > 1 - self.rho**2 + TOL:
            raise DomainError(f"eta^2 must be <= 1 - rho^2, got rho={self.rho!r}, eta={self.eta!r}")


@dataclass(frozen=True)
class OptimizerSettings:
    grid: int = 201
    refine: int = 200

    def __post_init__(self):
        if self.grid < 2:
            raise ValueError(f"grid must be >= 2, got {self.grid!r}")
        if self.refine < 0:
            raise ValueError(f"refine must be >= 0, got {self.refine!r}")


def _zero_interference(ch: ImacChannel) -> bool:
    return ch.h1 == 0 and ch.h2 == 0


def _objective(ch: ImacChannel, rho, eta):
    """Vectorized genie objective; ``inf`` where it is undefined."""
    rho = np.asarray(rho, dtype=float)
    eta = np.asarray(eta, dtype=float)
    one_minus = 1.0 - rho**2
    with np.errstate(divide="ignore", invalid="ignore"):
        if _zero_interference(ch):
            # INR = 0 and A = (p1 + p2) eta^2, so eta cancels.
            val = np.log2(1.0 + (ch.p1 + ch.p2) / one_minus)
            return np.where(one_minus > 0, val, np.inf)
        i = inr(ch)
        a = (
            ch.p1 * (eta - rho * ch.h1) ** 2
            + ch.p2 * (eta - rho * ch.h2) ** 2
            + ch.p1 * ch.p2 * (ch.h1 - ch.h2) ** 2
        )
        val = np.log2(1.0 + (i + a / (one_minus + i)) / eta**2)
    return np.where(np.abs(eta) >= ETA_FLOOR, val, np.inf)


def genie_objective(ch: ImacChannel, p: GenieParams) -> float:
    if abs(p.eta) < ETA_FLOOR:
        raise DomainError(f"|eta| must be >= {ETA_FLOOR:g}, got {p.eta!r}")
    return float(_objective(ch, p.rho, p.eta))


def _to_params(rho: float, t: float) -> GenieParams:
    rho = min(1.0, max(-1.0, float(rho)))
    t = min(1.0, max(-1.0, float(t)))
    return GenieParams(rho, t * math.sqrt(1.0 - rho**2))


def grid_search(ch: ImacChannel, grid: int = 201) -> tuple[float, float, float]:
    """Best ``(value, rho, t)`` on a ``grid x grid`` lattice over ``[-1, 1]^2``.

    Ties go to the lexicographically smallest ``(rho, t)``.
    """
    axis = np.linspace(-1.0, 1.0, grid)
    rho, t = np.meshgrid(axis, axis, indexing="ij")
    vals = _objective(ch, rho, t * np.sqrt(1.0 - rho**2))
    k = int(np.argmin(vals))
    return float(vals.flat[k]), float(rho.flat[k]), float(t.flat[k])


def upper_bound(ch: ImacChannel, opts: OptimizerSettings | None = None) -> tuple[float, GenieParams]:
    """Genie-aided sum-capacity upper bound and its minimizing parameters.

    Never worse than the coarse grid's best value.
    """
    opts = opts or OptimizerSettings()
    best, rho0, t0 = grid_search(ch, opts.grid)
    best_rho, best_t = rho0, t0
    if opts.refine > 0:
        step = 2.0 / (opts.grid - 1)

        def f(x):
            return float(_objective(ch, x[0], x[1] * math.sqrt(max(0.0, 1.0 - x[0] ** 2))))

        start = np.array([rho0, t0])
        simplex = np.array([start, start + [step, 0.0], start + [0.0, step]])
        # keep the initial simplex inside the box
        simplex = np.where(simplex > 1.0, simplex - 2 * step, simplex)
        res = minimize(
            f,
            start,
            method="Nelder-Mead",
            bounds=[(-1.0, 1.0), (-1.0, 1.0)],
            options={"maxiter": opts.refine, "initial_simplex": simplex, "xatol": 1e-10, "fatol": 1e-13},
        )
        if np.isfinite(res.fun) and res.fun < best:
            best, best_rho, best_t = float(res.fun), float(res.x[0]), float(res.x[1])
    return best, _to_params(best_rho, best_t)


def lower_bound_tin(ch: ImacChannel) -> float:
    """Sum rate of Gaussian codes with interference treated as noise."""
    return math.log2(1 + (ch.p1 + ch.p2) / (1 + inr(ch)))


@dataclass(frozen=True)
class SumCapacityBounds:
    lower: float
    upper: float
    argmin: GenieParams
    gap: float
    genie: float
    exact: float | None = None
    source: str | None = None

    def to_json(self) -> dict:
        fmt = lambda x: None if x is None else float(f"{x:.9g}")  # noqa: E731
        return {
            "lower": fmt(self.lower),
            "upper": fmt(self.upper),
            "gap": fmt(self.gap),
            "genie": fmt(self.genie),
            "argmin": {"rho": fmt(self.argmin.rho), "eta": fmt(self.argmin.eta)},
            "exact": fmt(self.exact),
            "source": self.source,
        }


def bounds(ch: ImacChannel, opts: OptimizerSettings | None = None) -> SumCapacityBounds:
    """Best available lower and upper bounds on the sum capacity.

    Upper: the genie bound or the outer-bound LP, whichever is smaller.
    Lower: TIN, the decode-interference-first product region, and the MSES
    capacity region when it applies. A regime theorem's exact value is
    adopted only if it is consistent with both sides; otherwise it is
    reported in ``exact`` but the bounds are left alone.
    """
    from .regimes import classify, exact_sum_capacity
    from .regions import achievable_product_region, max_sum_rate, mses_region, outer_bound

    genie, params = upper_bound(ch, opts)
    upper = min(genie, max_sum_rate(outer_bound(ch))[0])

    report = classify(ch)
    lower = max(lower_bound_tin(ch), max_sum_rate(achievable_product_region(ch))[0])
    for flag, orientation in ((report.mses12, (1, 2)), (report.mses21, (2, 1))):
        if flag:
            lower = max(lower, max_sum_rate(mses_region(ch, orientation))[0])

    exact = exact_sum_capacity(ch)
    value, source = exact if exact is not None else (None, None)
    if value is not None:
        if lower - 1e-6 <= value <= upper + 1e-6:
            lower = upper = value
        else:
            logger.warning(
                "%s value %.9g for %s falls outside [%.9g, %.9g]; keeping the bounds",
                source, value, ch, lower, upper,
            )
    return SumCapacityBounds(
        lower=lower, upper=upper, argmin=params, gap=upper - lower, genie=genie,
        exact=value, source=source,
    )
