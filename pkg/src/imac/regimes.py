"""Interference-regime classification and exact sum capacities.

All margins are ``lhs - rhs`` in linear power units; a condition holds when
its margin is ``>= -TOL``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .channel import ImacChannel
from .polymatroid import TOL


class RegimeError(ValueError):
    """A region was requested for a channel outside its regime."""

    def __init__(self, regime: str, reason: str, margin: float):
        self.regime = regime
        self.margin = margin
        super().__init__(f"{regime} does not hold: {reason} (margin {margin:.9g})")


def _holds(*margins: float) -> bool:
    return all(m >= -TOL for m in margins)


def mses_margins(ch: ImacChannel, i: int, j: int) -> tuple[float, float]:
    """``(extremely strong margin, strong margin)`` for MSES(i, j)."""
    h = {1: ch.h1, 2: ch.h2}
    p = {1: ch.p1, 2: ch.p2}
    extreme = h[j] ** 2 - (1 + ch.p1 + ch.p2 + h[i] ** 2 * p[i])
    strong = h[i] ** 2 - 1
    return extreme, strong


def ivs_margins(ch: ImacChannel) -> tuple[float, float]:
    threshold = 1 + ch.p1 + ch.p2
    return ch.h1**2 - threshold, ch.h2**2 - threshold


def vsc_margin(ch: ImacChannel) -> float:
    total = ch.p1 + ch.p2
    return ch.h1**2 * ch.p1 + ch.h2**2 * ch.p2 - total * (1 + total)


@dataclass(frozen=True)
class RegimeReport:
    mses12: bool
    mses21: bool
    ivs: bool
    vsc: bool
    margins: dict[str, float] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "mses12": self.mses12,
            "mses21": self.mses21,
            "ivs": self.ivs,
            "vsc": self.vsc,
            "margins": {k: float(f"{v:.9g}") for k, v in self.margins.items()},
        }


def classify(ch: ImacChannel) -> RegimeReport:
    e12, s12 = mses_margins(ch, 1, 2)
    e21, s21 = mses_margins(ch, 2, 1)
    i1, i2 = ivs_margins(ch)
    v = vsc_margin(ch)
    margins = {
        "mses12_extreme": e12,
        "mses12_strong": s12,
        "mses21_extreme": e21,
        "mses21_strong": s21,
        "ivs_h1": i1,
        "ivs_h2": i2,
        "vsc": v,
    }
    return RegimeReport(
        mses12=_holds(e12, s12),
        mses21=_holds(e21, s21),
        ivs=_holds(i1, i2),
        vsc=_holds(v),
        margins=margins,
    )


def exact_sum_capacity(ch: ImacChannel) -> tuple[float, str] | None:
    """Sum capacity and a tag naming the regime that yields it, or None.

    The closed form ``log2(1 + p1 + p2)`` is preferred whenever very strong
    combined interference holds.
    """
    from .regions import max_sum_rate, mses_region

    report = classify(ch)
    if report.vsc:
        return math.log2(1 + ch.p1 + ch.p2), "very-strong-combined"
    for flag, orientation in ((report.mses12, (1, 2)), (report.mses21, (2, 1))):
        if flag:
            return max_sum_rate(mses_region(ch, orientation))[0], "mixed-strong-extremely-strong"
    if report.ivs:
        return math.log2(1 + ch.p1 + ch.p2), "individually-very-strong"
    return None
