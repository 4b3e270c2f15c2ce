"""Four-dimensional IMAC rate polytopes and exact sum-rate maximization.

Every region here is an intersection of MAC capacity regions, so it is a
polytope in ``R_+^4`` described by constraints ``sum_{i in mask} R_i <= rhs``
with 0/1 coefficient rows. Masks are bitmasks with bit ``u - 1`` for user
``u``.

Linear objectives are maximized by enumerating every basis of four active
constraints (nonnegativity facets included). With at most 15 distinct masks
that is a few thousand 4x4 solves, which is cheap and has no cycling or
pivoting issues.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .channel import ImacChannel, mac_spec
from .polymatroid import TOL, MacSpec

DIM = 4
SINGULAR_DET = 1e-12


class RatePoint4(NamedTuple):
    r1: float
    r2: float
    r3: float
    r4: float


def users_to_mask(users: Iterable[int]) -> int:
    m = 0
    for u in users:
        if u not in (1, 2, 3, 4):
            raise ValueError(f"unknown user {u!r}")
        m |= 1 << (u - 1)
    return m


def mask_to_users(mask: int) -> list[int]:
    return [u for u in range(1, DIM + 1) if mask >> (u - 1) & 1]


@dataclass(frozen=True)
class RatePolytope:
    """``{R >= 0 : sum_{i in mask} R_i <= rhs for every (mask, rhs)}``.

    Constraints are stored one per mask (the smallest rhs wins), sorted by
    mask so equal regions compare equal.
    """

    constraints: tuple[tuple[int, float], ...]

    def __post_init__(self):
        best: dict[int, float] = {}
        for mask, rhs in self.constraints:
            mask = int(mask)
            rhs = float(rhs)
            if not 0 < mask < 1 << DIM:
                raise ValueError(f"constraint mask {mask!r} is not a nonempty subset of 4 users")
            if not (math.isfinite(rhs) and rhs >= 0):
                raise ValueError(f"constraint rhs must be finite and >= 0, got {rhs!r}")
            best[mask] = min(rhs, best.get(mask, math.inf))
        covered = 0
        for mask in best:
            covered |= mask
        if covered != (1 << DIM) - 1:
            missing = mask_to_users(~covered & ((1 << DIM) - 1))
            raise ValueError(f"polytope is unbounded along users {missing}")
        object.__setattr__(self, "constraints", tuple(sorted(best.items())))

    @classmethod
    def from_macs(cls, *specs: MacSpec) -> "RatePolytope":
        """Intersection of MAC regions; each spec's labels are IMAC user indices."""
        rows = []
        for spec in specs:
            for m in spec.subset_masks():
                users = [spec.labels[k] for k in range(spec.n_users) if m >> k & 1]
                rows.append((users_to_mask(users), spec.rank_mask(m)))
        return cls(tuple(rows))

    def rhs(self, users: Iterable[int]) -> float | None:
        """Bound on the rate sum over ``users``, or None if unconstrained."""
        return dict(self.constraints).get(users_to_mask(users))

    def to_json(self) -> list[dict]:
        return [
            {"mask": mask_to_users(mask), "rhs_bits": float(f"{rhs:.9g}")}
            for mask, rhs in self.constraints
        ]

    @classmethod
    def from_json(cls, data: Sequence[dict]) -> "RatePolytope":
        return cls(tuple((users_to_mask(c["mask"]), c["rhs_bits"]) for c in data))

    def matrix(self) -> tuple[np.ndarray, np.ndarray]:
        """Constraint rows ``A R <= b`` including ``-R_i <= 0``."""
        a = [[float(mask >> k & 1) for k in range(DIM)] for mask, _ in self.constraints]
        b = [rhs for _, rhs in self.constraints]
        a = np.vstack([np.array(a), -np.eye(DIM)])
        b = np.concatenate([np.array(b), np.zeros(DIM)])
        return a, b


def member(poly: RatePolytope, p: Sequence[float], tol: float = TOL) -> bool:
    p = [float(x) for x in p]
    if len(p) != DIM:
        raise ValueError(f"expected 4 rates, got {len(p)}")
    if any(x < -tol for x in p):
        return False
    for mask, rhs in poly.constraints:
        if sum(x for k, x in enumerate(p) if mask >> k & 1) > rhs + tol:
            return False
    return True


def _bases(n_rows: int) -> np.ndarray:
    return np.array(list(itertools.combinations(range(n_rows), DIM)), dtype=np.intp)


def basic_feasible_points(poly: RatePolytope, tol: float = TOL) -> np.ndarray:
    """All basic feasible solutions, one per nonsingular feasible basis
    (duplicates kept), as an ``(n, 4)`` array."""
    a, b = poly.matrix()
    idx = _bases(len(b))
    sub_a = a[idx]
    det = np.linalg.det(sub_a)
    ok = np.abs(det) >= SINGULAR_DET
    sub_a, sub_b = sub_a[ok], b[idx[ok]]
    x = np.linalg.solve(sub_a, sub_b[..., None])[..., 0]
    feasible = np.all(x @ a.T <= b + tol, axis=1)
    x = x[feasible]
    return np.where(np.abs(x) < tol, 0.0, x)


def max_linear(poly: RatePolytope, weights: Sequence[float]) -> tuple[float, RatePoint4]:
    """Maximize ``weights . R`` over ``poly``.

    Among optimal basic points (within tolerance) the lexicographically
    smallest one is returned.
    """
    w = np.asarray(weights, dtype=float)
    if w.shape != (DIM,):
        raise ValueError(f"expected 4 weights, got shape {w.shape}")
    x = basic_feasible_points(poly)
    if len(x) == 0:
        raise RuntimeError("no feasible basic point; the origin should always be one")
    obj = x @ w
    best = obj.max()
    cand = x[obj >= best - TOL]
    key = np.round(cand, 12)
    pick = cand[np.lexsort(key.T[::-1])[0]]
    return float(pick @ w), RatePoint4(*(float(v) for v in pick))


def max_sum_rate(poly: RatePolytope) -> tuple[float, RatePoint4]:
    return max_linear(poly, np.ones(DIM))


def outer_bound(ch: ImacChannel) -> RatePolytope:
    """Genie-aided outer bound on the IMAC capacity region.

    The interference-free MACs always bound each cell. If ``h^2 >= 1`` for a
    cross link, a receiver can also decode the user behind that link, adding
    the corresponding three-user MAC constraints at both receivers.
    """
    specs = [mac_spec(ch, (1, 2), 1), mac_spec(ch, (3, 4), 2)]
    if ch.h1**2 >= 1:
        specs += [mac_spec(ch, (1, 2, 3), 1), mac_spec(ch, (1, 3, 4), 2)]
    if ch.h2**2 >= 1:
        specs += [mac_spec(ch, (1, 2, 4), 1), mac_spec(ch, (2, 3, 4), 2)]
    return RatePolytope.from_macs(*specs)


def mses_region(ch: ImacChannel, orientation: tuple[int, int] = (1, 2)) -> RatePolytope:
    """Capacity region under mixed strong / extremely strong interference.

    ``orientation = (i, j)`` names the strong link ``h_i`` and the extremely
    strong link ``h_j``. Each receiver strips the extremely strong interferer
    first, leaving a three-user MAC.
    """
    from .regimes import RegimeError, mses_margins

    orientation = tuple(orientation)
    if orientation not in ((1, 2), (2, 1)):
        raise ValueError(f"orientation must be (1, 2) or (2, 1), got {orientation!r}")
    extreme, strong = mses_margins(ch, *orientation)
    if extreme < -TOL or strong < -TOL:
        failed, margin = ("extremely strong", extreme) if extreme < -TOL else ("strong", strong)
        raise RegimeError(f"MSES{orientation}", f"{failed} condition fails", margin)
    if orientation == (1, 2):
        return RatePolytope.from_macs(mac_spec(ch, (1, 2, 3), 1), mac_spec(ch, (1, 3, 4), 2))
    return RatePolytope.from_macs(mac_spec(ch, (1, 2, 4), 1), mac_spec(ch, (2, 3, 4), 2))


def ivs_region(ch: ImacChannel) -> RatePolytope:
    """Interference-free product region, the capacity region under individually
    very strong interference."""
    from .regimes import RegimeError, ivs_margins

    m1, m2 = ivs_margins(ch)
    if min(m1, m2) < -TOL:
        raise RegimeError("IVS", "h1^2 and h2^2 must both be >= 1 + p1 + p2", min(m1, m2))
    return RatePolytope.from_macs(mac_spec(ch, (1, 2), 1), mac_spec(ch, (3, 4), 2))


def achievable_product_region(ch: ImacChannel) -> RatePolytope:
    """Rates reachable by decoding both interferers first (desired signals as
    noise), then the desired pair interference-free.

    Defined for every channel; with zero cross gains it collapses to the origin.
    """
    n = 1 + ch.p1 + ch.p2
    return RatePolytope.from_macs(
        mac_spec(ch, (1, 2), 1),
        mac_spec(ch, (1, 2), 2, n),
        mac_spec(ch, (3, 4), 2),
        mac_spec(ch, (3, 4), 1, n),
    )
