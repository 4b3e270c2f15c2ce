"""Gaussian MAC capacity regions as polymatroids.

A MAC with users ``(power_i, gain_i)`` and noise variance ``N`` has the
capacity region

    sum_{i in T} R_i <= 1/2 log2(1 + sum_{i in T} gain_i^2 power_i / N)

for every subset ``T`` of its users. The right-hand side (the rank) is
monotone and submodular, so the region is a polymatroid and linear
objectives over it are maximized greedily.

Users are addressed by label. ``MacSpec.labels`` defaults to ``1..n``;
specs built from an IMAC carry the IMAC user indices instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

TOL = 1e-9
MAX_USERS = 4


@dataclass(frozen=True)
class MacSpec:
    users: tuple[tuple[float, float], ...]
    noise: float = 1.0
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        users = tuple((float(p), float(g)) for p, g in self.users)
        if not users:
            raise ValueError("a MAC needs at least one user")
        if len(users) > MAX_USERS:
            raise ValueError(f"at most {MAX_USERS} users are supported, got {len(users)}")
        for p, g in users:
            if not (p > 0 and math.isfinite(p)):
                raise ValueError(f"user power must be finite and > 0, got {p!r}")
            if not math.isfinite(g):
                raise ValueError(f"user gain must be finite, got {g!r}")
        if not (self.noise > 0 and math.isfinite(self.noise)):
            raise ValueError(f"noise must be finite and > 0, got {self.noise!r}")
        labels = tuple(range(1, len(users) + 1)) if self.labels is None else tuple(self.labels)
        if len(labels) != len(users) or len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct and match the number of users")
        object.__setattr__(self, "users", users)
        object.__setattr__(self, "noise", float(self.noise))
        object.__setattr__(self, "labels", labels)

    @property
    def n_users(self) -> int:
        return len(self.users)

    def mask(self, subset: Iterable[int]) -> int:
        """Bitmask over user positions for a set of labels."""
        m = 0
        for label in subset:
            try:
                m |= 1 << self.labels.index(label)
            except ValueError:
                raise ValueError(f"unknown user {label!r}; spec users are {self.labels}") from None
        return m

    def rank_mask(self, mask: int) -> float:
        snr = sum(g * g * p for k, (p, g) in enumerate(self.users) if mask >> k & 1)
        return 0.5 * math.log2(1.0 + snr / self.noise)

    def subset_masks(self) -> range:
        """All nonempty subset bitmasks."""
        return range(1, 1 << self.n_users)


def rank(spec: MacSpec, subset: Iterable[int]) -> float:
    """Sum-rate bound (bits) for the users in ``subset``; 0 for the empty set."""
    return spec.rank_mask(spec.mask(subset))


def _check_point(spec: MacSpec, point: Sequence[float]) -> list[float]:
    rates = [float(r) for r in point]
    if len(rates) != spec.n_users:
        raise ValueError(f"point has {len(rates)} entries, spec has {spec.n_users} users")
    for r in rates:
        if not math.isfinite(r) or r < -TOL:
            raise ValueError(f"rates must be finite and nonnegative, got {r!r}")
    return rates


def contains(spec: MacSpec, point: Sequence[float], tol: float = TOL) -> bool:
    rates = _check_point(spec, point)
    for m in spec.subset_masks():
        total = sum(r for k, r in enumerate(rates) if m >> k & 1)
        if total > spec.rank_mask(m) + tol:
            return False
    return True


def region_contained_in(inner: MacSpec, outer: MacSpec, tol: float = TOL) -> bool:
    """Whether the capacity region of ``inner`` lies inside that of ``outer``.

    For polymatroids this is rank dominance on every subset, since each rank
    value is attained by a point of the inner region.
    """
    if inner.n_users != outer.n_users:
        raise ValueError(f"user count mismatch: {inner.n_users} vs {outer.n_users}")
    if inner.labels != outer.labels:
        raise ValueError(f"user labels differ: {inner.labels} vs {outer.labels}")
    return all(inner.rank_mask(m) <= outer.rank_mask(m) + tol for m in inner.subset_masks())


def sum_capacity(spec: MacSpec) -> float:
    return spec.rank_mask((1 << spec.n_users) - 1)


def greedy_vertex(spec: MacSpec, order: Sequence[int]) -> list[float]:
    """Corner point from successive decoding: users in ``order`` (labels)
    receive their marginal rank in turn, so the first one gets the most."""
    positions = [spec.mask([label]).bit_length() - 1 for label in order]
    if sorted(positions) != list(range(spec.n_users)):
        raise ValueError(f"order must be a permutation of {spec.labels}")
    rates = [0.0] * spec.n_users
    m = 0
    prev = 0.0
    for k in positions:
        m |= 1 << k
        cur = spec.rank_mask(m)
        rates[k] = cur - prev
        prev = cur
    return rates


def max_weighted_sum(spec: MacSpec, weights: Sequence[float]) -> float:
    """Maximum of ``sum w_i R_i`` over the region, by the greedy algorithm.

    Ties in weight are broken by ascending user position.
    """
    w = [float(x) for x in weights]
    if len(w) != spec.n_users:
        raise ValueError(f"got {len(w)} weights for {spec.n_users} users")
    if any(x < 0 or not math.isfinite(x) for x in w):
        raise ValueError("weights must be finite and nonnegative")
    order = sorted(range(spec.n_users), key=lambda k: (-w[k], k))
    # Abel-summed form of sum_k w_k * marginal_k; exact for equal weights.
    total = 0.0
    m = 0
    for pos, k in enumerate(order):
        m |= 1 << k
        nxt = w[order[pos + 1]] if pos + 1 < len(order) else 0.0
        step = w[k] - nxt
        if step:
            total += step * spec.rank_mask(m)
    return total
