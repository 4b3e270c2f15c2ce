"""Two-cell interfering Gaussian MAC (IMAC) parameterization.

Receiver 1 observes ``X1 + X2 + h1 X3 + h2 X4 + Z1`` and receiver 2
observes ``h1 X1 + h2 X2 + X3 + X4 + Z2`` with unit-variance noise.
Users 3 and 4 mirror users 1 and 2, so their powers are ``p1`` and ``p2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .polymatroid import MacSpec

USERS = (1, 2, 3, 4)


@dataclass(frozen=True)
class ImacChannel:
    """Channel tuple ``(p1, p2, h1, h2)``.

    Gains are kept signed; only the genie bound consumes them unsquared.
    """

    p1: float
    p2: float
    h1: float
    h2: float

    def __post_init__(self):
        for name in ("p1", "p2", "h1", "h2"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ValueError(f"{name} must be a real number, got {value!r}") from None
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        for name in ("p1", "p2"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)!r}")

    def power(self, user: int) -> float:
        if user not in USERS:
            raise ValueError(f"unknown user {user!r}; expected one of {USERS}")
        return self.p1 if user in (1, 3) else self.p2

    def gain(self, user: int, receiver: int) -> float:
        """Amplitude gain from transmitter ``user`` to ``receiver``."""
        if receiver not in (1, 2):
            raise ValueError(f"receiver must be 1 or 2, got {receiver!r}")
        if user not in USERS:
            raise ValueError(f"unknown user {user!r}; expected one of {USERS}")
        own_cell = (1, 2) if receiver == 1 else (3, 4)
        if user in own_cell:
            return 1.0
        return self.h1 if user in (1, 3) else self.h2


def new_channel(p1: float, p2: float, h1: float, h2: float) -> ImacChannel:
    return ImacChannel(p1, p2, h1, h2)


def inr(ch: ImacChannel) -> float:
    """Interference-to-noise ratio ``h1^2 p1 + h2^2 p2`` (same at both receivers)."""
    return ch.h1**2 * ch.p1 + ch.h2**2 * ch.p2


def mac_spec(ch: ImacChannel, users: Iterable[int], receiver: int, noise: float = 1.0) -> MacSpec:
    """The MAC from ``users`` to ``receiver`` with noise variance ``noise``.

    Users are ordered by ascending index and labelled with their IMAC index.
    """
    users = sorted(set(users))
    if not users:
        raise ValueError("users must be a nonempty subset of {1, 2, 3, 4}")
    if receiver not in (1, 2):
        raise ValueError(f"receiver must be 1 or 2, got {receiver!r}")
    if not (noise > 0 and math.isfinite(noise)):
        raise ValueError(f"noise must be a finite positive variance, got {noise!r}")
    return MacSpec(
        users=tuple((ch.power(u), ch.gain(u, receiver)) for u in users),
        noise=noise,
        labels=tuple(users),
    )
