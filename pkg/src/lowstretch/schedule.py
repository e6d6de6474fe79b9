"""Iterated logarithms and the parameter schedules for the decomposition.

All logarithms are base 2 except in :func:`scale_gap_k`, which uses ``ln``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace

from .errors import PreconditionError

PAPER_C = 2 ** 16
MODES = ("paper", "demo")
SCHEDULES = ("basic", "iterated", "fixed")


def iterated_log(x, t):
    """``t``-fold base-2 logarithm; ``t = 0`` returns ``x``."""
    if t < 0:
        raise PreconditionError("t must be nonnegative")
    for _ in range(t):
        if x <= 0:
            raise PreconditionError(f"iterated log undefined: intermediate value {x}")
        x = math.log2(x)
    return x


def log_star(x):
    if x < 2:
        raise PreconditionError("log* needs x >= 2")
    t = 0
    while not (1 <= x < 2):
        x = math.log2(x)
        t += 1
    return t


def phi(n, t):
    """Product of ``log^(k) n`` for ``k = 2..t`` (empty product for ``t = 1``)."""
    if t < 1 or t > log_star(n):
        raise PreconditionError(f"phi needs 1 <= t <= log*(n), got t={t}")
    out = 1.0
    for k in range(2, t + 1):
        out *= iterated_log(n, k)
    return out


def scale_gap_k(eps, c):
    if not (0 < eps <= 1):
        raise PreconditionError("eps must lie in (0, 1]")
    val = 20 * c * (math.log(1 / eps) + 5)
    # guard against ln rounding pushing an integral value just above itself
    return math.ceil(val - 1e-9 * max(1.0, val))


@dataclass(frozen=True)
class Params:
    """Construction constants.

    ``mode="paper"`` pins ``c`` to the published values; ``mode="demo"`` lets
    small graphs actually recurse (the published constants put every graph of
    radius up to 2**20 in the base case).
    """

    c: float = 2
    schedule: str = "fixed"
    eps: float | None = 0.5
    t: int | None = None
    n: int | None = None
    base_radius: float = 1
    seed: int = 0
    mode: str = "demo"
    contraction: float = 0.0
    per_component: bool = False
    shuffle: bool = False
    random_root: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise PreconditionError(f"mode must be one of {MODES}")
        if self.schedule not in SCHEDULES:
            raise PreconditionError(f"schedule must be one of {SCHEDULES}")
        if self.contraction < 0:
            raise PreconditionError("contraction constant must be nonnegative")
        if self.schedule == "fixed":
            if self.mode != "demo":
                raise PreconditionError("fixed eps is only allowed in demo mode")
            if self.eps is None or not (0 < self.eps <= 0.5):
                raise PreconditionError("fixed eps must satisfy 0 < eps <= 1/2")
        if self.schedule == "iterated" and (self.t is None or self.t < 1):
            raise PreconditionError("iterated schedule needs t >= 1")
        if self.mode == "demo":
            if self.c < 2:
                raise PreconditionError("demo mode needs c >= 2")
            if self.base_radius < 0:
                raise PreconditionError("base radius must be nonnegative")
        elif self.schedule == "basic":
            if self.c != PAPER_C:
                raise PreconditionError("paper mode with basic schedule needs c = 2**16")
        else:
            if self.n is None:
                raise PreconditionError("paper mode with iterated schedule needs n")
            want_t = log_star(max(self.n, 2)) // 2
            if self.t != want_t or not math.isclose(self.c, 2 ** 18 * iterated_log(self.n, self.t)):
                raise PreconditionError("paper iterated schedule needs t = floor(log* n / 2) "
                                        "and c = 2**18 log^(t) n")

    @classmethod
    def paper(cls, n=None, schedule="basic", **kw):
        if schedule == "basic":
            return cls(c=PAPER_C, schedule="basic", eps=None, mode="paper", n=n, **kw)
        if schedule != "iterated":
            raise PreconditionError("paper mode supports the basic and iterated schedules")
        if n is None or n < 4:
            raise PreconditionError("iterated schedule needs n >= 4 so that t >= 1")
        t = log_star(n) // 2
        c = 2 ** 18 * iterated_log(n, t)
        return cls(c=c, schedule="iterated", eps=None, t=t, n=n, mode="paper", **kw)

    @classmethod
    def demo(cls, c=2, eps=0.5, base_radius=1, schedule="fixed", t=None, **kw):
        if schedule != "fixed":
            eps = None
        return cls(c=c, schedule=schedule, eps=eps, t=t, base_radius=base_radius,
                   mode="demo", **kw)

    def base_threshold(self):
        return 16 * self.c if self.mode == "paper" else self.base_radius

    def with_seed(self, seed):
        return replace(self, seed=int(seed))

    def to_dict(self):
        return asdict(self)


def epsilon_for(cluster_size, params: Params):
    """Cone-width parameter for a cluster of the given size."""
    if cluster_size < 2:
        raise PreconditionError("cluster must have at least two vertices")
    if params.schedule == "fixed":
        return params.eps
    if params.schedule == "basic":
        ll = math.log2(math.log2(cluster_size)) if cluster_size > 2 else 0.0
        return 1.0 / (170 * params.c * max(1.0, ll))
    size = max(cluster_size, 16)
    t = min(params.t, log_star(size))
    return 1.0 / (170 * params.c * phi(size, t))
