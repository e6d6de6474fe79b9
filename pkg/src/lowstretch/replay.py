"""Decision-trie cache for repeated builds on exact-length graphs.

On a graph with integer lengths the sets produced by one star partition
depend on its random draws only through a few integers: the integer part
of every scaled radius and the coin outcomes.  Each draw site labels its
draw with a recipe (``note``), so a trie over those integers can map a
fresh stream straight to a cached partition.  Trials still consume exactly
the same draws from their stream; they just skip the set computations.

Cached partitions carry the radii of the trial that first reached them,
so this path is used only when no trace is requested.
"""
from __future__ import annotations

import math

from .errors import InternalConsistencyError
from .graph import memo
from .schedule import epsilon_for


class _Replay:
    """rng stand-in: serves given raw draws first, then fresh ones, and logs labels."""

    def __init__(self, rng, prefix):
        self.rng = rng
        self.prefix = prefix
        self.i = 0
        self.raw = None
        self.log = []

    def _next(self, fresh):
        if self.i < len(self.prefix):
            v = self.prefix[self.i]
        else:
            v = fresh()
        self.i += 1
        self.raw = v
        return v

    def random(self):
        return self._next(self.rng.random)

    def getrandbits(self, k):
        if k != 1:
            raise InternalConsistencyError("replay only labels single coin flips")
        return self._next(lambda: self.rng.getrandbits(1))

    def note(self, recipe, key):
        self.log.append((recipe, key))


def _draw(rng, recipe):
    if recipe[0] == "bit":
        raw = rng.getrandbits(1)
        return raw, raw
    _, lo, w, hi, scale = recipe
    raw = rng.random()
    return raw, math.floor(min(lo + w * raw, hi) * scale)


def cached_partition(g, X, x0, Q, params, rng):
    """Same clusters, portals and queues as ``star_partition`` for unit graphs."""
    from .star import star_partition

    eps = epsilon_for(len(X), params)
    root = memo(g, X, ("trie", X, x0, Q, eps, params.c), dict, size=len(X))
    node = root
    raws = []
    while True:
        leaf = node.get("leaf")
        if leaf is not None:
            return leaf
        recipe = node.get("recipe")
        if recipe is None:
            break
        raw, key = _draw(rng, recipe)
        raws.append(raw)
        nxt = node["kids"].get(key)
        if nxt is None:
            break
        node = nxt
    rep = _Replay(rng, raws)
    dec = star_partition(g, X, x0, Q, params, rep)
    if rep.i != len(rep.log):
        raise InternalConsistencyError("an unlabelled draw reached the replay cache")
    node = root
    for recipe, key in rep.log:
        if node.setdefault("recipe", recipe) != recipe:
            raise InternalConsistencyError("draw recipes disagree along a trie path")
        node = node.setdefault("kids", {}).setdefault(key, {})
    node["leaf"] = dec
    return dec
