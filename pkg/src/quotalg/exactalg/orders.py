"""Monomial orders as key functions on exponent tuples.

Every order maps an exponent tuple to a flat tuple of ints; comparing the
keys with ``<`` compares the monomials.  Flat int keys make negation cheap,
which the heap-based reduction loop relies on.
"""

from __future__ import annotations


class MonomialOrder:
    __slots__ = ("name", "nvars", "_key", "_neg_cache")

    def __init__(self, name: str, nvars: int, key):
        self.name = name
        self.nvars = nvars
        self._key = key
        self._neg_cache: dict = {}

    def key(self, exp: tuple) -> tuple:
        return self._key(exp)

    def neg_key(self, exp: tuple) -> tuple:
        """Negated key, for use in a min-heap that should pop the largest monomial."""
        k = self._neg_cache.get(exp)
        if k is None:
            k = tuple(-x for x in self._key(exp))
            if len(self._neg_cache) < 500_000:
                self._neg_cache[exp] = k
        return k

    def leading(self, monomials):
        return max(monomials, key=self._key)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == other.name and self.nvars == other.nvars

    def __hash__(self):
        return hash((self.name, self.nvars))

    def __repr__(self):
        return f"MonomialOrder({self.name!r}, {self.nvars})"


def _drl(lo: int, hi: int):
    idx = tuple(range(hi - 1, lo - 1, -1))

    def key(e):
        return (sum(e[lo:hi]),) + tuple(-e[i] for i in idx)

    return key


def degrevlex(nvars: int) -> MonomialOrder:
    idx = tuple(range(nvars - 1, -1, -1))

    def key(e):
        return (sum(e),) + tuple(-e[i] for i in idx)

    return MonomialOrder("degrevlex", nvars, key)


def lex(nvars: int) -> MonomialOrder:
    return MonomialOrder("lex", nvars, tuple)


def elimination(nvars: int, k: int) -> MonomialOrder:
    """Block order: degrevlex on the first ``k`` variables, ties broken by degrevlex on the rest.

    Any polynomial whose leading monomial avoids the first block lies
    entirely in the second block, so this eliminates the first ``k`` variables.
    """
    first, second = _drl(0, k), _drl(k, nvars)

    def key(e):
        return first(e) + second(e)

    return MonomialOrder(f"elim{k}", nvars, key)


def position_over_term(base: MonomialOrder, npos: int) -> MonomialOrder:
    """Order for module elements encoded with ``npos`` trailing position indicators.

    Position 0 is the largest; within a position the base order decides.
    """
    n = base.nvars
    bkey = base._key

    def key(e):
        pos = 0
        for c in range(npos):
            if e[n + c]:
                pos = npos - c
                break
        return (pos,) + bkey(e[:n])

    return MonomialOrder(f"pot{npos}:{base.name}", n + npos, key)


def by_name(name: str, nvars: int) -> MonomialOrder:
    if name == "degrevlex":
        return degrevlex(nvars)
    if name == "lex":
        return lex(nvars)
    if name.startswith("elim"):
        return elimination(nvars, int(name[4:]))
    raise ValueError(f"unknown monomial order {name!r}")
