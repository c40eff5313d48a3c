"""Finite fields GF(q) and a brute-force rational point oracle."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ..errors import BudgetExhausted, InputError
from . import budget as _budget


def prime_power(q: int):
    """``(p, k)`` with ``q == p**k``; raises InputError otherwise."""
    if q < 2:
        raise InputError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise InputError(f"{q} is not a prime power")
    return p, k


def _polymulmod(a, b, mod, p):
    k = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            for j in range(k + 1):
                out[d - k + j] = (out[d - k + j] - c * mod[j]) % p
    return (out + [0] * k)[:k]


def _is_irreducible(mod, p):
    """Brute force: no monic factor of degree 1..k//2."""
    k = len(mod) - 1
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            f = list(tail) + [1]
            # polynomial remainder of mod by f
            r = list(mod)
            for i in range(len(r) - 1, d - 1, -1):
                c = r[i]
                if c:
                    for j in range(d + 1):
                        r[i - d + j] = (r[i - d + j] - c * f[j]) % p
            if not any(r[:d]):
                return False
    return True


class FiniteField:
    """GF(q). Elements are ints ``0..q-1``: the base-p digits are coefficients of a
    polynomial in a root of the chosen irreducible modulus. Elements ``0..p-1`` are
    the prime subfield."""

    def __init__(self, q: int):
        self.q = q
        self.p, self.k = prime_power(q)
        p, k = self.p, self.k
        if k == 1:
            self.modulus = [0, 1]
        else:
            for tail in product(range(p), repeat=k):
                mod = list(reversed(tail)) + [1]
                if mod[0] and _is_irreducible(mod, p):
                    self.modulus = mod
                    break
        self._digits = [self._to_digits(n) for n in range(q)]
        self._exp, self._log = self._log_tables()

    def _to_digits(self, n):
        d = []
        for _ in range(self.k):
            d.append(n % self.p)
            n //= self.p
        return d

    def _from_digits(self, d):
        n = 0
        for x in reversed(d):
            n = n * self.p + x
        return n

    def _slow_mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        return self._from_digits(_polymulmod(self._digits[a], self._digits[b], self.modulus, self.p))

    def _log_tables(self):
        q = self.q
        for g in range(2, q) if q > 2 else [1]:
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._slow_mul(x, g)
            if len(exp) == q - 1:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                return exp, log
        raise AssertionError("no primitive element found")

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.q == other.q

    def __hash__(self):
        return hash(("GF", self.q))

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._digits[a], self._digits[b]
        return self._from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        return self._from_digits([-x % self.p for x in self._digits[a]])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def pow(self, a, n):
        if n == 0:
            return 1
        if not a:
            return 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in GF(q)")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def coerce(self, c):
        return int(c) % self.p

    def evaluate(self, f, values):
        """Value of a Poly at ``values`` (one field element per ring variable)."""
        total = 0
        for e, c in f.terms.items():
            v = self.coerce(c)
            for x, k in zip(values, e):
                if k:
                    v = self.mul(v, self.pow(x, k))
                    if not v:
                        break
            if v:
                total = self.add(total, v)
        return total


@lru_cache(maxsize=32)
def finite_field(q: int) -> FiniteField:
    return FiniteField(q)


@dataclass(frozen=True)
class FqPoint:
    """A point with coordinates in GF(q), listed for the user-facing variables."""

    variables: tuple
    values: tuple
    q: int

    def as_dict(self):
        return dict(zip(self.variables, self.values))

    def __str__(self):
        return "(" + ", ".join(f"{v}={x}" for v, x in zip(self.variables, self.values)) + ")"


def _ring_values(alg, F, values):
    """Extend user-variable values by the inverses for the hidden companions."""
    full = list(values)
    for v in alg.inverted:
        full.append(F.inv(values[alg.variables.index(v)]))
    return full


def evaluate(alg, f, point: FqPoint, F: FiniteField | None = None):
    F = F or finite_field(point.q)
    return F.evaluate(alg.parse(f), _ring_values(alg, F, point.values))


def rational_points(alg, q: int, cap: int | None = None):
    """All GF(q)-points of ``alg`` by exhaustive backtracking enumeration.

    Inverted variables only take nonzero values.  ``cap`` bounds the number of
    search nodes; exceeding it raises BudgetExhausted (never a partial answer).
    """
    F = finite_field(q)
    if alg.field.p != F.p:
        raise InputError(f"coefficient field {alg.field} does not embed in GF({q})")
    if cap is None:
        b = _budget.current()
        cap = b.points if b.points != float("inf") else _budget.DEFAULT_POINT_CAP
    n = len(alg.variables)
    ring = alg.ring
    # level at which each relation becomes fully evaluable
    owner = {}
    for i, v in enumerate(alg.variables):
        owner[ring.index[v]] = i
    for v in alg.inverted:
        owner[ring.index[alg.inverse_names[v]]] = alg.variables.index(v)
    by_level = [[] for _ in range(n + 1)]
    for r in alg.relations:
        lvl = max((owner[j] + 1 for e in r.terms for j, x in enumerate(e) if x), default=0)
        by_level[lvl].append(r)
    inv_pos = {alg.variables.index(v): ring.index[alg.inverse_names[v]] for v in alg.inverted}
    nodes = 0
    for r in by_level[0]:
        if F.evaluate(r, [0] * ring.nvars):
            return []
    out = []
    vals = [0] * ring.nvars

    def rec(i):
        nonlocal nodes
        if i == n:
            out.append(FqPoint(alg.variables, tuple(vals[:n]), q))
            return
        choices = F.nonzero() if i in inv_pos else F.elements()
        for x in choices:
            nodes += 1
            if nodes > cap:
                raise BudgetExhausted("points", cap)
            vals[i] = x
            if i in inv_pos:
                vals[inv_pos[i]] = F.inv(x)
            if all(F.evaluate(r, vals) == 0 for r in by_level[i + 1]):
                rec(i + 1)
        vals[i] = 0
        if i in inv_pos:
            vals[inv_pos[i]] = 0

    rec(0)
    return out


def map_point(m, point: FqPoint) -> FqPoint:
    """Image of a point of ``m.target`` under ``Spec m``, i.e. a point of ``m.source``."""
    F = finite_field(point.q)
    full = _ring_values(m.target, F, point.values)
    src = m.source
    values = tuple(F.evaluate(m.images[src.ring.index[v]], full) for v in src.variables)
    return FqPoint(src.variables, values, point.q)
