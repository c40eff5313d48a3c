"""Submodules of free modules over a presented algebra: membership and syzygies.

A row vector ``(r_1, ..., r_m)`` over ``R = k[x]/I`` is encoded as the
polynomial ``sum r_i * e_i`` in ``k[x, e_1..e_m]`` with position-over-term
order; ``I * e_j`` is added so that everything is computed modulo I.
"""

from __future__ import annotations

from .algebra import PresentedAlgebra
from .groebner import groebner_basis, reduce as _reduce
from .orders import degrevlex, position_over_term
from .poly import Poly


def _encode(row, alg: PresentedAlgebra, offset: int, npos: int) -> dict:
    n = alg.ring.nvars
    out = {}
    for i, r in enumerate(row):
        r = alg.parse(r)
        for e, c in r.terms.items():
            pos = [0] * npos
            pos[offset + i] = 1
            out[tuple(e) + tuple(pos)] = c
    return out


def _decode(f: dict, alg: PresentedAlgebra, offset: int, width: int) -> list:
    n = alg.ring.nvars
    parts = [dict() for _ in range(width)]
    for e, c in f.items():
        for i in range(width):
            if e[n + offset + i]:
                parts[i][e[:n]] = c
                break
    return [Poly(alg.ring, t) for t in parts]


def _rel_inputs(alg: PresentedAlgebra, npos: int, positions) -> list:
    n = alg.ring.nvars
    out = []
    for g in alg.ideal.generators:
        for j in positions:
            pos = tuple(int(t == j) for t in range(npos))
            out.append({tuple(e) + pos: c for e, c in g.terms.items()})
    return out


class Submodule:
    """The submodule of ``alg^m`` generated by ``rows``."""

    def __init__(self, alg: PresentedAlgebra, rows, m: int):
        self.alg = alg
        self.m = m
        self.rows = [[alg.reduce(alg.parse(x)) for x in r] for r in rows]
        n = alg.ring.nvars
        self.order = position_over_term(degrevlex(n), m)
        inputs = [_encode(r, alg, 0, m) for r in self.rows]
        inputs += _rel_inputs(alg, m, range(m))
        self.basis = groebner_basis(inputs, self.order, alg.field.p, npos=m) if m else []
        self.lms = [self.order.leading(b) for b in self.basis]

    def normal_form(self, row) -> list:
        if not self.m:
            return []
        f = _encode(row, self.alg, 0, self.m)
        return _decode(_reduce(f, self.lms, self.basis, self.order, self.alg.field.p), self.alg, 0, self.m)

    def contains(self, row) -> bool:
        return all(x.is_zero() for x in self.normal_form(row))

    def contains_all(self, rows) -> bool:
        return all(self.contains(r) for r in rows)

    def is_everything(self) -> bool:
        return all(self.contains([int(i == j) for i in range(self.m)]) for j in range(self.m))


def syzygies(alg: PresentedAlgebra, rows, m: int) -> list:
    """Generators of ``{a : sum a_i rows_i = 0 in alg^m}``, as rows of length ``len(rows)``."""
    s = len(rows)
    if s == 0:
        return []
    npos = m + s
    n = alg.ring.nvars
    order = position_over_term(degrevlex(n), npos)
    inputs = []
    for i, r in enumerate(rows):
        f = _encode(r, alg, 0, npos)
        pos = [0] * npos
        pos[m + i] = 1
        f[(0,) * n + tuple(pos)] = 1
        inputs.append(f)
    inputs += _rel_inputs(alg, npos, range(m))
    gb = groebner_basis(inputs, order, alg.field.p, npos=npos)
    out = []
    for g in gb:
        lm = order.leading(g)
        if any(lm[n:n + m]):
            continue
        row = [alg.reduce(x) for x in _decode(g, alg, m, s)]
        if any(not x.is_zero() for x in row):
            out.append(row)
    return out


def preimage(alg: PresentedAlgebra, D, relations, m: int) -> list:
    """Generators of ``{x in alg^N : x·D lies in the span of relations}`` (N = len(D))."""
    N = len(D)
    syz = syzygies(alg, list(D) + list(relations), m)
    out = []
    for row in syz:
        head = row[:N]
        if any(not x.is_zero() for x in head):
            out.append(head)
    return out


def unit_rows(alg: PresentedAlgebra, m: int) -> list:
    return [[alg.one() if i == j else alg.zero() for i in range(m)] for j in range(m)]
