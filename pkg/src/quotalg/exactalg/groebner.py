"""Buchberger's algorithm on sparse dict polynomials.

Polynomials here are plain ``dict[tuple[int, ...], coeff]`` with no zero
coefficients.  ``p`` is the field characteristic (0 for the rationals).

Submodules of free modules are handled by the same code: a module element
is a polynomial carrying ``npos`` trailing position-indicator exponents, and
pairs are only formed between elements in the same position.  The product
criterion is automatically disabled in that case because two terms in the
same position share their indicator variable.
"""

from __future__ import annotations

import heapq
import itertools
from operator import add, le, sub

from gmpy2 import mpq

from ..errors import BudgetExhausted
from . import budget as _budget
from .orders import MonomialOrder


def _inv(c, p):
    return pow(int(c), -1, p) if p else 1 / mpq(c)


def monic(f: dict, order: MonomialOrder, p: int) -> dict:
    lm = order.leading(f)
    c = f[lm]
    if c == 1:
        return f
    ic = _inv(c, p)
    if p:
        return {m: v * ic % p for m, v in f.items()}
    return {m: v * ic for m, v in f.items()}


def _divides(a, b) -> bool:
    return all(map(le, a, b))


def _lcm(a, b):
    return tuple(map(max, a, b))


def _position(e, nvars, npos):
    for c in range(npos):
        if e[nvars + c]:
            return c
    return -1


def poly_mul(f: dict, g: dict, p: int) -> dict:
    out: dict = {}
    for ef, cf in f.items():
        for eg, cg in g.items():
            e = tuple(map(add, ef, eg))
            v = out.get(e, 0) + cf * cg
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def poly_add(f: dict, g: dict, p: int, scale=1) -> dict:
    """Return f + scale*g."""
    out = dict(f)
    for e, c in g.items():
        v = out.get(e, 0) + scale * c
        if p:
            v %= p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _term_mul(g: dict, shift: tuple, c, p: int) -> dict:
    if p:
        return {tuple(map(add, e, shift)): v * c % p for e, v in g.items()}
    return {tuple(map(add, e, shift)): v * c for e, v in g.items()}


class _Basis:
    """Working basis: parallel lists of leading monomials and monic polynomials."""

    def __init__(self):
        self.lms: list[tuple] = []
        self.polys: list[dict] = []
        self.sugar: list[int] = []
        self.cofs: list = []
        self.active: list[int] = []


def reduce(f: dict, lms, polys, order: MonomialOrder, p: int, *, full=True, quotients=None, budget=None):
    """Normal form of ``f`` modulo monic ``polys`` with leading monomials ``lms``.

    With ``quotients`` (a dict) the multipliers are accumulated per basis index,
    so that ``f = sum(quotients[i] * polys[i]) + remainder``.
    """
    if not f:
        return {}
    b = budget or _budget.current()
    f = dict(f)
    negkey = order.neg_key
    heap = [(negkey(m), m) for m in f]
    heapq.heapify(heap)
    rem: dict = {}
    nlm = len(lms)
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = f.get(m)
        if c is None:
            continue
        for i in range(nlm):
            lm = lms[i]
            if _divides(lm, m):
                break
        else:
            del f[m]
            rem[m] = c
            if not full:
                for mm, cc in f.items():
                    rem[mm] = cc
                return rem
            continue
        shift = tuple(map(sub, m, lm))
        if quotients is not None:
            q = quotients.setdefault(i, {})
            v = q.get(shift, 0) + c
            if p:
                v %= p
            if v:
                q[shift] = v
            else:
                q.pop(shift, None)
        del f[m]
        for e, cg in polys[i].items():
            t = tuple(map(add, e, shift))
            if t == m:
                continue
            old = f.get(t)
            if old is None:
                v = -c * cg
                if p:
                    v %= p
                if v:
                    f[t] = v
                    heapq.heappush(heap, (negkey(t), t))
            else:
                v = old - c * cg
                if p:
                    v %= p
                if v:
                    f[t] = v
                else:
                    del f[t]
        steps += 1
        if steps >= 64:
            b.charge(steps)
            steps = 0
    if steps:
        b.charge(steps)
    return rem


def groebner_basis(polys, order: MonomialOrder, p: int, *, npos: int = 0, track: bool = False,
                   budget=None, reduced: bool = True):
    """Gröbner basis of the ideal (or module, when ``npos > 0``) spanned by ``polys``.

    Returns a list of monic dict polynomials sorted by increasing leading
    monomial.  With ``track=True`` returns ``(basis, cofactors)`` where
    ``cofactors[k][j]`` is the multiplier of input ``j`` in ``basis[k]``;
    tracked bases are not interreduced.
    """
    b = budget or _budget.current()
    nvars = order.nvars - npos
    inputs = [dict(f) for f in polys if f]
    ninp = len(polys)
    B = _Basis()
    pairs: list = []
    live: dict = {}
    counter = itertools.count()
    key = order.key

    def sugar_of(f):
        return max(sum(e[:nvars]) for e in f)

    def add_element(h, sug, cof):
        lm_h = order.leading(h)
        k = len(B.polys)
        B.lms.append(lm_h)
        B.polys.append(h)
        B.sugar.append(sug)
        B.cofs.append(cof)
        pos_h = _position(lm_h, nvars, npos)
        # Gebauer-Moeller update
        cand = []
        for g in B.active:
            lm_g = B.lms[g]
            if npos and _position(lm_g, nvars, npos) != pos_h:
                continue
            cand.append((g, _lcm(lm_h, lm_g)))
        kept = []
        for idx, (g, l) in enumerate(cand):
            coprime = not npos and all(x == 0 or y == 0 for x, y in zip(lm_h, B.lms[g]))
            if coprime:
                kept.append((g, l, True))
                continue
            dominated = False
            for g2, l2 in itertools.chain(cand[idx + 1:], ((k2[0], k2[1]) for k2 in kept)):
                if g2 != g and _divides(l2, l) and (l2 != l or g2 in [kk[0] for kk in kept]):
                    dominated = True
                    break
            if not dominated:
                kept.append((g, l, False))
        for pair, l in list(live.items()):
            g1, g2 = pair
            if _divides(lm_h, l) and _lcm(B.lms[g1], lm_h) != l and _lcm(lm_h, B.lms[g2]) != l:
                del live[pair]
        for g, l, coprime in kept:
            if coprime:
                continue
            sg = max(B.sugar[g] + sum(l[:nvars]) - sum(B.lms[g][:nvars]), sug + sum(l[:nvars]) - sum(lm_h[:nvars]))
            pair = (g, k)
            live[pair] = l
            heapq.heappush(pairs, (sg, key(l), next(counter), pair))
        B.active = [g for g in B.active if not _divides(lm_h, B.lms[g])] + [k]

    def reduce_tracked(f, cof):
        act = B.active
        lms = [B.lms[i] for i in act]
        pls = [B.polys[i] for i in act]
        if not track:
            return reduce(f, lms, pls, order, p, budget=b), None
        quot: dict = {}
        r = reduce(f, lms, pls, order, p, quotients=quot, budget=b)
        for ii, q in quot.items():
            src = B.cofs[act[ii]]
            for j in range(ninp):
                if src[j]:
                    cof[j] = poly_add(cof[j], poly_mul(q, src[j], p), p, -1)
        return r, cof

    def normalise(h, cof):
        lm = order.leading(h)
        c = h[lm]
        if c == 1:
            return h, cof
        ic = _inv(c, p)
        h = {m: (v * ic % p if p else v * ic) for m, v in h.items()}
        if cof is not None:
            cof = [{m: (v * ic % p if p else v * ic) for m, v in cj.items()} for cj in cof]
        return h, cof

    unit_found = False
    for j, f in enumerate(polys):
        if not f:
            continue
        cof = [dict() for _ in range(ninp)] if track else None
        if track:
            cof[j] = {(0,) * order.nvars: 1}
        h, cof = reduce_tracked(f, cof)
        if not h:
            continue
        h, cof = normalise(h, cof)
        add_element(h, sugar_of(h), cof)
        if not npos and not any(B.lms[-1]):
            unit_found = True
            break

    while pairs and not unit_found:
        sg, _, _, pair = heapq.heappop(pairs)
        l = live.pop(pair, None)
        if l is None:
            continue
        i, j = pair
        si = tuple(map(sub, l, B.lms[i]))
        sj = tuple(map(sub, l, B.lms[j]))
        s = poly_add(_term_mul(B.polys[i], si, 1, p), _term_mul(B.polys[j], sj, 1, p), p, -1)
        cof = None
        if track:
            one = {si: 1}
            onej = {sj: 1}
            cof = [poly_add(poly_mul(one, B.cofs[i][t], p), poly_mul(onej, B.cofs[j][t], p), p, -1)
                   for t in range(ninp)]
        b.charge(1, "groebner")
        h, cof = reduce_tracked(s, cof)
        if not h:
            continue
        h, cof = normalise(h, cof)
        add_element(h, sg, cof)
        if not npos and not any(B.lms[-1]):
            unit_found = True

    if unit_found:
        k = len(B.polys) - 1
        basis = [B.polys[k]]
        if track:
            return basis, [B.cofs[k]]
        return basis

    act = sorted(B.active, key=lambda g: key(B.lms[g]))
    if track:
        return [B.polys[g] for g in act], [B.cofs[g] for g in act]
    if not reduced:
        return [B.polys[g] for g in act]
    # interreduce: leading monomials are already minimal, reduce tails
    lms = [B.lms[g] for g in act]
    pls = [B.polys[g] for g in act]
    out = []
    for t, g in enumerate(act):
        others_l = lms[:t] + lms[t + 1:]
        others_p = pls[:t] + pls[t + 1:]
        lm = lms[t]
        f = dict(pls[t])
        c = f.pop(lm)
        tail = reduce(f, others_l, others_p, order, p, budget=b)
        tail[lm] = c
        out.append(monic(tail, order, p))
        pls[t] = out[-1]
    return out


def lift(f: dict, basis, cofactors, order: MonomialOrder, p: int, ninputs: int):
    """Express ``f`` through the inputs of a tracked basis; ``None`` if ``f`` is not in the ideal."""
    lms = [order.leading(g) for g in basis]
    quot: dict = {}
    r = reduce(f, lms, basis, order, p, quotients=quot)
    if r:
        return None
    out = [dict() for _ in range(ninputs)]
    for i, q in quot.items():
        for j in range(ninputs):
            if cofactors[i][j]:
                out[j] = poly_add(out[j], poly_mul(q, cofactors[i][j], p), p)
    return out


__all__ = ["groebner_basis", "reduce", "lift", "poly_mul", "poly_add", "monic", "BudgetExhausted"]
