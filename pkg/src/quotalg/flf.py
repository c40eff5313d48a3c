"""Finite free algebras over a base: bases, multiplication matrices, norms, traces.

The total algebra is presented over its own polynomial ring; base elements
enter through tag variables ``_b*`` in an elimination order that ranks the
total variables first.  When every Gröbner element with a total-variable
leading term is monic, the standard monomials in the total variables form a
base-free basis, and normal forms give the coordinates directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InvariantFailure, NotFree
from .exactalg import PresentedAlgebra, RingMap, Subalgebra, map_point, rational_points
from .exactalg.fq import evaluate as fq_evaluate, finite_field
from .exactalg.groebner import groebner_basis, reduce as _reduce
from .exactalg.linalg import AlgebraOps, adjugate, charpoly as _charpoly, det, matmul
from .exactalg.orders import elimination
from .exactalg.poly import Poly, PolyRing


def _standard_exponents(leads, k, cap=10_000):
    """Exponent vectors in k variables not divisible by any of ``leads``; NotFree if infinite."""
    for i in range(k):
        if not any(l[i] and not any(l[j] for j in range(k) if j != i) for l in leads):
            raise NotFree(f"no monic power of generator {i} in the structure: not finite over the base")
    out, todo, seen = [], [(0,) * k], {(0,) * k}
    while todo:
        e = todo.pop()
        if any(all(a >= b for a, b in zip(e, l)) for l in leads):
            continue
        out.append(e)
        if len(out) > cap:
            raise NotFree("too many standard monomials")
        for i in range(k):
            f = e[:i] + (e[i] + 1,) + e[i + 1:]
            if f not in seen:
                seen.add(f)
                todo.append(f)
    out.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    return out


class FiniteFreeAlgebra:
    """``total`` as a free module over ``base`` via ``structural: base -> total``."""

    def __init__(self, total: PresentedAlgebra, base: PresentedAlgebra, structural: RingMap, basis=None):
        if structural.source is not base or structural.target is not total:
            if structural.source.ring != base.ring or structural.target.ring != total.ring:
                raise InputError("structural map must go from base to total")
        self.total = total
        self.base = base
        self.structural = structural
        k = total.ring.nvars
        self._k = k
        tags = [f"_b{i}" for i in range(base.ring.nvars)]
        self._tag_of = dict(zip(base.ring.variables, tags))
        self._ring = PolyRing(total.field, tuple(total.ring.variables) + tuple(tags))
        self._order = elimination(self._ring.nvars, k)
        inputs = [g.to_ring(self._ring).terms for g in total.ideal.generators]
        inputs += [g.to_ring(self._ring, self._tag_of).terms for g in base.ideal.generators]
        for v, im in zip(base.ring.variables, structural.images):
            inputs.append((self._ring.gen(self._tag_of[v]) - im.to_ring(self._ring)).terms)
        self._gb = groebner_basis(inputs, self._order, total.field.p)
        self._lms = [self._order.leading(g) for g in self._gb]
        leads = []
        for lm in self._lms:
            if any(lm[:k]):
                if any(lm[k:]):
                    raise NotFree("structure is not monic over the base (a leading coefficient is not constant)")
                leads.append(lm[:k])
            else:
                rel = Poly(base.ring, {e[k:]: c for e, c in self._gb[self._lms.index(lm)].items()})
                if not base.is_zero(rel):
                    raise NotFree(f"base -> total is not injective: {rel} maps to 0")
        self.std = _standard_exponents(leads, k)
        self.rank = len(self.std)
        self.std_basis = [total.ring.monomial(e) for e in self.std]
        self._std_index = {e: i for i, e in enumerate(self.std)}
        self._ops = AlgebraOps(base)
        self._cache: dict = {}
        if basis is None:
            self.basis = list(self.std_basis)
            self._P = self._Pinv = None
        else:
            self.basis = [total.reduce(total.parse(b)) for b in basis]
            if len(self.basis) != self.rank:
                raise NotFree(f"basis has {len(self.basis)} elements but the rank is {self.rank}")
            P = [self._std_coords(b) for b in self.basis]
            d = det(P, self._ops)
            dinv = base.inverse(d)
            if dinv is None:
                raise NotFree(f"change-of-basis determinant {d} is not a unit: not a basis")
            self._P = P
            self._Pinv = [[base.reduce(x * dinv) for x in row] for row in adjugate(P, self._ops)]

    @classmethod
    def over_subalgebra(cls, total: PresentedAlgebra, base_gens, basis=None, names=None):
        """``total`` over the subalgebra generated by ``base_gens`` (presented by elimination)."""
        sub = Subalgebra(total, base_gens, names)
        base = sub.presentation(name="base")
        structural = RingMap(base, total, dict(zip(sub.names, sub.gens)), check=False)
        return cls(total, base, structural, basis)

    @classmethod
    def from_fragment(cls, total: PresentedAlgebra, fragment: dict):
        return cls.over_subalgebra(total, fragment["base_gens"], fragment.get("basis"))

    # --- coordinates -------------------------------------------------------
    def _std_coords(self, f) -> list:
        f = self.total.parse(f)
        nf = _reduce(f.to_ring(self._ring).terms, self._lms, self._gb, self._order, self.total.field.p)
        k = self._k
        parts = [dict() for _ in self.std]
        for e, c in nf.items():
            parts[self._std_index[e[:k]]][e[k:]] = c
        return [self.base.reduce(Poly(self.base.ring, t)) for t in parts]

    def expand(self, f) -> list:
        """Coefficients ``c`` over the base with ``sum c_i e_i = f``."""
        f = self.total.reduce(self.total.parse(f))
        key = f
        if key not in self._cache:
            c = self._std_coords(f)
            if self._Pinv is not None:
                c = matmul([c], self._Pinv, self._ops)[0]
            self._cache[key] = c
        return list(self._cache[key])

    def combine(self, coeffs) -> Poly:
        out = self.total.zero()
        for c, e in zip(coeffs, self.basis):
            out = out + self.structural(c) * e
        return self.total.reduce(out)

    def to_total(self, c) -> Poly:
        return self.structural(self.base.parse(c))

    def verify(self) -> bool:
        """Expansions of basis products and total generators recombine to the element."""
        items = [a * b for a in self.basis for b in self.basis] + list(self.total.ring.gens())
        return all(self.total.equal(self.combine(self.expand(f)), f) for f in items)

    # --- matrices ----------------------------------------------------------
    def mult_matrix(self, b) -> "MultMatrix":
        b = self.total.parse(b)
        rows = [self.expand(b * e) for e in self.basis]
        return MultMatrix(self, b, rows)

    def norm(self, b) -> Poly:
        return det(self.mult_matrix(b).rows, self._ops)

    def trace(self, b) -> Poly:
        m = self.mult_matrix(b).rows
        out = self.base.zero()
        for i in range(self.rank):
            out = out + m[i][i]
        return self.base.reduce(out)

    def charpoly(self, b) -> list:
        """``[1, c_1, ..., c_n]`` with ``det(T - mult(b)) = T^n + c_1 T^{n-1} + ... + c_n``."""
        return _charpoly(self.mult_matrix(b).rows, self._ops)

    def charpoly_poly(self, b, var: str = "T") -> Poly:
        coeffs = self.charpoly(b)
        ring = PolyRing(self.base.field, tuple(self.base.ring.variables) + (var,))
        out = ring.zero()
        n = len(coeffs) - 1
        for k, c in enumerate(coeffs):
            out = out + c.to_ring(ring) * ring.gen(var) ** (n - k)
        return out

    def cayley_hamilton(self, b) -> bool:
        b = self.total.reduce(self.total.parse(b))
        acc = self.total.zero()
        for c in self.charpoly(b):
            acc = self.total.reduce(acc * b + self.structural(c))
        return self.total.is_zero(acc)


@dataclass
class MultMatrix:
    algebra: FiniteFreeAlgebra
    element: Poly
    rows: list

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + "]"


def expand_in_basis(a: FiniteFreeAlgebra, b):
    return a.expand(b)


def norm(a: FiniteFreeAlgebra, b):
    return a.norm(b)


def trace(a: FiniteFreeAlgebra, b):
    return a.trace(b)


def charpoly(a: FiniteFreeAlgebra, b):
    return a.charpoly(b)


def norm_unit_criterion(a: FiniteFreeAlgebra, b) -> tuple:
    """``(b is a unit, N(b) is a unit)``; the two always agree."""
    u = a.total.is_unit(a.total.reduce(a.total.parse(b)))
    v = a.base.is_unit(a.norm(b))
    if u != v:
        raise InvariantFailure(f"unit criterion violated for {b}: unit={u}, norm unit={v}")
    return u, v


def _in_root(ring, coeffs, w: str) -> Poly:
    """``sum c_i w^i`` in ``ring``."""
    out = ring.zero()
    for i, c in enumerate(coeffs):
        if c:
            out = out + ring.const(c) * ring.gen(w) ** i
    return out


def _geometric_zero_over(a: FiniteFreeAlgebra, b: Poly, pt) -> bool:
    """Does ``b`` vanish somewhere on the fiber over ``pt``, over an algebraic closure?

    By the Nullstellensatz this holds iff ``(relations, v - pt(v), b)`` is a
    proper ideal.  For q = p^k the point's coordinates live in F_p[w]/(modulus).
    """
    F = finite_field(pt.q)
    total = a.total
    w = "w"
    while w in total.ring.variables:
        w += "w"
    rels = list(total.relations)
    fib = PresentedAlgebra(total.field, tuple(total.variables) + (w,), (), total.inverted)
    rels = [r.to_ring(fib.ring) for r in rels]
    if F.k > 1:
        rels.append(_in_root(fib.ring, F.modulus, w))
    for v, x in zip(pt.variables, pt.values):
        img = a.structural.images[a.base.ring.index[v]].to_ring(fib.ring)
        rels.append(img - _in_root(fib.ring, F._digits[x], w))
    rels.append(b.to_ring(fib.ring))
    return not PresentedAlgebra(total.field, fib.variables, rels, fib.inverted).is_zero_algebra


def zero_locus_image(a: FiniteFreeAlgebra, b, q: int, cap: int | None = None) -> dict:
    """Base GF(q)-points compared three ways for the zero locus of ``b``.

    ``norm``: points where N(b) vanishes.  ``geometric``: points whose fiber
    contains a zero of ``b`` over the algebraic closure.  ``rational``: images
    of GF(q)-points of the total where ``b`` vanishes.
    """
    finite_field(q)
    b = a.total.parse(b)
    nb = a.norm(b)
    base_pts = rational_points(a.base, q, cap)
    return {
        "norm": {pt for pt in base_pts if fq_evaluate(a.base, nb, pt) == 0},
        "geometric": {pt for pt in base_pts if _geometric_zero_over(a, b, pt)},
        "rational": {map_point(a.structural, pt) for pt in rational_points(a.total, q, cap)
                     if fq_evaluate(a.total, b, pt) == 0},
    }


def zero_locus_image_check(a: FiniteFreeAlgebra, b, q: int, cap: int | None = None) -> bool:
    """Spec of the total maps ``{b = 0}`` onto ``{N(b) = 0}`` on closed points.

    Checked at the GF(q)-points of the base: the geometric image must equal the
    norm locus, and images of rational zeros must lie inside it.  Rational
    points alone can miss a fiber whose points are all defined over an extension.
    """
    z = zero_locus_image(a, b, q, cap)
    return z["geometric"] == z["norm"] and z["rational"] <= z["norm"]
