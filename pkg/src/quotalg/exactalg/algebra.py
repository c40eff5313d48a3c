"""Ideals, finitely presented algebras and ring homomorphisms."""

from __future__ import annotations

from ..errors import IllDefinedMap, InputError, NotFinite
from .field import CoeffField
from .groebner import groebner_basis, lift as _lift, reduce as _reduce
from .orders import MonomialOrder, degrevlex
from .poly import Poly, PolyRing, parse_poly

INV_SUFFIX = "_inv"


class Ideal:
    """An ideal of a polynomial ring with lazily cached reduced Gröbner bases."""

    def __init__(self, ring: PolyRing, generators=()):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring(g) if not isinstance(g, Poly) else g
            if g.ring != ring:
                g = g.to_ring(ring)
            gens.append(g)
        self.generators = tuple(gens)
        self._gb: dict[str, list[dict]] = {}
        self._tracked = None

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def _order(self, order):
        return order or degrevlex(self.ring.nvars)

    def groebner_dicts(self, order: MonomialOrder | None = None) -> list[dict]:
        order = self._order(order)
        key = order.name
        if key not in self._gb:
            self._gb[key] = groebner_basis([g.terms for g in self.generators], order, self.ring.field.p)
        return self._gb[key]

    def groebner(self, order: MonomialOrder | None = None) -> list[Poly]:
        """Reduced, monic Gröbner basis (default degrevlex)."""
        return [Poly(self.ring, d) for d in self.groebner_dicts(order)]

    def leading_monomials(self, order=None):
        order = self._order(order)
        return [order.leading(g) for g in self.groebner_dicts(order)]

    def reduce(self, f: Poly, order: MonomialOrder | None = None) -> Poly:
        order = self._order(order)
        gb = self.groebner_dicts(order)
        lms = [order.leading(g) for g in gb]
        return Poly(self.ring, _reduce(f.terms, lms, gb, order, self.ring.field.p))

    def contains(self, f: Poly) -> bool:
        if not isinstance(f, Poly):
            f = self.ring(f)
        return self.reduce(f).is_zero()

    def is_unit_ideal(self) -> bool:
        gb = self.groebner_dicts()
        return len(gb) == 1 and all(not any(e) for e in gb[0])

    def is_zero_ideal(self) -> bool:
        return not self.groebner_dicts()

    def lift(self, f: Poly):
        """Cofactors ``c`` with ``f == sum(c[i] * generators[i])``, or ``None`` if ``f`` is not a member."""
        order = degrevlex(self.ring.nvars)
        if self._tracked is None:
            self._tracked = groebner_basis([g.terms for g in self.generators], order,
                                           self.ring.field.p, track=True)
        basis, cofs = self._tracked
        out = _lift(f.terms, basis, cofs, order, self.ring.field.p, len(self.generators))
        if out is None:
            return None
        return [Poly(self.ring, c) for c in out]

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + tuple(other.generators))

    def same_as(self, other: "Ideal") -> bool:
        return self.groebner_dicts() == other.groebner_dicts()


class PresentedAlgebra:
    """k[v_1..v_n, w_1^{-1}..]/(relations).

    Inverted variables ``w`` are realised by hidden companions ``w_inv`` and
    relations ``w*w_inv - 1``; :attr:`variables` lists only the user-facing names.
    """

    def __init__(self, field: CoeffField, variables=(), relations=(), inverted=(), name: str | None = None):
        self.field = field
        self.variables = tuple(variables)
        self.inverted = tuple(v for v in self.variables if v in set(inverted))
        missing = set(inverted) - set(self.variables)
        if missing:
            raise InputError(f"inverted names {sorted(missing)} are not variables")
        self.inverse_names = {v: v + INV_SUFFIX for v in self.inverted}
        aux = [self.inverse_names[v] for v in self.inverted]
        clash = set(aux) & set(self.variables)
        if clash:
            raise InputError(f"inverse companions clash with variables: {sorted(clash)}")
        self.ring = PolyRing(field, self.variables + tuple(aux))
        rels = [self.parse(r) if isinstance(r, str) else r.to_ring(self.ring) for r in relations]
        self.relations = tuple(r for r in rels if not r.is_zero())
        inv_rels = [self.ring.gen(v) * self.ring.gen(self.inverse_names[v]) - 1 for v in self.inverted]
        self.ideal = Ideal(self.ring, self.relations + tuple(inv_rels))
        self.name = name
        self._order = degrevlex(self.ring.nvars)

    # --- construction helpers ---------------------------------------------
    @classmethod
    def polynomial_ring(cls, field, variables, inverted=()):
        return cls(field, variables, (), inverted)

    @classmethod
    def base_field(cls, field) -> "PresentedAlgebra":
        return cls(field, ())

    def parse(self, text) -> Poly:
        if isinstance(text, Poly):
            return text.to_ring(self.ring)
        if isinstance(text, (int,)):
            return self.ring.const(text)
        return parse_poly(str(text), self.ring, self.inverse_names)

    def __call__(self, text) -> Poly:
        return self.reduce(self.parse(text))

    def __repr__(self):
        inv = f", inverted={list(self.inverted)}" if self.inverted else ""
        return f"PresentedAlgebra({self.field}, {list(self.variables)}, {[str(r) for r in self.relations]}{inv})"

    def describe(self) -> str:
        if not self.ring.variables and not self.relations:
            return str(self.field)
        body = ", ".join(self.variables + tuple(f"{v}^-1" for v in self.inverted))
        rels = ", ".join(str(r) for r in self.relations)
        return f"{self.field}[{body}]" + (f"/({rels})" if rels else "")

    def gen(self, name: str) -> Poly:
        return self.ring.gen(name)

    def gens(self):
        return [self.ring.gen(v) for v in self.variables]

    def inv(self, name: str) -> Poly:
        return self.ring.gen(self.inverse_names[name])

    def ring_variables(self):
        return self.ring.variables

    def zero(self):
        return self.ring.zero()

    def one(self):
        return self.ring.one()

    # --- element arithmetic ------------------------------------------------
    def reduce(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            f = f.to_ring(self.ring)
        return self.ideal.reduce(f, self._order)

    def is_zero(self, f: Poly) -> bool:
        return self.reduce(f).is_zero()

    def equal(self, f: Poly, g: Poly) -> bool:
        return self.is_zero(f - g)

    @property
    def is_zero_algebra(self) -> bool:
        return self.ideal.is_unit_ideal()

    def is_unit(self, f: Poly) -> bool:
        """True iff ``f`` is invertible, i.e. 1 lies in (f) + relations."""
        if self.is_zero_algebra:
            return True
        f = self.reduce(self.parse(f))
        if f.is_zero():
            return False
        if f.is_constant():
            return True
        return Ideal(self.ring, self.ideal.generators + (f,)).is_unit_ideal()

    def inverse(self, f: Poly) -> Poly | None:
        """The inverse of ``f``, or ``None`` when ``f`` is not a unit."""
        f = self.reduce(self.parse(f))
        if self.is_zero_algebra:
            return self.zero()
        if f.is_constant() and not f.is_zero():
            return self.ring.const(self.field.inv(f.constant_value()))
        J = Ideal(self.ring, (f,) + self.ideal.generators)
        cof = J.lift(self.ring.one())
        if cof is None:
            return None
        return self.reduce(cof[0])

    def power(self, f: Poly, n: int) -> Poly:
        result = self.one()
        base = self.reduce(f)
        while n:
            if n & 1:
                result = self.reduce(result * base)
            n >>= 1
            if n:
                base = self.reduce(base * base)
        return result

    def mul(self, f: Poly, g: Poly) -> Poly:
        return self.reduce(f * g)

    # --- linear structure over k -------------------------------------------
    def leading_monomials(self):
        return self.ideal.leading_monomials(self._order)

    def standard_monomials(self, cap: int = 100_000):
        """Exponents of the standard monomials (a k-basis); raises NotFinite if infinite."""
        lms = self.leading_monomials()
        n = self.ring.nvars
        for i in range(n):
            if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms):
                if not self.is_zero_algebra:
                    raise NotFinite(f"{self.describe()} is not finite-dimensional over {self.field}")
        if self.is_zero_algebra:
            return []
        seen = {(0,) * n}
        frontier = [(0,) * n]
        while frontier:
            nxt = []
            for e in frontier:
                for i in range(n):
                    t = list(e)
                    t[i] += 1
                    t = tuple(t)
                    if t in seen or any(all(a <= b for a, b in zip(lm, t)) for lm in lms):
                        continue
                    seen.add(t)
                    nxt.append(t)
                    if len(seen) > cap:
                        raise NotFinite("standard monomial enumeration exceeded its cap")
            frontier = nxt
        return sorted(seen, key=self._order.key)

    def is_finite_dimensional(self) -> bool:
        try:
            self.standard_monomials()
            return True
        except NotFinite:
            return False

    def dimension(self) -> int:
        return len(self.standard_monomials())

    def coordinates(self, f: Poly, basis=None) -> list:
        """Coordinates of ``f`` on the standard monomial basis (finite-dimensional case)."""
        basis = basis if basis is not None else self.standard_monomials()
        r = self.reduce(f)
        return [r.terms.get(e, self.field.zero) for e in basis]

    def from_coordinates(self, coords, basis=None) -> Poly:
        basis = basis if basis is not None else self.standard_monomials()
        return self.ring.poly({e: c for e, c in zip(basis, coords) if c})

    def elements(self, cap: int = 10**6):
        """All elements of a finite algebra over a prime field (finite enumeration)."""
        if not self.field.p:
            raise NotFinite("algebra over the rationals has infinitely many elements")
        basis = self.standard_monomials()
        if self.field.p ** len(basis) > cap:
            raise NotFinite("element enumeration exceeds cap")
        from itertools import product

        for coords in product(range(self.field.p), repeat=len(basis)):
            yield self.from_coordinates(coords, basis)


class RingMap:
    """A k-algebra homomorphism ``source -> target`` given on generators.

    ``images`` maps user-facing source variables (or all ring variables) to
    target elements.  Images of hidden inverse companions are computed as
    inverses in the target; well-definedness is checked at construction.
    """

    def __init__(self, source: PresentedAlgebra, target: PresentedAlgebra, images, check: bool = True):
        if source.field != target.field:
            raise InputError("ring maps must be over the same coefficient field")
        self.source = source
        self.target = target
        if isinstance(images, (list, tuple)):
            names = source.ring.variables if len(images) == source.ring.nvars else source.variables
            if len(images) != len(names):
                raise InputError(f"expected {len(source.variables)} images, got {len(images)}")
            images = dict(zip(names, images))
        imgs = {}
        for v, im in images.items():
            if v not in source.ring.index:
                raise InputError(f"{v!r} is not a generator of the source")
            imgs[v] = target.reduce(target.parse(im))
        for v in source.variables:
            if v not in imgs:
                raise InputError(f"no image given for {v!r}")
        for v in source.inverted:
            aux = source.inverse_names[v]
            if aux not in imgs:
                inv = target.inverse(imgs[v])
                if inv is None:
                    raise IllDefinedMap(f"image of inverted {v!r} ({imgs[v]}) is not a unit in the target")
                imgs[aux] = inv
        self.images = [imgs[v] for v in source.ring.variables]
        if check:
            bad = self.failing_relations()
            if bad:
                raise IllDefinedMap(f"relations not preserved: {[str(b) for b in bad]}")

    def failing_relations(self):
        return [r for r in self.source.ideal.generators if not self.target.is_zero(self._raw(r))]

    def is_well_defined(self) -> bool:
        return not self.failing_relations()

    def _raw(self, f: Poly) -> Poly:
        if f.ring != self.source.ring:
            f = f.to_ring(self.source.ring)
        return f.substitute(self.images, self.target.ring)

    def __call__(self, f) -> Poly:
        if not isinstance(f, Poly):
            f = self.source.parse(f)
        return self.target.reduce(self._raw(f))

    def image(self, name: str) -> Poly:
        return self.images[self.source.ring.index[name]]

    def compose(self, first: "RingMap") -> "RingMap":
        """``self ∘ first``."""
        if first.target is not self.source and first.target.ring != self.source.ring:
            raise InputError("maps are not composable")
        return RingMap(first.source, self.target,
                       dict(zip(first.source.ring.variables, (self(im) for im in first.images))), check=False)

    def equals(self, other: "RingMap") -> bool:
        """Equality as maps, compared on generators modulo target relations."""
        return all(self.target.equal(a, b.to_ring(self.target.ring)) for a, b in zip(self.images, other.images))

    @classmethod
    def identity(cls, alg: PresentedAlgebra) -> "RingMap":
        return cls(alg, alg, dict(zip(alg.ring.variables, alg.ring.gens())), check=False)

    @classmethod
    def structural(cls, alg: PresentedAlgebra) -> "RingMap":
        """The unique map from the coefficient field into ``alg``."""
        return cls(PresentedAlgebra.base_field(alg.field), alg, {}, check=False)

    def __repr__(self):
        pairs = ", ".join(f"{v} -> {im}" for v, im in zip(self.source.variables, self.images))
        return f"RingMap({pairs})"
