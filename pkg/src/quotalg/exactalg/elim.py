"""Tag-variable elimination: kernels of ring maps and subalgebra membership."""

from __future__ import annotations

from .algebra import Ideal, PresentedAlgebra, RingMap
from .groebner import groebner_basis, reduce as _reduce
from .orders import elimination
from .poly import Poly, PolyRing


def _tagged_ring(alg: PresentedAlgebra, ntags: int, tag_names=None):
    tags = list(tag_names) if tag_names else [f"_t{i}" for i in range(ntags)]
    ring = PolyRing(alg.field, tuple(alg.ring.variables) + tuple(tags))
    return ring, tags


def _only_tags(exp, k):
    return not any(exp[:k])


class _Eliminator:
    """GB of ``relations + (t_i - g_i)`` in an order eliminating the algebra's variables."""

    def __init__(self, alg: PresentedAlgebra, gens):
        self.alg = alg
        self.gens = [alg.reduce(alg.parse(g)) for g in gens]
        self.k = alg.ring.nvars
        self.ring, self.tags = _tagged_ring(alg, len(self.gens))
        self.order = elimination(self.ring.nvars, self.k)
        inputs = [g.to_ring(self.ring).terms for g in alg.ideal.generators]
        for t, g in zip(self.tags, self.gens):
            inputs.append((self.ring.gen(t) - g.to_ring(self.ring)).terms)
        self.basis = groebner_basis(inputs, self.order, alg.field.p)
        self.lms = [self.order.leading(b) for b in self.basis]

    def tag_relations(self):
        """GB elements free of the algebra's variables, as exponent dicts in the tags."""
        return [{e[self.k:]: c for e, c in b.items()} for b in self.basis if _only_tags(self.order.leading(b), self.k)]

    def normal_form(self, f: Poly) -> dict:
        return _reduce(f.to_ring(self.ring).terms, self.lms, self.basis, self.order, self.alg.field.p)


def kernel_of_map(m: RingMap) -> Ideal:
    """The kernel of ``m``, as an ideal of the source's polynomial ring.

    The returned ideal contains the source relations; its generators form a
    Gröbner basis of the preimage for a degrevlex order on the tags.
    """
    src = m.source
    el = _Eliminator(m.target, m.images)
    gens = [Poly(src.ring, d) for d in el.tag_relations()]
    return Ideal(src.ring, gens)


def kernel_generators(m: RingMap):
    """Kernel generators that are nonzero in the source algebra (relations already present dropped)."""
    out = []
    for g in kernel_of_map(m).groebner():
        if not m.source.is_zero(g):
            out.append(g)
    return out


class Subalgebra:
    """The k-subalgebra of ``alg`` generated by ``gens``, with a reusable elimination basis."""

    def __init__(self, alg: PresentedAlgebra, gens, names=None):
        self.alg = alg
        self._el = _Eliminator(alg, gens)
        self.gens = self._el.gens
        self.names = list(names) if names else [f"u{i + 1}" for i in range(len(self.gens))]
        self.tag_ring = PolyRing(alg.field, self.names)

    def express(self, f) -> Poly | None:
        """A polynomial ``P`` in the generator names with ``P(gens) == f``, or ``None``."""
        f = self.alg.parse(f)
        nf = self._el.normal_form(f)
        k = self._el.k
        if any(any(e[:k]) for e in nf):
            return None
        return Poly(self.tag_ring, {e[k:]: c for e, c in nf.items()})

    def contains(self, f) -> bool:
        return self.express(f) is not None

    def evaluate(self, expr: Poly) -> Poly:
        return self.alg.reduce(expr.substitute(self.gens, self.alg.ring))

    def relations(self):
        """Generators of the ideal of relations among the generators (in the names)."""
        return [Poly(self.tag_ring, d) for d in self._el.tag_relations()]

    def presentation(self, name=None) -> PresentedAlgebra:
        return PresentedAlgebra(self.alg.field, self.names, self.relations(), name=name)


def subalgebra_contains(alg: PresentedAlgebra, gens, f) -> bool:
    return Subalgebra(alg, gens).contains(f)
