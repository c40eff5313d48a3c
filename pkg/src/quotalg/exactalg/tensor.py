"""Tensor products of presented algebras, possibly over a common base."""

from __future__ import annotations

from ..errors import IllDefinedMap, InputError
from .algebra import INV_SUFFIX, PresentedAlgebra, RingMap
from .poly import Poly


def _leg_names(factors):
    """Per-leg renaming of ring variables; identity when all names are already distinct."""
    all_user = [v for f in factors for v in f.variables]
    all_ring = [v for f in factors for v in f.ring.variables]
    if len(set(all_ring)) == len(all_ring) and len(set(all_user)) == len(all_user):
        return [{v: v for v in f.ring.variables} for f in factors]
    sep = "_"
    while True:
        renames = []
        for k, f in enumerate(factors):
            r = {v: f"{v}{sep}{k + 1}" for v in f.variables}
            for v in f.inverted:
                r[f.inverse_names[v]] = r[v] + INV_SUFFIX
            renames.append(r)
        names = [n for r in renames for n in r.values()]
        if len(set(names)) == len(names):
            return renames
        sep += "_"


class TensorProduct:
    """``F_1 ⊗ ... ⊗ F_n`` (over the coefficient field, or over a base via identifications).

    ``identifications`` is a list of tuples ``(p_1, ..., p_n)`` of elements
    ``p_k`` in ``F_k``; the relations ``leg_1(p_1) = leg_k(p_k)`` are imposed.
    """

    def __init__(self, factors, identifications=(), name=None):
        factors = list(factors)
        if not factors:
            raise InputError("empty tensor product")
        field = factors[0].field
        if any(f.field != field for f in factors):
            raise InputError("tensor factors must share the coefficient field")
        self.factors = factors
        self.renames = _leg_names(factors)
        variables, inverted, relations = [], [], []
        for f, r in zip(factors, self.renames):
            variables += [r[v] for v in f.variables]
            inverted += [r[v] for v in f.inverted]
        self._pending = []
        for f, r in zip(factors, self.renames):
            relations += [(g, r) for g in f.relations]
        for ident in identifications:
            if len(ident) != len(factors):
                raise InputError("identification tuples must have one entry per factor")
            self._pending.append(ident)
        alg = PresentedAlgebra(field, variables, (), inverted, name=name)
        rel_polys = [g.to_ring(alg.ring, r) for g, r in relations]
        for ident in identifications:
            imgs = [f.parse(x).to_ring(alg.ring, r) for f, r, x in zip(factors, self.renames, ident)]
            rel_polys += [imgs[0] - im for im in imgs[1:]]
        self.algebra = PresentedAlgebra(field, variables, rel_polys, inverted, name=name)
        self.legs = [
            RingMap(f, self.algebra, {v: self.algebra.ring.gen(r[v]) for v in f.ring.variables}, check=False)
            for f, r in zip(factors, self.renames)
        ]

    def __len__(self):
        return len(self.factors)

    def leg(self, k: int) -> RingMap:
        return self.legs[k]

    def pure(self, *elements) -> Poly:
        """The pure tensor ``e_1 ⊗ ... ⊗ e_n``."""
        out = self.algebra.one()
        for leg, e in zip(self.legs, elements):
            out = out * leg(e)
        return self.algebra.reduce(out)

    def copair(self, maps, target=None, check: bool = True) -> RingMap:
        """The map out of the tensor product restricting to ``maps[k]`` on leg k."""
        target = target or maps[0].target
        images = {}
        for f, r, m in zip(self.factors, self.renames, maps):
            for v in f.ring.variables:
                images[r[v]] = m.images[f.ring.index[v]].to_ring(target.ring)
        return RingMap(self.algebra, target, images, check=check)


def tensor(a: PresentedAlgebra, b: PresentedAlgebra, base_images=()):
    """``a ⊗ b``; ``base_images`` lists pairs (image in a, image in b) of base generators.

    Returns ``(algebra, inclusion_a, inclusion_b)``.
    """
    tp = TensorProduct([a, b], base_images)
    return tp.algebra, tp.legs[0], tp.legs[1]


def tensor_over(structure_maps, name=None) -> TensorProduct:
    """``B_1 ⊗_A ... ⊗_A B_n`` for structure maps ``A -> B_k`` with a common source."""
    structure_maps = list(structure_maps)
    base = structure_maps[0].source
    for m in structure_maps:
        if m.source.ring != base.ring:
            raise IllDefinedMap("structure maps must share their source")
    idents = []
    for v in base.variables:
        idents.append(tuple(m.image(v) for m in structure_maps))
    return TensorProduct([m.target for m in structure_maps], idents, name=name)


def tensor_power(structure: RingMap, n: int) -> TensorProduct:
    return tensor_over([structure] * n)


def tensor_maps(source: TensorProduct, target: TensorProduct, maps, check: bool = False) -> RingMap:
    """``f_1 ⊗ ... ⊗ f_n`` from ``maps[k]: source.factors[k] -> target.factors[k]``."""
    composed = [leg.compose(m) for leg, m in zip(target.legs, maps)]
    return source.copair(composed, target.algebra, check=check)


def projection_map(t2: TensorProduct, t3: TensorProduct, i: int, j: int) -> RingMap:
    """``pr_ij^*``: the map ``B⊗B -> B⊗B⊗B`` sending leg 1 to leg i and leg 2 to leg j (1-based)."""
    return t2.copair([t3.legs[i - 1], t3.legs[j - 1]], t3.algebra, check=False)
