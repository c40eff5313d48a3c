"""Function-style entry points and the remaining small algorithms."""

from __future__ import annotations

from itertools import combinations

from ..errors import InputError, PreconditionFailed
from .algebra import Ideal, PresentedAlgebra
from .linalg import AlgebraOps, det
from .orders import degrevlex
from .poly import Poly


def groebner(ideal: Ideal, order=None):
    return ideal.groebner(order)


def ideal_contains(ideal: Ideal, f, cofactors: bool = False):
    """Membership test; with ``cofactors=True`` returns ``(bool, cofactors or None)``."""
    f = ideal.ring(f) if not isinstance(f, Poly) else f
    ok = ideal.contains(f)
    if not cofactors:
        return ok
    return ok, (ideal.lift(f) if ok else None)


def is_unit(alg: PresentedAlgebra, f) -> bool:
    return alg.is_unit(f)


def extension(base: PresentedAlgebra, ext_vars, ext_rels, inverted=()) -> PresentedAlgebra:
    """``base[ext_vars]/(ext_rels)``."""
    clash = set(ext_vars) & set(base.ring.variables)
    if clash:
        raise InputError(f"extension variables clash with base: {sorted(clash)}")
    alg = PresentedAlgebra(base.field, tuple(base.variables) + tuple(ext_vars), (), tuple(base.inverted) + tuple(inverted))
    rels = [r.to_ring(alg.ring) for r in base.relations]
    rels += [alg.parse(r) for r in ext_rels]
    return PresentedAlgebra(base.field, alg.variables, rels, alg.inverted)


def jacobian_matrix(alg: PresentedAlgebra, variables, rels):
    rels = [alg.parse(r) for r in rels]
    return [[alg.reduce(r.derivative(v)) for v in variables] for r in rels]


def jacobian_etale_check(base: PresentedAlgebra, ext_vars, ext_rels) -> bool:
    """Is ``base[T]/(F)`` étale over ``base`` by the Jacobian criterion (as many equations as unknowns)?"""
    ext_vars = list(ext_vars)
    ext_rels = list(ext_rels)
    if len(ext_vars) != len(ext_rels):
        raise InputError(f"{len(ext_rels)} relations for {len(ext_vars)} variables")
    B = extension(base, ext_vars, ext_rels)
    J = jacobian_matrix(B, ext_vars, ext_rels)
    return B.is_unit(det(J, AlgebraOps(B)))


def _in(alg: PresentedAlgebra, f: Poly, gens) -> bool:
    m = Ideal(alg.ring, tuple(alg.parse(g) for g in gens) + alg.ideal.generators)
    return m.contains(f)


def prime_avoidance(alg: PresentedAlgebra, I, points):
    """An element of ``I`` outside every listed maximal ideal.

    ``I`` is an Ideal of ``alg.ring`` or a list of generators; each point is a
    list of generators of a maximal ideal.  Tries generators, then 0/1 sums
    of generators, then the classical combination ``sum a_i e_i``.
    """
    gens = [alg.reduce(alg.parse(g)) for g in (I.generators if isinstance(I, Ideal) else I)]
    pts = []
    for m in points:
        m = [alg.parse(g) for g in m]
        if not any(all(_in(alg, g, m2) for g in m) and all(_in(alg, g, m) for g in m2) for m2 in pts):
            pts.append(m)
    outside = []
    for m in pts:
        good = [g for g in gens if not _in(alg, g, m)]
        if not good:
            raise PreconditionFailed(f"ideal is contained in the maximal ideal ({', '.join(map(str, m))})")
        outside.append(good[0])

    def avoids(f):
        return all(not _in(alg, f, m) for m in pts)

    for g in gens:
        if avoids(g):
            return g
    for r in range(2, min(len(gens), 6) + 1):
        for combo in combinations(gens, r):
            f = alg.reduce(sum(combo[1:], combo[0]))
            if avoids(f):
                return f
    f = alg.zero()
    for i, m in enumerate(pts):
        e = alg.one()
        for j, mj in enumerate(pts):
            if j != i:
                sep = next(g for g in mj if not _in(alg, g, m))
                e = alg.reduce(e * sep)
        f = alg.reduce(f + outside[i] * e)
    if not avoids(f):
        raise PreconditionFailed("avoidance combination failed; are the listed ideals maximal?")
    return f


__all__ = [
    "groebner", "ideal_contains", "is_unit", "extension", "jacobian_matrix",
    "jacobian_etale_check", "prime_avoidance", "degrevlex",
]
