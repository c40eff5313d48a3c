"""Descent of modules along free ring extensions A -> B of positive rank.

Conventions.  Module elements are row vectors; a matrix ``Phi`` over
``B ⊗_A B`` acts on the right, ``v -> v·Phi``, sending ``M' ⊗_A B`` to
``B ⊗_A M'``.  The cocycle identity then reads ``Phi13 = Phi12 · Phi23`` and
the canonical datum of an extended module is the identity matrix.  The
descended module is the equalizer ``{m : (m ⊗ 1)·Phi = 1 ⊗ m}``, computed as a
kernel of A-linear maps through the A-basis of B.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import InputError, NotFree, PreconditionFailed
from .exactalg import PresentedAlgebra, RingMap, ideal_contains, projection_map, tensor_over
from .exactalg.algebra import Ideal
from .exactalg.linalg import AlgebraOps, adjugate, det, identity, matmul
from .exactalg.modules import Submodule, preimage, syzygies
from .flf import FiniteFreeAlgebra
from .grading import GradedModule, MGrading, graded_module_component
from .abgrp import FgAbGroup


class RingExtension:
    """``A -> B`` with ``B`` free of positive rank over ``A`` (faithful flatness evidence)."""

    def __init__(self, base: PresentedAlgebra, cover: PresentedAlgebra, structural: RingMap | None = None,
                 basis=None):
        if structural is None:
            structural = RingMap(base, cover, {v: v for v in base.variables})
        self.base = base
        self.cover = cover
        self.structural = structural
        self.evidence = FiniteFreeAlgebra(cover, base, structural, basis)
        if self.evidence.rank < 1:
            raise NotFree("cover has rank 0: not faithfully flat")
        self.rank = self.evidence.rank
        self.basis = self.evidence.basis
        self.t2 = tensor_over([structural, structural], name="B⊗B")
        self.t3 = tensor_over([structural] * 3, name="B⊗B⊗B")
        into2 = self.t2.legs[0].compose(structural)
        self.evidence2 = FiniteFreeAlgebra(
            self.t2.algebra, base, into2,
            [self.t2.pure(a, b) for a in self.basis for b in self.basis])
        self.pr = {ij: projection_map(self.t2, self.t3, *ij) for ij in ((1, 2), (1, 3), (2, 3))}

    @classmethod
    def over_field(cls, cover: PresentedAlgebra) -> "RingExtension":
        base = PresentedAlgebra.base_field(cover.field)
        return cls(base, cover, RingMap.structural(cover))

    def __repr__(self):
        return f"RingExtension({self.base} -> {self.cover}, rank {self.rank})"


@dataclass
class FpModule:
    """``owner^ngens / (rows)``."""

    owner: PresentedAlgebra
    ngens: int
    relations: list = field(default_factory=list)

    def __post_init__(self):
        rows = []
        for r in self.relations:
            if len(r) != self.ngens:
                raise InputError(f"relation row has {len(r)} entries, expected {self.ngens}")
            rows.append([self.owner.reduce(self.owner.parse(x)) for x in r])
        self.relations = rows

    def submodule(self) -> Submodule:
        return Submodule(self.owner, self.relations, self.ngens)

    def is_zero(self) -> bool:
        return self.ngens == 0 or self.submodule().is_everything()

    def base_change(self, m: RingMap) -> "FpModule":
        return FpModule(m.target, self.ngens, [[m(x) for x in r] for r in self.relations])

    def __repr__(self):
        rels = "; ".join("(" + ", ".join(map(str, r)) + ")" for r in self.relations)
        return f"FpModule(rank {self.ngens} over {self.owner}, relations [{rels}])"


def _apply(m: RingMap, rows):
    return [[m(x) for x in r] for r in rows]


class DescentDatum:
    """A module ``M'`` over the cover and an invertible ``Phi`` over ``B⊗_A B`` compatible with relations."""

    def __init__(self, ext: RingExtension, module: FpModule, phi, phi_inverse=None):
        if module.owner.ring != ext.cover.ring:
            raise InputError("descent datum module must live over the cover")
        self.ext = ext
        self.module = module
        g = module.ngens
        T = ext.t2.algebra
        phi = [[T.reduce(T.parse(x)) for x in row] for row in phi]
        if len(phi) != g or any(len(r) != g for r in phi):
            raise InputError(f"phi must be a {g}x{g} matrix")
        self.phi = phi
        ops = AlgebraOps(T)
        if phi_inverse is None:
            d = det(phi, ops) if g else T.one()
            dinv = T.inverse(d)
            if dinv is None:
                raise PreconditionFailed(f"phi is not invertible (det {d} is not a unit)")
            phi_inverse = [[T.reduce(x * dinv) for x in row] for row in adjugate(phi, ops)] if g else []
        else:
            phi_inverse = [[T.reduce(T.parse(x)) for x in row] for row in phi_inverse]
            prod = matmul(phi, phi_inverse, ops)
            if any(not T.equal(prod[i][j], T.one() if i == j else T.zero()) for i in range(g) for j in range(g)):
                raise PreconditionFailed("supplied inverse of phi is wrong")
        self.phi_inverse = phi_inverse
        p1, p2 = ext.t2.legs
        target_rel = Submodule(T, _apply(p2, module.relations), g)
        for r in module.relations:
            img = matmul([[p1(x) for x in r]], phi, ops)[0] if g else []
            if not target_rel.contains(img):
                raise PreconditionFailed(f"phi does not map the relation {[str(x) for x in r]} to relations")
        self._target_rel = target_rel

    @classmethod
    def canonical(cls, ext: RingExtension, module: FpModule) -> "DescentDatum":
        """The datum of ``M ⊗_A B`` for an A-module ``M``."""
        if module.owner.ring != ext.base.ring:
            raise InputError("canonical datum needs a module over the base")
        T = ext.t2.algebra
        return cls(ext, module.base_change(ext.structural), identity(module.ngens, AlgebraOps(T)))

    @classmethod
    def twisted(cls, ext: RingExtension, module: FpModule, P, P_inverse=None) -> "DescentDatum":
        """``Phi = p1(P)^-1 · p2(P)`` for an invertible matrix ``P`` over the cover (a coboundary)."""
        B = ext.cover
        ops = AlgebraOps(B)
        P = [[B.reduce(B.parse(x)) for x in row] for row in P]
        if P_inverse is None:
            d = det(P, ops)
            dinv = B.inverse(d)
            if dinv is None:
                raise PreconditionFailed("twisting matrix is not invertible")
            P_inverse = [[B.reduce(x * dinv) for x in row] for row in adjugate(P, ops)]
        p1, p2 = ext.t2.legs
        T = ext.t2.algebra
        tops = AlgebraOps(T)
        phi = matmul(_apply(p1, P_inverse), _apply(p2, P), tops)
        rels = matmul(module.relations, P, ops) if module.relations else []
        twisted_module = FpModule(B, module.ngens, rels)
        return cls(ext, twisted_module, phi, matmul(_apply(p2, P_inverse), _apply(p1, P), tops))


def cocycle_check(d: DescentDatum) -> bool:
    """``pr13*(Phi) = pr12*(Phi) · pr23*(Phi)`` over ``B⊗B⊗B``, modulo the relations of ``M'``."""
    ext = d.ext
    g = d.module.ngens
    if g == 0:
        return True
    T3 = ext.t3.algebra
    ops = AlgebraOps(T3)
    f12, f13, f23 = (_apply(ext.pr[ij], d.phi) for ij in ((1, 2), (1, 3), (2, 3)))
    prod = matmul(f12, f23, ops)
    diff = [[T3.reduce(a - b) for a, b in zip(r1, r2)] for r1, r2 in zip(f13, prod)]
    if all(x.is_zero() for r in diff for x in r):
        return True
    leg3 = ext.t3.legs[2]
    rel = Submodule(T3, _apply(leg3, d.module.relations), g)
    return all(rel.contains(r) for r in diff)


# --- A-linear algebra through the basis of B ------------------------------

def _flatten(ext_ff: FiniteFreeAlgebra, row) -> list:
    out = []
    for x in row:
        out += ext_ff.expand(x)
    return out


def _relations_over_base(ff: FiniteFreeAlgebra, rows, g) -> list:
    """A-relations of ``total^g / (rows)`` in coordinates ``total^g = A^(g·rank)``."""
    T = ff.total
    out = []
    for r in rows:
        for e in ff.basis:
            out.append(_flatten(ff, [T.reduce(x * e) for x in r]))
    return out


@dataclass
class EqualizerData:
    generators: list          # vectors in A^(g n)
    relations_prime: list     # A-relations of M' in the same coordinates


def _equalizer(d: DescentDatum) -> EqualizerData:
    ext = d.ext
    A = ext.base
    g = d.module.ngens
    ff, ff2 = ext.evidence, ext.evidence2
    p1, p2 = ext.t2.legs
    T = ext.t2.algebra
    D = []
    for i in range(g):
        for e in ext.basis:
            row = [T.reduce(p1(e) * x) for x in d.phi[i]]
            row[i] = T.reduce(row[i] - p2(e))
            D.append(_flatten(ff2, row))
    rel2 = _relations_over_base(ff2, _apply(p2, d.module.relations), g)
    width = g * ff2.rank
    K = preimage(A, D, rel2, width) if D else []
    rel1 = _relations_over_base(ff, d.module.relations, g)
    return EqualizerData(K, rel1)


def _unflatten(ext: RingExtension, vec, g) -> list:
    n = ext.rank
    B = ext.cover
    out = []
    for i in range(g):
        acc = B.zero()
        for k in range(n):
            acc = acc + ext.structural(vec[i * n + k]) * ext.basis[k]
        out.append(B.reduce(acc))
    return out


@dataclass
class DescentResult:
    module: FpModule
    comparison: list          # rows over the cover: images of the generators of M in M'
    generators: list          # the generators of M as A-coordinate vectors


def descend(d: DescentDatum) -> DescentResult:
    """The equalizer module over the base with the comparison map ``M ⊗_A B -> M'``."""
    if not cocycle_check(d):
        raise PreconditionFailed("descent datum fails the cocycle identity")
    ext = d.ext
    A = ext.base
    g = d.module.ngens
    eq = _equalizer(d)
    rel_span = Submodule(A, eq.relations_prime, g * ext.rank)
    gens = [v for v in eq.generators if not rel_span.contains(v)]
    gens.sort(key=lambda v: next(i for i, x in enumerate(v) if not x.is_zero()))
    gens = _prune(A, gens, eq.relations_prime, g * ext.rank)
    k = len(gens)
    syz = syzygies(A, gens + eq.relations_prime, g * ext.rank) if k else []
    rels = [row[:k] for row in syz if any(not x.is_zero() for x in row[:k])]
    M = FpModule(A, k, rels)
    comparison = [_unflatten(ext, v, g) for v in gens]
    return DescentResult(M, comparison, gens)


def _prune(A, gens, rels, width):
    """Drop generators lying in the span of the others plus relations (last first)."""
    kept = list(gens)
    for v in list(reversed(gens)):
        others = [w for w in kept if w is not v]
        if Submodule(A, others + rels, width).contains(v):
            kept = others
    return kept


def verify_effectivity(d: DescentDatum, result: DescentResult) -> bool:
    """Comparison ``M ⊗_A B -> M'`` is a B-isomorphism compatible with ``Phi``."""
    ext = d.ext
    B = ext.cover
    g = d.module.ngens
    C = result.comparison
    k = len(C)
    target = Submodule(B, C + d.module.relations, g)
    if not target.is_everything() and g:
        return False
    if k:
        syz = syzygies(B, C + d.module.relations, g)
        mrel = Submodule(B, _apply(ext.structural, result.module.relations), k)
        if not all(mrel.contains(row[:k]) for row in syz):
            return False
    T = ext.t2.algebra
    p1, p2 = ext.t2.legs
    ops = AlgebraOps(T)
    for row in C:
        lhs = matmul([[p1(x) for x in row]], d.phi, ops)[0]
        diff = [T.reduce(a - p2(b)) for a, b in zip(lhs, row)]
        if not d._target_rel.contains(diff):
            return False
    return True


def amitsur_exactness(ext: RingExtension, m: FpModule) -> bool:
    """``M -> M⊗B ⇉ M⊗B⊗B`` is exact: injective, with equalizer the image of M."""
    A = ext.base
    g = m.ngens
    if g == 0:
        return True
    d = DescentDatum.canonical(ext, m)
    n = ext.rank
    ff = ext.evidence
    one = ff.expand(ext.cover.one())
    iota = []
    for i in range(g):
        v = [A.zero()] * (g * n)
        for k in range(n):
            v[i * n + k] = one[k]
        iota.append(v)
    rel_b = _relations_over_base(ff, d.module.relations, g)
    rel_a = Submodule(A, m.relations, g)
    for row in preimage(A, iota, rel_b, g * n):
        if not rel_a.contains(row):
            return False
    eq = _equalizer(d)
    image = Submodule(A, iota + rel_b, g * n)
    return all(image.contains(v) for v in eq.generators)


def roundtrip_check(ext: RingExtension, m: FpModule) -> bool:
    """``descend(canonical(M))`` is M: same submodule of ``M ⊗ B`` (over A) and an effective comparison."""
    A = ext.base
    g = m.ngens
    if g == 0:
        return True
    d = DescentDatum.canonical(ext, m)
    res = descend(d)
    if not verify_effectivity(d, res):
        return False
    n = ext.rank
    one = ext.evidence.expand(ext.cover.one())
    iota = []
    for i in range(g):
        v = [A.zero()] * (g * n)
        for k in range(n):
            v[i * n + k] = one[k]
        iota.append(v)
    rel_b = _relations_over_base(ext.evidence, d.module.relations, g)
    ours = Submodule(A, res.generators + rel_b, g * n)
    theirs = Submodule(A, iota + rel_b, g * n)
    return ours.contains_all(iota) and theirs.contains_all(res.generators)


def random_invertible(B: PresentedAlgebra, g: int, rng: random.Random, steps: int = 3, coeff: int = 3):
    """A random product of elementary matrices over B and its inverse."""
    ops = AlgebraOps(B)
    gens = list(B.ring.gens())
    P = identity(g, ops)
    Pinv = identity(g, ops)
    for _ in range(steps):
        if g < 2:
            c = rng.choice([x for x in range(-coeff, coeff + 1) if x])
            if B.field.p and c % B.field.p == 0:
                c = 1
            P = [[B.reduce(x * c) for x in r] for r in P]
            Pinv = [[B.reduce(x * B.field.inv(B.field(c))) for x in r] for r in Pinv]
            continue
        i, j = rng.sample(range(g), 2)
        t = B.ring.const(rng.randint(-coeff, coeff))
        if gens:
            t = t + rng.randint(-coeff, coeff) * rng.choice(gens)
        t = B.reduce(t)
        E = identity(g, ops)
        E[i][j] = t
        Einv = identity(g, ops)
        Einv[i][j] = B.reduce(-t)
        P = matmul(P, E, ops)
        Pinv = matmul(Einv, Pinv, ops)
    return P, Pinv


def equivariant_nondescent_demo(n: int = 2, field=None) -> dict:
    """Over ``k[s]`` graded by ``deg s = 1`` in ``Z/n``, the degree-0 part of ``(s)`` generates ``(s^n)``."""
    from .exactalg import QQ

    field = field or QQ
    Ap = PresentedAlgebra(field, ["s"])
    grading = MGrading(Ap, FgAbGroup.parse(f"Z/{n}") if n > 1 else FgAbGroup.parse("0"),
                       {"s": [1] if n > 1 else []})
    module = GradedModule(grading, [[1] if n > 1 else []])
    s = Ap.gen("s")
    comps = graded_module_component(module, [0] if n > 1 else [], bound=max(n, 1) + 1)
    elems = [Ap.reduce(mono * s) for mono, _ in comps]
    ideal = Ideal(Ap.ring, elems)
    s_in = ideal_contains(ideal, s)
    return {
        "n": n,
        "invariant_generators": [str(e) for e in elems],
        "generated_ideal": [str(e) for e in ideal.groebner()],
        "expected": str(Ap.parse(f"s^{n}")),
        "matches_expected": ideal.same_as(Ideal(Ap.ring, [Ap.parse(f"s^{n}")])),
        "s_in_generated": s_in,
        "strict_inclusion": not s_in,
    }
