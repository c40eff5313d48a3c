"""Quotients of affine schemes by finite free equivalence relations and by diagonalizable groups.

Every check produces a :class:`Certificate` with verdict ``pass``, ``fail`` or
``inconclusive`` and an inlined witness where one exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any

from .abgrp import FgAbGroup, GroupHom
from .errors import BudgetExhausted, IllDefinedMap, InputError, NotFree, PreconditionFailed
from .exactalg import (
    Ideal, PresentedAlgebra, RingMap, Subalgebra, TensorProduct, kernel_generators, map_point,
    rational_points, tensor_over,
)
from .exactalg.linalg import nullspace
from .exactalg.poly import Poly, PolyRing
from .flf import FiniteFreeAlgebra
from .grading import (
    MGrading, coaction_from_grading, default_bound, degree_monomial_ideal, degree_zero_subalgebra, minimal_generators,
    _cancels_inverse,
)
from .groups import ConstantGroupScheme, character, diag_quotient, product_algebra

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class Certificate:
    name: str
    verdict: str
    detail: str = ""
    witness: Any = None

    def to_dict(self):
        out = {"name": self.name, "verdict": self.verdict}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def overall(certs) -> str:
    verdicts = [c.verdict for c in certs]
    if FAIL in verdicts:
        return FAIL
    if INCONCLUSIVE in verdicts:
        return INCONCLUSIVE
    return PASS


# --- actions and relations -------------------------------------------------

class ConstantAction:
    """A finite group acting by algebra automorphisms, ``rho[g]`` for each group element.

    Composition convention: ``rho[g*h] = rho[h] ∘ rho[g]`` (pullbacks of a left action).
    """

    def __init__(self, algebra: PresentedAlgebra, group: ConstantGroupScheme, maps):
        if len(maps) != group.order:
            raise InputError(f"need one automorphism per group element ({group.order}), got {len(maps)}")
        self.algebra = algebra
        self.group = group
        self.maps = [m if isinstance(m, RingMap) else RingMap(algebra, algebra, m) for m in maps]
        if not self.maps[group.identity].equals(RingMap.identity(algebra)):
            raise InputError("the identity element must act trivially")
        for a, b in product(range(group.order), repeat=2):
            if not self.maps[group.mul(a, b)].equals(self.maps[b].compose(self.maps[a])):
                raise InputError(f"action is not compatible with the group law at ({a}, {b})")

    @classmethod
    def from_generators(cls, algebra: PresentedAlgebra, group_text: str, generator_images) -> "ConstantAction":
        """Finite abelian group given as text; one image dict per canonical generator."""
        G = FgAbGroup.parse(group_text)
        if not G.is_finite:
            raise InputError("constant actions need a finite group")
        gens = [RingMap(algebra, algebra, imgs) for imgs in generator_images]
        if len(gens) != G.ngens:
            raise InputError(f"{G} has {G.ngens} canonical generators, got {len(gens)} images")
        cg = ConstantGroupScheme.from_abelian(G, algebra.field)
        maps = []
        for e in G.elements():
            m = RingMap.identity(algebra)
            for k, c in enumerate(e):
                for _ in range(c):
                    m = gens[k].compose(m)
            maps.append(m)
        return cls(algebra, cg, maps)

    @classmethod
    def trivial(cls, algebra: PresentedAlgebra) -> "ConstantAction":
        return cls(algebra, ConstantGroupScheme([[0]], None, algebra.field), [RingMap.identity(algebra)])


class EquivalenceRelationAff:
    """``delta1, delta2: A -> C``; C is finite free over A through ``delta2`` when ``basis`` is usable."""

    def __init__(self, A: PresentedAlgebra, C: PresentedAlgebra, delta1: RingMap, delta2: RingMap,
                 basis=None, free: bool = True):
        self.A, self.C = A, C
        self.delta1, self.delta2 = delta1, delta2
        self.flf = FiniteFreeAlgebra(C, A, delta2, basis) if free else None

    @property
    def rank(self):
        return self.flf.rank if self.flf else None


def relation_from_constant_action(a: ConstantAction) -> EquivalenceRelationAff:
    """``C = A^|G|`` presented as ``A ⊗ k^|G|``; ``delta2`` diagonal, ``delta1 = (rho_g)_g``."""
    A = a.algebra
    P = product_algebra(A.field, a.group.order)
    tp = TensorProduct([A, P])
    C = tp.algebra
    delta2 = tp.legs[0]
    idem = [tp.legs[1](e) for e in P.variables]
    images = {}
    for v in A.variables:
        acc = C.zero()
        for g, m in enumerate(a.maps):
            acc = acc + delta2(m.image(v)) * idem[g]
        images[v] = C.reduce(acc)
    delta1 = RingMap(A, C, images)
    r = EquivalenceRelationAff(A, C, delta1, delta2, idem)
    r.action = a
    r.tensor = tp
    return r


def relation_from_grading(g: MGrading) -> EquivalenceRelationAff:
    """``A ⇉ A ⊗ k[M]``: the coaction and the inclusion of the first factor."""
    phi, tp, hopf = coaction_from_grading(g)
    r = EquivalenceRelationAff(g.algebra, tp.algebra, phi, tp.legs[0], None, free=g.group.is_finite)
    r.tensor = tp
    r.hopf = hopf
    return r


# --- freeness ------------------------------------------------------------------

def freeness_check_constant(a: ConstantAction) -> Certificate:
    """Every nontrivial element has empty fixed locus: ``(v - rho_g(v))`` is the unit ideal."""
    A = a.algebra
    for g in range(a.group.order):
        if g == a.group.identity:
            continue
        m = a.maps[g]
        gens = [A.reduce(A.gen(v) - m.image(v)) for v in A.variables]
        ideal = Ideal(A.ring, tuple(gens) + A.ideal.generators)
        if not ideal.is_unit_ideal():
            return Certificate("freeness", FAIL, f"element {a.group.labels[g]} has a nonempty fixed locus",
                               {"element": a.group.labels[g], "fixed_ideal": [str(x) for x in gens],
                                "unit_ideal": False})
    return Certificate("freeness", PASS, "all nontrivial fixed loci are empty")


def _unit_witness(ideal: Ideal, gens, relations) -> str | None:
    cof = ideal.lift(ideal.ring.one())
    if cof is None:
        return None
    terms = []
    for c, m in zip(cof, list(gens) + list(relations)):
        if not c.is_zero() and m in gens:
            terms.append(f"({c})*({m})")
    return "1 = " + (" + ".join(terms) if terms else "0") + " (mod relations)"


def _generator_unit_checks(g: MGrading, bound: int, elements):
    out = []
    for i in elements:
        rep = degree_monomial_ideal(g, i, bound)
        if rep.contains_one():
            w = _unit_witness(rep.ideal, rep.generators, g.algebra.ideal.generators)
            out.append((i, PASS, rep, w))
        elif rep.saturated:
            out.append((i, FAIL, rep, None))
        else:
            out.append((i, INCONCLUSIVE, rep, None))
    return out


def freeness_check_diag(g: MGrading, bound: int | None = None) -> Certificate:
    """``1 in J_i`` for every canonical generator i of M."""
    bound = bound or default_bound(g.group)
    checks = _generator_unit_checks(g, bound, g.group.generators())
    wit = {str(list(i)): {"verdict": v, "J": [str(m) for m in rep.generators], "unit_witness": w}
           for i, v, rep, w in checks}
    verdict = overall([Certificate("", v) for _, v, _, _ in checks])
    detail = {PASS: "1 lies in J_i for every generator", FAIL: "some J_i is a proper ideal",
              INCONCLUSIVE: "monomial enumeration did not saturate"}[verdict]
    return Certificate("freeness", verdict, detail, wit)


# --- results ------------------------------------------------------------------

@dataclass
class QuotientResult:
    B: PresentedAlgebra | None
    inclusion: RingMap | None
    generators: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    certificate: str = ""

    @property
    def verdict(self) -> str:
        return overall(self.certificates)

    def to_dict(self):
        out = {"verdict": self.verdict, "certificates": [c.to_dict() for c in self.certificates]}
        if self.B is not None:
            out["quotient"] = {
                "generators": {n: str(x) for n, x in zip(self.B.variables, self.generators)},
                "relations": [str(r) for r in self.B.relations],
                "completeness": self.certificate,
            }
        return out


def _pair_map_gens(r: EquivalenceRelationAff):
    A = r.A
    return [r.delta1(A.ring.gen(v)) for v in A.ring.variables] + [r.delta2(A.ring.gen(v)) for v in A.ring.variables]


def pair_map_missing(r: EquivalenceRelationAff) -> list:
    """Generators of C not in the image of ``A ⊗ A -> C``."""
    sub = Subalgebra(r.C, _pair_map_gens(r))
    return [v for v in r.C.ring.variables if not sub.contains(r.C.ring.gen(v))]


def is_monomorphism(r: EquivalenceRelationAff) -> bool:
    """``C ⊗_{A⊗A} C -> C`` is an isomorphism (the diagonal of R over X×X)."""
    A = r.A
    idents = []
    for v in A.ring.variables:
        idents.append((r.delta1(A.ring.gen(v)), r.delta1(A.ring.gen(v))))
        idents.append((r.delta2(A.ring.gen(v)), r.delta2(A.ring.gen(v))))
    T = TensorProduct([r.C, r.C], idents)
    return all(T.algebra.equal(T.legs[0](v), T.legs[1](v)) for v in r.C.variables)


def _nonconstant_monomials(A: PresentedAlgebra, degree: int):
    n = A.ring.nvars
    for e in product(range(degree + 1), repeat=n):
        if sum(e) == degree and not _cancels_inverse(A, e):
            yield e


def _normalize(f: Poly) -> Poly:
    if f.is_zero():
        return f
    lead = max(f.terms, key=lambda e: (sum(e), e))
    return f.scale(f.ring.field.inv(f.terms[lead]))


def _equalizer_sweep(r: EquivalenceRelationAff, degree: int) -> list:
    """A basis of ``{a : delta1(a) = delta2(a)}`` inside the span of monomials of total degree <= degree."""
    A, C = r.A, r.C
    mons = [A.ring.monomial(e) for d in range(1, degree + 1) for e in _nonconstant_monomials(A, d)]
    if not mons:
        return []
    diffs = [C.reduce(r.delta1(m) - r.delta2(m)) for m in mons]
    support = sorted({e for d in diffs for e in d.terms})
    M = [[d.terms.get(e, 0) for d in diffs] for e in support]
    if not support:
        ker = [[int(i == j) for i in range(len(mons))] for j in range(len(mons))]
    else:
        ker = nullspace(M, A.field, len(mons))
    out = []
    for vec in ker:
        f = A.zero()
        for c, m in zip(vec, mons):
            if c:
                f = f + m.scale(c)
        f = A.reduce(f)
        if not f.is_constant():
            out.append(_normalize(f))
    return out


def quotient_flf(r: EquivalenceRelationAff, bound: int = 4, override: bool = False) -> QuotientResult:
    """The equalizer subring ``B = {a : delta1(a) = delta2(a)}`` with its presentation."""
    if bound < 1:
        raise InputError("bound must be at least 1")
    A = r.A
    certs = []
    missing = pair_map_missing(r)
    if missing:
        mono = is_monomorphism(r)
        diag = "monomorphism-not-closed" if mono else "pair-map-not-surjective"
        certs.append(Certificate("monomorphism", FAIL, diag,
                                 {"missing_generators": missing, "monomorphism": mono}))
        if not override:
            return QuotientResult(None, None, [], certs, "refused")
    else:
        certs.append(Certificate("monomorphism", PASS, "A⊗A -> C is surjective (closed immersion)"))
    seeds = []
    for d in range(1, bound + 1):
        for e in _nonconstant_monomials(A, d):
            for c in r.flf.charpoly(r.delta1(A.ring.monomial(e)))[1:]:
                c = A.reduce(c)
                if not c.is_constant():
                    seeds.append(_normalize(c))
    cands = list(seeds)
    for f in _equalizer_sweep(r, bound):
        if not cands or not Subalgebra(A, cands).contains(f):
            cands.append(f)
    gens = minimal_generators(A, cands)
    extra = [f for f in _equalizer_sweep(r, bound + 1) if not gens or not Subalgebra(A, gens).contains(f)]
    completeness = "complete-up-to-bound" if extra else "saturated"
    names = [f"v{k + 1}" for k in range(len(gens))]
    sub = Subalgebra(A, gens, names)
    B = sub.presentation(name="B")
    inc = RingMap(B, A, dict(zip(names, gens)))
    certs.append(Certificate("saturation", PASS if not extra else INCONCLUSIVE,
                             completeness, [str(f) for f in extra] or None))
    return QuotientResult(B, inc, gens, certs, completeness)


def verify_flf_quotient(r: EquivalenceRelationAff, res: QuotientResult) -> list:
    """Equalizer, integrality, freeness of rank n and ``A ⊗_B A ≅ C``."""
    A, C = r.A, r.C
    if res.B is None:
        return [Certificate("quotient", FAIL, "no quotient was constructed")]
    out = []
    bad = [str(b) for b in res.generators if not C.equal(r.delta1(b), r.delta2(b))]
    out.append(Certificate("equalizer", FAIL if bad else PASS, "delta1 = delta2 on generators of B", bad or None))
    sub = Subalgebra(A, res.generators, list(res.B.variables))
    polys, ok = {}, True
    for v in A.variables:
        coeffs = [A.reduce(c) for c in r.flf.charpoly(r.delta1(v))]
        exprs = [sub.express(c) for c in coeffs]
        val = A.zero()
        for c in coeffs:
            val = A.reduce(val * A.gen(v) + c)
        if any(x is None for x in exprs) or not A.is_zero(val):
            ok = False
        if all(x is not None for x in exprs):
            ring = PolyRing(A.field, tuple(res.B.variables) + ("T",))
            n = len(exprs) - 1
            chi = ring.zero()
            for k, x in enumerate(exprs):
                chi = chi + x.to_ring(ring) * ring.gen("T") ** (n - k)
            polys[v] = str(chi)
    out.append(Certificate("integrality", PASS if ok else FAIL,
                           "each generator of A is a root of a monic polynomial over B", polys))
    try:
        ff = FiniteFreeAlgebra(A, res.B, res.inclusion)
        if ff.rank == r.rank:
            out.append(Certificate("free-rank", PASS, f"A is free of rank {ff.rank} over B",
                                   [str(x) for x in ff.basis]))
        else:
            out.append(Certificate("free-rank", FAIL, f"A has rank {ff.rank} over B, expected {r.rank}",
                                   [str(x) for x in ff.basis]))
    except (NotFree, BudgetExhausted) as exc:
        out.append(Certificate("free-rank", INCONCLUSIVE, f"integral, rank unverified: {exc}"))
    T = tensor_over([res.inclusion, res.inclusion])
    try:
        psi = T.copair([r.delta1, r.delta2], C, check=True)
    except IllDefinedMap as exc:
        out.append(Certificate("tensor-iso", FAIL, f"A⊗_B A -> C is not well defined: {exc}"))
        return out
    missing = [v for v in C.ring.variables if not Subalgebra(C, psi.images).contains(C.ring.gen(v))]
    kernel = [str(k) for k in kernel_generators(psi)]
    ok = not missing and not kernel
    out.append(Certificate("tensor-iso", PASS if ok else FAIL, "A⊗_B A -> C is an isomorphism",
                           {"not_in_image": missing, "kernel": kernel}))
    return out


# --- diagonalizable quotients ----------------------------------------------

def quotient_diag(g: MGrading, bound: int | None = None, override: bool = False) -> QuotientResult:
    """``B = A_0`` with freeness, generation and (when free) torsor certificates.

    ``bound`` defaults to |M| for finite M and 8 otherwise.
    """
    bound = bound or default_bound(g.group)
    fr = freeness_check_diag(g, bound)
    certs = [fr]
    if fr.verdict == FAIL and not override:
        return QuotientResult(None, None, [], certs, "refused")
    dz = degree_zero_subalgebra(g, bound)
    certs.append(Certificate(
        "degree-zero-generation", PASS if dz.complete else INCONCLUSIVE,
        dz.certificate, {"hilbert_basis_degrees": dz.hilbert_basis_degrees}))
    res = QuotientResult(dz.algebra, dz.inclusion, dz.generators, certs, dz.certificate)
    if fr.verdict == PASS:
        res.certificates += torsor_check(g, res, bound)
    return res


def torsor_check(g: MGrading, res: QuotientResult, bound: int | None = None) -> list:
    """``A_i·A_{-i} = A_0`` for generators (and their negatives) and surjectivity of ``A⊗_{A_0}A -> A[M]``."""
    bound = bound or default_bound(g.group)
    A = g.algebra
    M = g.group
    out = [Certificate("base-condition",
                       PASS if res.certificate == "complete" else INCONCLUSIVE,
                       "degree-0 part is the base of the torsor by construction")]
    elements = []
    for i in M.generators():
        elements.append(i)
        if M.neg(i) != i:
            elements.append(M.neg(i))
    checks = _generator_unit_checks(g, bound, elements)
    wit = {str(list(i)): w for i, v, _, w in checks}
    out.append(Certificate("unit-condition", overall([Certificate("", v) for _, v, _, _ in checks]),
                           "1 lies in J_i and J_-i for every generator i", wit))
    if out[-1].verdict != PASS:
        return out
    phi, tp, hopf = coaction_from_grading(g)
    T = tensor_over([res.inclusion, res.inclusion])
    try:
        psi = T.copair([tp.legs[0], phi], tp.algebra, check=True)
    except IllDefinedMap as exc:
        out.append(Certificate("grouplike-surjectivity", FAIL, str(exc)))
        return out
    ok = True
    for i, _, rep, _ in checks:
        cof = rep.ideal.lift(A.ring.one())
        w = T.algebra.zero()
        for c, m in zip(cof, rep.generators):
            w = w + T.legs[0](c) * T.legs[1](m)
        if not tp.algebra.equal(psi(w), tp.pure(A.one(), character(hopf, i))):
            ok = False
    out.append(Certificate("grouplike-surjectivity", PASS if ok else FAIL,
                           "1⊗X^i lies in the image of A⊗_{A_0}A for the generators and their inverses"))
    return out


# --- point oracle ------------------------------------------------------------

def fiber_square_points_check(res: QuotientResult, r: EquivalenceRelationAff, q: int, cap=None) -> Certificate:
    """``{(x, y) : pi(x) = pi(y)}`` equals the image of ``R(F_q)`` under ``(p1, p2)``."""
    X = rational_points(r.A, q, cap)
    buckets: dict = {}
    for x in X:
        buckets.setdefault(map_point(res.inclusion, x), []).append(x)
    square = {(x, y) for pts in buckets.values() for x in pts for y in pts}
    image = {(map_point(r.delta1, c), map_point(r.delta2, c)) for c in rational_points(r.C, q, cap)}
    ok = square == image
    return Certificate(f"fiber-square-F{q}", PASS if ok else FAIL, "R(F_q) = (X ×_Q X)(F_q)",
                       {"points": len(X), "pairs": len(square), "relation_points": len(image)})


# --- isomorphism search ----------------------------------------------------

def _candidates(Q: PresentedAlgebra, degree: int):
    out = []
    for d in range(1, degree + 1):
        for e in _nonconstant_monomials(Q, d):
            m = Q.reduce(Q.ring.monomial(e))
            if m.is_constant():
                continue
            out += [m, -m]
    uniq = []
    for m in out:
        if not any(Q.equal(m, u) for u in uniq):
            uniq.append(m)
    return uniq


def _maps(P, Q, degree, limit):
    cands = _candidates(Q, degree)
    count = 0
    for combo in product(cands, repeat=len(P.variables)):
        count += 1
        if count > limit:
            raise BudgetExhausted("isomorphism-search", limit)
        try:
            m = RingMap(P, Q, dict(zip(P.variables, combo)))
        except IllDefinedMap:
            continue
        yield m


def find_isomorphism(P: PresentedAlgebra, Q: PresentedAlgebra, degree: int = 2, limit: int = 20000):
    """A pair ``(f: P -> Q, g: Q -> P)`` of mutually inverse maps, or ``None`` if none found."""
    back = list(_maps(Q, P, degree, limit))
    for f in _maps(P, Q, degree, limit):
        for g in back:
            if g.compose(f).equals(RingMap.identity(P)) and f.compose(g).equals(RingMap.identity(Q)):
                return f, g
    return None


def subalgebras_equal(A: PresentedAlgebra, gens1, gens2) -> bool:
    s1, s2 = Subalgebra(A, gens1), Subalgebra(A, gens2)
    return all(s2.contains(x) for x in gens1) and all(s1.contains(x) for x in gens2)


def character_route(n: int, field) -> Any:
    """``D(Z)/D(Z/n)`` through the character group: ``k[nZ] -> k[Z]``."""
    u = GroupHom(FgAbGroup.parse("Z"), FgAbGroup.parse(f"Z/{n}"), [[1]])
    return diag_quotient(u, field)


__all__ = [
    "Certificate", "ConstantAction", "EquivalenceRelationAff", "QuotientResult", "character_route",
    "fiber_square_points_check", "find_isomorphism", "freeness_check_constant", "freeness_check_diag",
    "is_monomorphism", "overall", "pair_map_missing", "quotient_diag", "quotient_flf",
    "relation_from_constant_action", "relation_from_grading", "subalgebras_equal", "torsor_check",
    "verify_flf_quotient",
]
