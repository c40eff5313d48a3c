"""M-gradings of presented algebras: the algebraic side of diagonalizable group actions.

Monomial degree questions ("which monomials have degree i?") are linear
Diophantine problems over N.  Their minimal solutions are computed exactly
with the Contejean–Devie completion procedure, so the degree-0 generators and
the monomial ideals J_i come with an honest completeness flag.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .abgrp import FgAbGroup
from .errors import BudgetExhausted, InputError
from .exactalg import Ideal, PresentedAlgebra, RingMap, Subalgebra, TensorProduct
from .exactalg import budget as _budget
from .exactalg.linalg import rank as _rank
from .exactalg.poly import Poly, format_monomial
from .groups import HopfAlgebraData, character, diag_group_algebra, DiagonalizableGroupScheme


# --- minimal solutions of linear Diophantine systems -----------------------

def hilbert_basis(A, ncols: int, *, z_col: int | None = None, max_steps: int = 2_000_000):
    """Minimal nonzero ``y in N^ncols`` with ``A y = 0`` (Contejean–Devie).

    When ``z_col`` is given only solutions with ``y[z_col] <= 1`` are explored;
    the ones with ``y[z_col] == 1`` are then the minimal solutions of the
    inhomogeneous problem encoded by that column.
    """
    rows = [list(r) for r in A]
    cols = [[r[j] for r in rows] for j in range(ncols)]
    b = _budget.current()

    def image(y):
        return [sum(r[j] * y[j] for j in range(ncols) if y[j]) for r in rows]

    unit = [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
    frontier = {u: cols[j] for j, u in enumerate(unit)}
    basis: list[tuple] = []
    steps = 0
    while frontier:
        nxt = {}
        sols = [y for y, im in frontier.items() if not any(im)]
        for y in sols:
            if not any(all(a <= c for a, c in zip(s, y)) for s in basis):
                basis.append(y)
        for y, im in frontier.items():
            if not any(im):
                continue
            for j in range(ncols):
                if sum(a * c for a, c in zip(im, cols[j])) >= 0:
                    continue
                if z_col is not None and j == z_col and y[z_col] >= 1:
                    continue
                q = list(y)
                q[j] += 1
                q = tuple(q)
                if q in nxt:
                    continue
                if any(all(a <= c for a, c in zip(s, q)) for s in basis):
                    continue
                nxt[q] = [a + c for a, c in zip(im, cols[j])]
                steps += 1
                if steps > max_steps:
                    raise BudgetExhausted("hilbert-basis", max_steps)
        b.charge(len(nxt) // 64 + 1, "hilbert-basis")
        frontier = nxt
    return basis


# --- gradings --------------------------------------------------------------

class MGrading:
    """Degrees in ``group`` for the generators of ``algebra``.

    Hidden inverse companions get the negated degree.  Every relation must be
    homogeneous.
    """

    def __init__(self, algebra: PresentedAlgebra, group: FgAbGroup, degrees: dict):
        self.algebra = algebra
        self.group = group
        degs = {}
        for v in algebra.variables:
            if v not in degrees:
                raise InputError(f"no degree given for generator {v!r}")
            d = degrees[v]
            d = [d] if isinstance(d, int) else list(d)
            degs[v] = group.element(d)
        extra = set(degrees) - set(algebra.variables)
        if extra:
            raise InputError(f"degrees given for unknown generators {sorted(extra)}")
        for v in algebra.inverted:
            degs[algebra.inverse_names[v]] = group.neg(degs[v])
        self.degrees = degs
        self._vec = [degs[v] for v in algebra.ring.variables]
        for r in algebra.relations:
            if len(self.homogeneous_components(r)) > 1:
                raise InputError(f"relation {r} is not homogeneous for the grading")
        self._view_cache = {}

    @classmethod
    def from_json(cls, algebra, fragment: dict) -> "MGrading":
        group = FgAbGroup.parse(str(fragment.get("group", "Z")))
        return cls(algebra, group, fragment["degrees"])

    def to_json(self):
        return {"group": str(self.group), "degrees": {v: list(self.degrees[v]) for v in self.algebra.variables}}

    def degree(self, exp) -> tuple:
        acc = [0] * self.group.ngens
        for k, d in zip(exp, self._vec):
            if k:
                for t in range(len(acc)):
                    acc[t] += k * d[t]
        return self.group.element(acc)

    def is_trivial(self) -> bool:
        return all(not any(d) for d in self._vec)

    def homogeneous_components(self, f: Poly) -> dict:
        out: dict = {}
        for e, c in f.terms.items():
            out.setdefault(self.degree(e), {})[e] = c
        return {d: Poly(f.ring, t) for d, t in out.items()}

    def is_homogeneous(self, f: Poly) -> bool:
        return len(self.homogeneous_components(f)) <= 1

    # --- Diophantine encoding ----------------------------------------------
    def _system(self, target=None):
        """Matrix whose nonnegative kernel describes monomials of degree ``target``.

        Columns: ring variables, then one slack column per torsion coordinate,
        then (when ``target`` is given) a column z for the inhomogeneous part.
        """
        G = self.group
        n = self.algebra.ring.nvars
        r = G.free_rank
        ntor = len(G.torsion)
        ncols = n + ntor + (1 if target is not None else 0)
        rows = []
        for t in range(G.ngens):
            row = [d[t] for d in self._vec] + [0] * (ncols - n)
            if t >= r:
                m = G.torsion[t - r]
                row = [x % m for x in row]
                row[n + (t - r)] = -m
                if target is not None:
                    row[-1] = (-target[t]) % m
            elif target is not None:
                row[-1] = -target[t]
            rows.append(row)
        return rows, ncols

    def minimal_monomials(self, target) -> list:
        """Exponents of the divisibility-minimal monomials of degree ``target`` (exact)."""
        target = self.group.element([target] if isinstance(target, int) else target)
        n = self.algebra.ring.nvars
        if not any(target):
            return [(0,) * n]
        rows, ncols = self._system(target)
        hb = hilbert_basis(rows, ncols, z_col=ncols - 1)
        mons = {y[:n] for y in hb if y[-1] == 1}
        return sorted(mons, key=lambda e: (sum(e), e))

    def degree_zero_monomials(self) -> list:
        """Exponents of the minimal nonconstant degree-0 monomials (a Hilbert basis)."""
        n = self.algebra.ring.nvars
        if n == 0:
            return []
        rows, ncols = self._system()
        hb = hilbert_basis(rows, ncols) if rows else [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
        mons = {y[:n] for y in hb if any(y[:n])}
        return sorted(mons, key=lambda e: (sum(e), e))


class GradedAlgebraView:
    """All monomials of a given degree up to a working total-degree bound, cached per degree."""

    def __init__(self, grading: MGrading, bound: int):
        self.grading = grading
        self.bound = bound
        self._cache: dict = {}

    def monomials(self, degree) -> list:
        g = self.grading
        d = g.group.element([degree] if isinstance(degree, int) else degree)
        if d not in self._cache:
            n = g.algebra.ring.nvars
            out = []

            def walk(k, left, exp):
                if k == n:
                    if g.degree(exp) == d and not _cancels_inverse(g.algebra, exp):
                        out.append(tuple(exp))
                    return
                for a in range(left + 1):
                    exp.append(a)
                    walk(k + 1, left - a, exp)
                    exp.pop()

            walk(0, self.bound, [])
            self._cache[d] = sorted(out, key=lambda e: (sum(e), e))
        return self._cache[d]


def default_bound(group: FgAbGroup, fallback: int = 8) -> int:
    """|M| for finite M (at least 1), otherwise ``fallback``."""
    return max(1, int(group.order())) if group.is_finite else fallback


def _cancels_inverse(alg: PresentedAlgebra, e) -> bool:
    """Does the monomial contain some ``v * v_inv`` (hence equal a smaller monomial)?"""
    idx = alg.ring.index
    return any(e[idx[v]] and e[idx[alg.inverse_names[v]]] for v in alg.inverted)


def coaction_from_grading(g: MGrading):
    """``A -> A ⊗ k[M]``, ``v -> v ⊗ X^deg(v)``. Returns ``(map, tensor product, hopf data)``."""
    hopf = diag_group_algebra(DiagonalizableGroupScheme(g.group, g.algebra.field))
    tp = TensorProduct([g.algebra, hopf.carrier])
    images = {}
    for v in g.algebra.variables:
        images[v] = tp.pure(v, character(hopf, g.degrees[v]))
    return RingMap(g.algebra, tp.algebra, images), tp, hopf


def check_coaction(g: MGrading) -> dict:
    """The comodule axioms for the coaction, compared on generators."""
    phi, tp, hopf = coaction_from_grading(g)
    A, H = g.algebra, hopf.carrier
    t3 = TensorProduct([A, H, H])
    pr_hh = hopf.t2.copair([t3.legs[1], t3.legs[2]], t3.algebra, check=False)
    id_delta = tp.copair([t3.legs[0], pr_hh.compose(hopf.comultiplication)], t3.algebra, check=False)
    pr_ah = tp.copair([t3.legs[0], t3.legs[1]], t3.algebra, check=False)
    phi_id = tp.copair([pr_ah.compose(phi), t3.legs[2]], t3.algebra, check=False)
    coassoc = id_delta.compose(phi).equals(phi_id.compose(phi))
    eps = RingMap.structural(A).compose(hopf.counit)
    id_eps = tp.copair([RingMap.identity(A), eps], A, check=False)
    counit = id_eps.compose(phi).equals(RingMap.identity(A))
    return {"coassociative": coassoc, "counit": counit}


def homogeneous_components(g: MGrading, f) -> dict:
    return g.homogeneous_components(g.algebra.reduce(g.algebra.parse(f)))


@dataclass
class MonomialIdealReport:
    degree: tuple
    ideal: Ideal
    generators: list
    saturated: bool
    unbounded_count: int

    def contains_one(self) -> bool:
        return self.ideal.is_unit_ideal() if self.generators else False


def degree_monomial_ideal(g: MGrading, i, bound: int) -> MonomialIdealReport:
    """``J_i``: the ideal of A generated by the minimal degree-i monomials of total degree <= bound.

    ``saturated`` is true when no minimal degree-i monomial exceeds the bound,
    so that J_i is exactly the ideal generated by all of A_i.
    """
    if bound < 1:
        raise InputError("bound must be at least 1")
    A = g.algebra
    i = g.group.element([i] if isinstance(i, int) else i)
    mons = [e for e in g.minimal_monomials(i) if not _cancels_inverse(A, e)]
    kept = [e for e in mons if sum(e) <= bound]
    gens = [A.ring.monomial(e) for e in kept]
    ideal = Ideal(A.ring, tuple(gens) + A.ideal.generators)
    return MonomialIdealReport(i, ideal, gens, len(kept) == len(mons), len(mons))


@dataclass
class DegreeZeroResult:
    algebra: PresentedAlgebra
    inclusion: RingMap
    generators: list
    certificate: str
    hilbert_basis_degrees: list = field(default_factory=list)
    dropped: list = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.certificate == "complete"


def _linear_span_member(alg, f, others):
    """Cheap sufficient test: f is a k-linear combination of 1 and ``others``."""
    polys = [alg.one()] + list(others)
    mons = sorted({e for p in polys + [f] for e in p.terms})
    M = [[p.terms.get(e, 0) for p in polys] for e in mons]
    aug = [row + [f.terms.get(e, 0)] for row, e in zip(M, mons)]
    return _rank(M, alg.field) == _rank(aug, alg.field)


def _display_key(A, p):
    lead = max(p.terms, key=lambda e: A._order.key(e))
    return (sum(lead), tuple(-x for x in lead))


def minimal_generators(A: PresentedAlgebra, cands) -> list:
    """Greedy pass: drop, largest first, any candidate lying in the subalgebra of the others.

    Returned by increasing degree, user variables before inverse companions.
    """
    def key(p):
        return A._order.key(A._order.leading(p.terms))

    kept = [f for f in cands if not f.is_zero()]
    for f in sorted(kept, key=key, reverse=True):
        others = [h for h in kept if h is not f]
        if _linear_span_member(A, f, others) or (others and Subalgebra(A, others).contains(f)):
            kept = others
    kept.sort(key=lambda p: _display_key(A, p))
    return kept


def degree_zero_subalgebra(g: MGrading, bound: int, names=None) -> DegreeZeroResult:
    """Generators and presentation of the invariant ring A_0.

    Candidates are the minimal degree-0 monomials of total degree <= bound;
    the greedy pass drops any candidate lying in the subalgebra generated by
    the remaining ones (largest first).  The certificate is ``complete`` when
    every minimal degree-0 monomial fits in the bound, in which case the
    candidates provably generate A_0.
    """
    if bound < 1:
        raise InputError("bound must be at least 1")
    A = g.algebra
    hb = [e for e in g.degree_zero_monomials() if not _cancels_inverse(A, e)]
    within = [e for e in hb if sum(e) <= bound]
    certificate = "complete" if len(within) == len(hb) else "complete-up-to-bound"
    cands = []
    seen = []
    for e in within:
        f = A.reduce(A.ring.monomial(e))
        if f.is_constant() or any(A.equal(f, s) for s in seen):
            continue
        seen.append(f)
        cands.append(f)
    kept = minimal_generators(A, cands)
    dropped = [f for f in cands if not any(f is h for h in kept)]
    names = names or [f"u{k + 1}" for k in range(len(kept))]
    sub = Subalgebra(A, kept, names)
    A0 = sub.presentation(name="A_0")
    inc = RingMap(A0, A, dict(zip(names, kept)))
    return DegreeZeroResult(A0, inc, kept, certificate, sorted(sum(e) for e in hb), dropped)


@dataclass
class GradedModule:
    """A module over a graded algebra: generators with degrees and homogeneous relation rows."""

    grading: MGrading
    degrees: list
    relations: list = field(default_factory=list)

    def __post_init__(self):
        G = self.grading.group
        self.degrees = [G.element(d if not isinstance(d, int) else [d]) for d in self.degrees]
        A = self.grading.algebra
        rows = []
        for row in self.relations:
            row = [A.reduce(A.parse(x)) for x in row]
            if len(row) != len(self.degrees):
                raise InputError("relation rows must have one entry per generator")
            degs = set()
            for x, d in zip(row, self.degrees):
                for dd in self.grading.homogeneous_components(x):
                    degs.add(G.add(dd, d))
            if len(degs) > 1:
                raise InputError(f"relation row {row} is not homogeneous")
            rows.append(row)
        self.relations = rows


def graded_module_component(m: GradedModule, i, bound: int):
    """Generators over A_0 of the degree-i part: pairs ``(monomial, generator index)``.

    Each is the minimal monomial multiple of a module generator landing in degree i.
    """
    g = m.grading
    G = g.group
    A = g.algebra
    out = []
    for j, d in enumerate(m.degrees):
        target = G.sub(G.element([i] if isinstance(i, int) else i), d)
        for e in g.minimal_monomials(target):
            if _cancels_inverse(A, e) or sum(e) > bound:
                continue
            out.append((A.ring.monomial(e), j))
    return out


def parse_grading(algebra: PresentedAlgebra, fragment) -> MGrading:
    if isinstance(fragment, str):
        fragment = json.loads(fragment)
    return MGrading.from_json(algebra, fragment)


def format_exponent(alg: PresentedAlgebra, e) -> str:
    return format_monomial(e, alg.ring.variables) or "1"
