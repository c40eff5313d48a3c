"""Group schemes as Hopf algebra data, and checkers for the Kummer,
Artin–Schreier and alpha_p sequences on explicit test algebras."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from itertools import product

from gmpy2 import iroot, mpq

from .abgrp import FgAbGroup, GroupHom, kernel
from .errors import InputError, NotFinite, PreconditionFailed
from .exactalg import PresentedAlgebra, RingMap, TensorProduct, extension, jacobian_etale_check
from .exactalg.field import CoeffField
from .exactalg.linalg import nullspace
from .exactalg.tensor import projection_map


class HopfAlgebraData:
    """Carrier algebra with comultiplication, counit and antipode."""

    def __init__(self, carrier: PresentedAlgebra, comult_images, counit_images, antipode_images, name=""):
        self.carrier = carrier
        self.name = name
        self.base = PresentedAlgebra.base_field(carrier.field)
        self.t2 = TensorProduct([carrier, carrier])
        self.comultiplication = RingMap(carrier, self.t2.algebra, comult_images)
        self.counit = RingMap(carrier, self.base, counit_images)
        self.antipode = RingMap(carrier, carrier, antipode_images)

    @property
    def field(self):
        return self.carrier.field

    def check_axioms(self) -> dict:
        """Coassociativity, both counit laws and both antipode laws, compared on generators."""
        H = self.carrier
        t2 = self.t2
        t3 = TensorProduct([H, H, H])
        delta = self.comultiplication
        ident = RingMap.identity(H)
        unit = RingMap.structural(H)
        eps = unit.compose(self.counit)
        pr12 = projection_map(t2, t3, 1, 2)
        pr23 = projection_map(t2, t3, 2, 3)
        d_id = t2.copair([pr12.compose(delta), t3.legs[2]], t3.algebra, check=False)
        id_d = t2.copair([t3.legs[0], pr23.compose(delta)], t3.algebra, check=False)
        out = {"coassociative": d_id.compose(delta).equals(id_d.compose(delta))}
        left = t2.copair([eps, ident], H, check=False)
        right = t2.copair([ident, eps], H, check=False)
        out["counit"] = left.compose(delta).equals(ident) and right.compose(delta).equals(ident)
        mS1 = t2.copair([self.antipode, ident], H, check=False)
        m1S = t2.copair([ident, self.antipode], H, check=False)
        out["antipode"] = mS1.compose(delta).equals(eps) and m1S.compose(delta).equals(eps)
        return out

    def is_hopf(self) -> bool:
        return all(self.check_axioms().values())

    def dimension(self) -> int:
        return self.carrier.dimension()

    def __repr__(self):
        return f"HopfAlgebraData({self.name or self.carrier.describe()})"


# --- constant groups --------------------------------------------------------

class ConstantGroupScheme:
    """A finite group given by its multiplication table on labels ``0..n-1``."""

    def __init__(self, table, labels=None, field: CoeffField | None = None):
        self.table = [list(map(int, r)) for r in table]
        n = len(self.table)
        self.order = n
        self.labels = list(labels) if labels else [str(i) for i in range(n)]
        self.field = field or CoeffField(0)
        if n == 0 or any(len(r) != n or any(not 0 <= x < n for x in r) for r in self.table):
            raise InputError("group table must be a square table of labels 0..n-1")
        ids = [e for e in range(n) if all(self.table[e][a] == a and self.table[a][e] == a for a in range(n))]
        if not ids:
            raise InputError("group table has no identity")
        self.identity = ids[0]
        for a, b, c in product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise InputError("group table is not associative")
        self.inverses = []
        for a in range(n):
            inv = [b for b in range(n) if self.table[a][b] == self.identity]
            if not inv:
                raise InputError(f"element {a} has no inverse")
            self.inverses.append(inv[0])

    def mul(self, a, b):
        return self.table[a][b]

    @classmethod
    def from_abelian(cls, group: FgAbGroup, field=None) -> "ConstantGroupScheme":
        elems = group.elements()
        index = {e: i for i, e in enumerate(elems)}
        table = [[index[group.add(a, b)] for b in elems] for a in elems]
        return cls(table, ["(" + ",".join(map(str, e)) + ")" for e in elems], field)

    @classmethod
    def cyclic(cls, n: int, field=None) -> "ConstantGroupScheme":
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], None, field)

    @classmethod
    def symmetric3(cls, field=None) -> "ConstantGroupScheme":
        perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
        idx = {p: i for i, p in enumerate(perms)}
        table = [[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
        return cls(table, ["".join(map(str, p)) for p in perms], field)

    @classmethod
    def parse(cls, text: str, field=None) -> "ConstantGroupScheme":
        """``Z/n`` style group text, ``S3``, or a JSON multiplication table."""
        t = text.strip()
        if t.upper() == "S3":
            return cls.symmetric3(field)
        if t.startswith("["):
            return cls(json.loads(t), None, field)
        return cls.from_abelian(FgAbGroup.parse(t), field)


def product_algebra(field: CoeffField, n: int, prefix: str = "e") -> PresentedAlgebra:
    """``k^n`` presented on its primitive idempotents."""
    names = [f"{prefix}{i}" for i in range(n)]
    rels = []
    for i in range(n):
        rels.append(f"{names[i]}^2 - {names[i]}")
        for j in range(i + 1, n):
            rels.append(f"{names[i]}*{names[j]}")
    if n:
        rels.append(" + ".join(names) + " - 1")
    else:
        rels.append("1")
    return PresentedAlgebra(field, names, rels)


def constant_group_algebra(g: ConstantGroupScheme) -> HopfAlgebraData:
    n = g.order
    H = product_algebra(g.field, n)
    names = list(H.variables)
    t2 = TensorProduct([H, H])
    comult = {}
    for a in range(n):
        terms = [t2.pure(names[b], names[c]) for b in range(n) for c in range(n) if g.mul(b, c) == a]
        total = t2.algebra.zero()
        for t in terms:
            total = total + t
        comult[names[a]] = total
    counit = {names[a]: int(a == g.identity) for a in range(n)}
    antipode = {names[a]: names[g.inverses[a]] for a in range(n)}
    return HopfAlgebraData(H, comult, counit, antipode, name=f"constant group of order {n}")


# --- diagonalizable groups -------------------------------------------------

@dataclass
class DiagonalizableGroupScheme:
    group: FgAbGroup
    field: CoeffField = field(default_factory=CoeffField)
    names: tuple | None = None

    def generator_names(self):
        if self.names:
            return list(self.names)
        M = self.group
        free = ["X"] if M.free_rank == 1 else [f"X{i + 1}" for i in range(M.free_rank)]
        tors = ["U"] if len(M.torsion) == 1 else [f"U{j + 1}" for j in range(len(M.torsion))]
        return free + tors


def diag_group_algebra(d: DiagonalizableGroupScheme) -> HopfAlgebraData:
    M = d.group
    names = d.generator_names()
    free = names[: M.free_rank]
    tors = names[M.free_rank:]
    rels = [f"{u}^{n} - 1" for u, n in zip(tors, M.torsion)]
    H = PresentedAlgebra(d.field, names, rels, inverted=free)
    t2 = TensorProduct([H, H])
    comult = {v: t2.pure(v, v) for v in names}
    counit = {v: 1 for v in names}
    antipode = {v: H.inv(v) for v in free}
    antipode.update({u: f"{u}^{n - 1}" for u, n in zip(tors, M.torsion)})
    hd = HopfAlgebraData(H, comult, counit, antipode, name=f"D({M})")
    hd.diag = d
    return hd


def character(h: HopfAlgebraData, element):
    """The grouplike monomial ``X^m`` of the group algebra for ``m`` in M."""
    M = h.diag.group
    H = h.carrier
    m = M.element(element)
    out = H.one()
    for v, k in zip(H.variables, m):
        if k >= 0:
            out = out * H.gen(v) ** k
        else:
            out = out * H.inv(v) ** (-k)
    return H.reduce(out)


def diag_degree(d: DiagonalizableGroupScheme) -> int:
    if not d.group.is_finite:
        raise NotFinite(f"D({d.group}) is not finite over the base")
    return diag_group_algebra(d).dimension()


@dataclass
class DiagQuotient:
    group: FgAbGroup
    hopf: HopfAlgebraData
    inclusion: RingMap
    kernel_inclusion: GroupHom


def diag_quotient(u: GroupHom, field: CoeffField | None = None) -> DiagQuotient:
    """For surjective ``u: N -> M``, the quotient ``D(N)/D(M) = D(ker u)`` with ``k[ker u] -> k[N]``."""
    if not u.is_surjective():
        raise PreconditionFailed(f"{u} is not surjective")
    field = field or CoeffField(0)
    K, inc = kernel(u)
    hK = diag_group_algebra(DiagonalizableGroupScheme(K, field, tuple(f"Y{i + 1}" for i in range(K.ngens)) or None))
    hN = diag_group_algebra(DiagonalizableGroupScheme(u.source, field))
    images = {v: character(hN, inc(g)) for v, g in zip(hK.carrier.variables, K.generators())}
    return DiagQuotient(K, hK, RingMap(hK.carrier, hN.carrier, images), inc)


def gm(field=None):
    return diag_group_algebra(DiagonalizableGroupScheme(FgAbGroup(1), field or CoeffField(0)))


def mu(n: int, field=None):
    if n < 1:
        raise InputError("mu_n needs n >= 1")
    grp = FgAbGroup(0, (n,)) if n > 1 else FgAbGroup()
    return diag_group_algebra(DiagonalizableGroupScheme(grp, field or CoeffField(0)))


def ga(field=None) -> HopfAlgebraData:
    field = field or CoeffField(0)
    H = PresentedAlgebra(field, ["x"])
    t2 = TensorProduct([H, H])
    return HopfAlgebraData(H, {"x": t2.pure("x", 1) + t2.pure(1, "x")}, {"x": 0}, {"x": "-x"}, name="Ga")


def alpha_p(field: CoeffField) -> HopfAlgebraData:
    if not field.p:
        raise InputError("alpha_p needs a prime field")
    p = field.p
    H = PresentedAlgebra(field, ["x"], [f"x^{p}"])
    t2 = TensorProduct([H, H])
    return HopfAlgebraData(H, {"x": t2.pure("x", 1) + t2.pure(1, "x")}, {"x": 0}, {"x": "-x"}, name=f"alpha_{p}")


def group_scheme_from_tag(tag: str, field: CoeffField) -> HopfAlgebraData:
    """``Gm``, ``Ga``, ``mu_n``, ``alpha_p``, ``const:<table or group>``, ``diag:<group>``."""
    t = tag.strip()
    if t in ("Gm", "G_m"):
        return gm(field)
    if t in ("Ga", "G_a"):
        return ga(field)
    if t in ("alpha_p", "alphap"):
        return alpha_p(field)
    m = re.fullmatch(r"mu_?(\d+)", t)
    if m:
        return mu(int(m.group(1)), field)
    if t.startswith("const:"):
        return constant_group_algebra(ConstantGroupScheme.parse(t[6:], field))
    if t.startswith("diag:"):
        return diag_group_algebra(DiagonalizableGroupScheme(FgAbGroup.parse(t[5:]), field))
    raise InputError(f"unknown group scheme tag {tag!r}")


# --- exact sequences ----------------------------------------------------------

@dataclass
class SequenceReport:
    sequence: str
    base: str
    cover: PresentedAlgebra | None
    cover_rank: int | None
    free_basis: list
    witness: str | None
    witness_ok: bool
    kernel: list | None
    kernel_size: int | None
    etale: bool | None
    verdicts: dict
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "sequence": self.sequence,
            "base": self.base,
            "cover": self.cover.describe() if self.cover is not None else None,
            "cover_rank": self.cover_rank,
            "free_basis": self.free_basis,
            "witness": self.witness,
            "witness_ok": self.witness_ok,
            "kernel": self.kernel,
            "kernel_size": self.kernel_size,
            "etale": self.etale,
            "verdicts": self.verdicts,
            **self.extra,
        }


def _fresh(base: PresentedAlgebra, name="T"):
    while name in base.ring.variables:
        name += "_"
    return name


def _monic_cover(base, T, rel, degree):
    """``base[T]/(rel)`` with rel monic of ``degree`` in T: free with basis 1..T^(degree-1)."""
    B = extension(base, [T], [rel])
    basis = ["1"] + [T if k == 1 else f"{T}^{k}" for k in range(1, degree)]
    return B, basis


def _small_elements(alg: PresentedAlgebra, cap=20000):
    if not alg.field.p:
        return None
    try:
        basis = alg.standard_monomials()
    except NotFinite:
        return None
    if alg.field.p ** len(basis) > cap:
        return None
    return list(alg.elements(cap))


def _frobenius_matrix(alg, basis, shift: bool):
    """Matrix (columns = images) of x -> x^p (minus x when ``shift``) on a k-basis."""
    p = alg.field.p
    cols = []
    for i, e in enumerate(basis):
        img = alg.coordinates(alg.power(alg.ring.monomial(e), p), basis)
        if shift:
            img[i] = (img[i] - 1) % p
        cols.append(img)
    n = len(basis)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def frobenius_fixed_space(alg):
    """F_p-basis of ``{x : x^p = x}`` (finite-dimensional ``alg`` over F_p)."""
    basis = alg.standard_monomials()
    M = _frobenius_matrix(alg, basis, shift=True)
    return [alg.from_coordinates(v, basis) for v in nullspace(M, alg.field, len(basis))]


def primitive_idempotents(alg):
    """Primitive idempotents of a finite-dimensional F_p-algebra (they span the Frobenius-fixed space)."""
    p = alg.field.p
    fixed = frobenius_fixed_space(alg)
    idems = [alg.one()]
    for b in fixed:
        new = []
        for e in idems:
            y = alg.reduce(b * e)
            for c in range(p):
                f = e
                for d in range(p):
                    if d != c:
                        f = alg.reduce(f * (y - e * d) * alg.field.inv((c - d) % p))
                if not alg.is_zero(f):
                    new.append(f)
        idems = new
    return idems


def _rational_root(x, n):
    x = mpq(x)
    if x < 0 and n % 2 == 0:
        return None
    sign = -1 if x < 0 else 1
    a, ea = iroot(abs(x.numerator), n)
    b, eb = iroot(x.denominator, n)
    if ea and eb:
        return sign * mpq(a, b)
    return None


def kummer_check(base: PresentedAlgebra, xi, n: int) -> SequenceReport:
    xi = base.reduce(base.parse(xi))
    if n < 1:
        raise InputError("n must be positive")
    if not base.is_unit(xi):
        raise PreconditionFailed(f"{xi} is not a unit of {base.describe()}")
    T = _fresh(base)
    rel = f"{T}^{n} - ({xi})"
    B, basis = _monic_cover(base, T, rel, n)
    witness_ok = B.is_zero(B.gen(T) ** n - xi.to_ring(B.ring)) and not B.is_zero_algebra
    etale = jacobian_etale_check(base, [T], [rel])
    extra = {}
    # a root already in the base gives the trivial cover as a witness
    root = None
    if xi.is_constant() and not base.field.p and not base.variables:
        root = _rational_root(xi.constant_value(), n)
    else:
        elems = _small_elements(base)
        if elems is not None:
            root = next((e for e in elems if base.equal(base.power(e, n), xi)), None)
    if root is not None:
        extra["root_in_base"] = str(root)
    kern = None
    if not base.variables and not base.field.p:
        kern = ["1", "-1"] if n % 2 == 0 else ["1"]
    else:
        elems = _small_elements(base)
        if elems is not None:
            kern = [str(e) for e in elems if base.equal(base.power(e, n), base.one())]
    verdicts = {
        "kernel": "computed" if kern is not None else "not-computed",
        "surjectivity": "witnessed" if witness_ok else "failed",
        "cover_faithfully_flat": "free" if n >= 1 and not base.is_zero_algebra else "zero",
        "etale": etale,
    }
    return SequenceReport("kummer", base.describe(), B, n, basis, T, witness_ok, kern,
                          None if kern is None else len(kern), etale, verdicts, extra)


def artin_schreier_check(base: PresentedAlgebra, a) -> SequenceReport:
    p = base.field.p
    if not p:
        raise InputError("Artin–Schreier needs a prime field of characteristic p")
    a = base.reduce(base.parse(a))
    T = _fresh(base)
    rel = f"{T}^{p} - {T} - ({a})"
    B, basis = _monic_cover(base, T, rel, p)
    witness_ok = B.is_zero(B.gen(T) ** p - B.gen(T) - a.to_ring(B.ring)) and not B.is_zero_algebra
    etale = jacobian_etale_check(base, [T], [rel])
    kern = ksize = None
    extra = {}
    if base.is_finite_dimensional():
        fixed = frobenius_fixed_space(base)
        kern = [str(f) for f in fixed]
        ksize = p ** len(fixed)
        idems = primitive_idempotents(base)
        extra["components"] = len(idems)
        extra["idempotents"] = [str(e) for e in idems]
        extra["cover_components"] = len(frobenius_fixed_space(B))
    verdicts = {
        "kernel": "computed" if kern is not None else "not-computed",
        "surjectivity": "witnessed" if witness_ok else "failed",
        "cover_faithfully_flat": "free",
        "etale": etale,
    }
    return SequenceReport("artin-schreier", base.describe(), B, p, basis, T, witness_ok, kern, ksize,
                          etale, verdicts, extra)


def alphap_kernel(alg: PresentedAlgebra):
    """F_p-basis of ``{x : x^p = 0}`` in a finite-dimensional algebra over F_p."""
    if not alg.field.p:
        raise InputError("alpha_p kernel needs a prime field")
    basis = alg.standard_monomials()
    M = _frobenius_matrix(alg, basis, shift=False)
    return [alg.from_coordinates(v, basis) for v in nullspace(M, alg.field, len(basis))]


def fourier_isomorphism(n: int, field: CoeffField, zeta):
    """The isomorphism ``k[u]/(u^n - 1) -> k^n``, ``u -> sum zeta^i e_i``, and its inverse.

    Requires ``n`` invertible and ``zeta`` a primitive n-th root of unity in ``field``.
    """
    if field.p and n % field.p == 0:
        raise PreconditionFailed("n must be invertible")
    zeta = field(zeta)
    F = field
    if F(n) == 0 or any(F(zeta ** k) == 1 for k in range(1, n)) or F(zeta ** n) != 1:
        raise PreconditionFailed(f"{zeta} is not a primitive {n}-th root of unity")
    D = mu(n, field).carrier
    P = product_algebra(field, n)
    u = D.variables[0]
    forward = RingMap(D, P, {u: " + ".join(f"{F(zeta ** i)}*e{i}" for i in range(n))})
    ninv = F.inv(F(n))
    back = {}
    for i in range(n):
        # e_i = (1/n) sum_j zeta^(-ij) u^j
        zinv = F.inv(F(zeta ** i)) if i else F(1)
        terms = [f"{F(ninv * zinv ** j)}*{u}^{j}" for j in range(n)]
        back[f"e{i}"] = " + ".join(terms)
    backward = RingMap(P, D, back)
    return forward, backward
