"""Finitely generated abelian groups in Smith normal form.

Coordinates of a group element list the free coordinates first, then one
coordinate per torsion factor ``Z/n_j`` (reduced into ``[0, n_j)``).
Homomorphisms act on column vectors: ``matrix[i][j]`` is coordinate ``i`` of
the image of source generator ``j``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from itertools import product

from .errors import InputError, NotFinite


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


@dataclass
class SNF:
    """``U @ m @ V == D`` and ``Uinv @ D @ Vinv == m``, with U, V unimodular."""

    U: list
    D: list
    V: list
    Uinv: list
    Vinv: list

    @property
    def diagonal(self):
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d)

    def __iter__(self):
        return iter((self.U, self.D, self.V))


def smith_normal_form(m) -> SNF:
    """Smith normal form of an integer matrix with transformation matrices.

    The diagonal entries are nonnegative and form a divisibility chain.
    """
    A = [list(map(int, r)) for r in m]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    U, Uinv, V, Vinv = _eye(nr), _eye(nr), _eye(nc), _eye(nc)

    def row_add(i, t, q):  # row_i += q * row_t
        A[i] = [a + q * b for a, b in zip(A[i], A[t])]
        U[i] = [a + q * b for a, b in zip(U[i], U[t])]
        for r in Uinv:  # col_t -= q * col_i
            r[t] -= q * r[i]

    def col_add(j, t, q):  # col_j += q * col_t
        for r in A:
            r[j] += q * r[t]
        for r in V:
            r[j] += q * r[t]
        Vinv[t] = [a - q * b for a, b in zip(Vinv[t], Vinv[j])]

    def row_swap(i, t):
        A[i], A[t] = A[t], A[i]
        U[i], U[t] = U[t], U[i]
        for r in Uinv:
            r[i], r[t] = r[t], r[i]

    def col_swap(j, t):
        for r in A:
            r[j], r[t] = r[t], r[j]
        for r in V:
            r[j], r[t] = r[t], r[j]
        Vinv[j], Vinv[t] = Vinv[t], Vinv[j]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                row_swap(best[0], t)
            if best[1] != t:
                col_swap(best[1], t)
            piv = A[t][t]
            for i in range(t + 1, nr):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // piv))
            for j in range(t + 1, nc):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // piv))
            if any(A[i][t] for i in range(t + 1, nr)) or any(A[t][j] for j in range(t + 1, nc)):
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % piv), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if t < nr and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
            for r in Uinv:
                r[t] = -r[t]
    return SNF(U, A, V, Uinv, Vinv)


@dataclass(frozen=True)
class FgAbGroup:
    """``Z^free_rank ⊕ Z/n_1 ⊕ ... ⊕ Z/n_k`` with ``n_1 | n_2 | ...`` and every ``n_j >= 2``."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(n) for n in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0 or any(n < 2 for n in t):
            raise InputError(f"invalid group data {self.free_rank}, {t}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise InputError(f"torsion {t} is not a divisibility chain; use FgAbGroup.from_invariants")

    @classmethod
    def from_invariants(cls, free_rank: int, orders) -> "FgAbGroup":
        """Canonical form of ``Z^r ⊕ ⊕ Z/orders[j]`` for arbitrary positive orders."""
        return cls.presented(free_rank, orders)[0]

    @classmethod
    def presented(cls, free_rank: int, orders):
        """Canonical form plus the coordinate change from the given summands.

        Returns ``(group, to_canonical)`` where ``to_canonical`` is the matrix of
        the isomorphism in the given generators.
        """
        orders = [int(n) for n in orders]
        if any(n <= 0 for n in orders):
            raise InputError("cyclic orders must be positive")
        n = free_rank + len(orders)
        rel = [[0] * len(orders) for _ in range(n)]
        for j, o in enumerate(orders):
            rel[free_rank + j][j] = o
        if not n:
            return cls(), []
        group, embed = _quotient(n, [], rel)
        return group, _project_matrix(n, rel, group, embed)

    @classmethod
    def parse(cls, text: str) -> "FgAbGroup":
        return cls.parse_with_map(text)[0]

    @classmethod
    def parse_with_map(cls, text: str):
        """Parse ``Z^r + Z/n1 + Z/n2`` (``0`` for the trivial group).

        Returns the canonical group and the matrix taking coordinates with respect
        to the written summands (free ones first) to canonical coordinates.
        """
        t = text.replace(" ", "")
        if t in ("", "0", "1"):
            return cls(), []
        free, orders = 0, []
        for part in t.split("+"):
            m = re.fullmatch(r"Z(?:\^(\d+))?", part)
            if m:
                k = int(m.group(1) or 1)
                free += k
                continue
            m = re.fullmatch(r"Z/(\d+)", part)
            if m:
                orders.append(int(m.group(1)))
                continue
            if part in ("0", "1"):
                continue
            raise InputError(f"cannot parse group summand {part!r} in {text!r}")
        return cls.presented(free, orders)

    # --- basic data -------------------------------------------------------
    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self):
        """``|M|``, or ``math.inf`` when the free rank is positive."""
        if self.free_rank:
            return math.inf
        return math.prod(self.torsion)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{n}" for n in self.torsion]
        return " + ".join(parts) if parts else "0"

    def element(self, coords) -> tuple:
        coords = [int(c) for c in coords]
        if len(coords) != self.ngens:
            raise InputError(f"element {coords} has wrong length for {self}")
        r = self.free_rank
        return tuple(coords[:r]) + tuple(c % n for c, n in zip(coords[r:], self.torsion))

    def zero(self) -> tuple:
        return (0,) * self.ngens

    def add(self, a, b) -> tuple:
        return self.element([x + y for x, y in zip(a, b)])

    def neg(self, a) -> tuple:
        return self.element([-x for x in a])

    def sub(self, a, b) -> tuple:
        return self.element([x - y for x, y in zip(a, b)])

    def scale(self, k: int, a) -> tuple:
        return self.element([k * x for x in a])

    def generators(self):
        return [tuple(int(i == j) for j in range(self.ngens)) for i in range(self.ngens)]

    def elements(self):
        if not self.is_finite:
            raise NotFinite(f"{self} is infinite")
        return [tuple(c) for c in product(*(range(n) for n in self.torsion))]

    def element_order(self, a):
        a = self.element(a)
        if any(a[: self.free_rank]):
            return math.inf
        out = 1
        for x, n in zip(a[self.free_rank:], self.torsion):
            out = math.lcm(out, n // math.gcd(x, n))
        return out

    def relation_matrix(self):
        """Columns generate the relation lattice in ``Z^ngens``."""
        n = self.ngens
        cols = [[0] * n for _ in self.torsion]
        for j, m in enumerate(self.torsion):
            cols[j][self.free_rank + j] = m
        return [[cols[j][i] for j in range(len(cols))] for i in range(n)]

    def contains_subgroup(self, elems):
        return SubgroupMembership(self, elems)


def _lattice_member(snf: SNF, v):
    """Is ``v`` in the column lattice of the matrix whose SNF is ``snf``?"""
    w = [sum(a * b for a, b in zip(row, v)) for row in snf.U]
    d = snf.diagonal
    for i, x in enumerate(w):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if x:
                return False
        elif x % di:
            return False
    return True


def _hcat(n, *blocks):
    rows = [[] for _ in range(n)]
    for B in blocks:
        for i in range(n):
            rows[i] += list(B[i]) if B else []
    return rows


def _lattice_basis(n, gens_cols):
    """A basis (as columns of an n x r matrix) of the lattice spanned by ``gens_cols``."""
    if not gens_cols or not gens_cols[0]:
        return [[] for _ in range(n)], None
    s = smith_normal_form(gens_cols)
    d = s.diagonal
    r = s.rank
    basis = [[s.Uinv[i][k] * d[k] for k in range(r)] for i in range(n)]
    return basis, s


def _quotient(n, sub_cols, rel_cols):
    """Canonical form of ``L / R`` where L is spanned by ``sub_cols`` (or all of Z^n when empty
    and no generators are given) and R (⊂ L) by ``rel_cols``.

    Returns ``(group, embed)`` where ``embed`` (n x ngens) maps canonical coordinates
    to vectors of ``Z^n`` representing the generators.
    """
    if sub_cols and sub_cols[0]:
        B, s = _lattice_basis(n, sub_cols)
        r = s.rank
        d = s.diagonal

        def coords(v):
            w = [sum(a * b for a, b in zip(row, v)) for row in s.U]
            return [w[k] // d[k] for k in range(r)]
    else:
        B = _eye(n)
        r = n

        def coords(v):
            return list(v)

    ncols = len(rel_cols[0]) if rel_cols and rel_cols[0] else 0
    rel = [[0] * ncols for _ in range(r)]
    for j in range(ncols):
        c = coords([rel_cols[i][j] for i in range(n)])
        for i in range(r):
            rel[i][j] = c[i]
    if ncols and r:
        s2 = smith_normal_form(rel)
        d2 = s2.diagonal + [0] * (r - len(s2.diagonal))
        Uinv2 = s2.Uinv
    else:
        d2 = [0] * r
        Uinv2 = _eye(r)
    free_idx = [k for k in range(r) if d2[k] == 0]
    tors_idx = [k for k in range(r) if d2[k] > 1]
    group = FgAbGroup(len(free_idx), tuple(d2[k] for k in tors_idx))
    order = free_idx + tors_idx
    # generator k of the quotient is B @ Uinv2[:, k]
    embed = [[sum(B[i][t] * Uinv2[t][k] for t in range(r)) for k in order] for i in range(n)]
    return group, embed


class GroupHom:
    """A homomorphism ``source -> target`` given by an integer matrix on coordinates."""

    def __init__(self, source: FgAbGroup, target: FgAbGroup, matrix):
        self.source = source
        self.target = target
        M = [list(map(int, r)) for r in matrix] if matrix else []
        if target.ngens and source.ngens:
            if len(M) != target.ngens or any(len(r) != source.ngens for r in M):
                raise InputError(f"matrix shape does not match {source} -> {target}")
        else:
            M = [[0] * source.ngens for _ in range(target.ngens)]
        self.matrix = M
        for j, n in enumerate(source.torsion):
            col = [M[i][source.free_rank + j] * n for i in range(target.ngens)]
            if any(target.element(col)):
                raise InputError(f"torsion generator of order {n} must map to an element of order dividing {n}")
        for i, m in enumerate(target.torsion):
            row = M[target.free_rank + i]
            M[target.free_rank + i] = [x % m for x in row]

    @classmethod
    def parse(cls, source, target, text: str) -> "GroupHom":
        return cls(source, target, json.loads(text))

    def __call__(self, a) -> tuple:
        v = [sum(r[j] * a[j] for j in range(self.source.ngens)) for r in self.matrix]
        return self.target.element(v)

    def compose(self, first: "GroupHom") -> "GroupHom":
        """``self ∘ first``."""
        return GroupHom(first.source, self.target, _matmul(self.matrix, first.matrix) if self.matrix else [])

    def is_zero(self) -> bool:
        return all(not any(self(g)) for g in self.source.generators())

    def _image_snf(self):
        n = self.target.ngens
        cols = _hcat(n, self.matrix, self.target.relation_matrix())
        return smith_normal_form(cols) if cols and cols[0] else None

    def is_surjective(self) -> bool:
        s = self._image_snf()
        if s is None:
            return self.target.ngens == 0
        return all(_lattice_member(s, g) for g in self.target.generators())

    def in_image(self, a) -> bool:
        s = self._image_snf()
        if s is None:
            return not any(a)
        return _lattice_member(s, list(a))

    def kernel(self):
        """``(K, inclusion)`` with K in canonical form and ``inclusion: K -> source``."""
        return kernel(self)

    def __repr__(self):
        return f"GroupHom({self.source} -> {self.target}, {self.matrix})"


def _integer_kernel(M, ncols):
    """Basis of ``{x in Z^ncols : M x = 0}`` as columns."""
    if not M:
        return _eye(ncols)
    s = smith_normal_form(M)
    r = s.rank
    return [[s.V[i][k] for k in range(r, ncols)] for i in range(ncols)]


def kernel(h: GroupHom):
    N, M = h.source, h.target
    a = N.ngens
    if a == 0:
        return FgAbGroup(), GroupHom(FgAbGroup(), N, [])
    RM = M.relation_matrix()
    big = _hcat(M.ngens, h.matrix, [[-x for x in r] for r in RM]) if M.ngens else []
    ncols = a + (len(RM[0]) if RM and RM[0] else 0)
    K = _integer_kernel(big, ncols)
    L = [K[i] for i in range(a)]
    RN = N.relation_matrix()
    if not L or not L[0] or not any(any(r) for r in L):
        return FgAbGroup(), GroupHom(FgAbGroup(), N, [[] for _ in range(a)])
    RN_cols = RN if RN and RN[0] else [[] for _ in range(a)]
    group, embed = _quotient(a, L, RN_cols)
    inc = GroupHom(group, N, embed if group.ngens else [])
    return group, inc


def cokernel(h: GroupHom):
    """``(Q, projection)`` for ``target / image(h)``."""
    M = h.target
    n = M.ngens
    rel = _hcat(n, h.matrix, M.relation_matrix())
    group, embed = _quotient(n, [], rel)
    # projection: express each target generator in the canonical coordinates
    proj = _project_matrix(n, rel, group, embed)
    return group, GroupHom(M, group, proj)


def _project_matrix(n, rel, group, embed):
    """Matrix sending Z^n to canonical coordinates of Z^n / rel (inverse of ``embed``)."""
    if not group.ngens:
        return []
    full = _hcat(n, embed, rel)
    out = [[0] * n for _ in range(group.ngens)]
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        sol = _solve_integer(full, e)
        for k in range(group.ngens):
            out[k][j] = sol[k]
    return out


def _solve_integer(M, v):
    """Some integer solution of ``M x = v`` (raises if none)."""
    s = smith_normal_form(M)
    w = [sum(a * b for a, b in zip(row, v)) for row in s.U]
    d = s.diagonal
    ncols = len(M[0])
    y = [0] * ncols
    for i, x in enumerate(w):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if x:
                raise InputError("no integer solution")
        else:
            if x % di:
                raise InputError("no integer solution")
            y[i] = x // di
    return [sum(s.V[i][k] * y[k] for k in range(ncols)) for i in range(ncols)]


class SubgroupMembership:
    """Membership in the subgroup generated by ``elems`` (decided by SNF)."""

    def __init__(self, group: FgAbGroup, elems):
        self.group = group
        self.elems = [group.element(e) for e in elems]
        n = group.ngens
        gens = [[e[i] for e in self.elems] for i in range(n)]
        cols = _hcat(n, gens, group.relation_matrix())
        self._snf = smith_normal_form(cols) if cols and cols[0] else None

    def __contains__(self, a) -> bool:
        a = self.group.element(a)
        if self._snf is None:
            return not any(a)
        return _lattice_member(self._snf, list(a))

    def contains(self, a) -> bool:
        return a in self

    def index_is_finite(self) -> bool:
        return self._snf is not None and self._snf.rank == self.group.ngens

    def is_everything(self) -> bool:
        return all(g in self for g in self.group.generators())


def subgroup_generated(group: FgAbGroup, elems) -> SubgroupMembership:
    return SubgroupMembership(group, elems)


def order(group: FgAbGroup):
    return group.order()


def format_order(o) -> str:
    return "infinite" if o == math.inf else str(o)
