"""Matrices over a field and over presented algebras.

Division-free routines (Berkowitz characteristic polynomial, determinant,
adjugate) work over any commutative ring described by an ``Ops`` object;
Gaussian elimination needs a field.
"""

from __future__ import annotations

from .field import CoeffField


class FieldOps:
    def __init__(self, field: CoeffField):
        self.field = field
        self.p = field.p
        self.zero = field.zero
        self.one = field.one

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def is_zero(self, a):
        return not a


class AlgebraOps:
    """Elements of a PresentedAlgebra, kept reduced."""

    def __init__(self, alg):
        self.alg = alg
        self.zero = alg.zero()
        self.one = alg.one()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return self.alg.reduce(a * b)

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return self.alg.is_zero(a)


def identity(n, ops):
    return [[ops.one if i == j else ops.zero for j in range(n)] for i in range(n)]


def matmul(A, B, ops):
    n, m = len(A), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ops.zero
            for k in range(len(B)):
                acc = ops.add(acc, ops.mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(row)
    return out


def matvec_row(v, A, ops):
    """Row vector times matrix."""
    m = len(A[0]) if A else 0
    out = [ops.zero] * m
    for k, a in enumerate(v):
        for j in range(m):
            out[j] = ops.add(out[j], ops.mul(a, A[k][j]))
    return out


def charpoly(A, ops):
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(T·I - A) = T^n + c_1 T^{n-1} + ... + c_n`` (Berkowitz)."""
    n = len(A)
    vect = [ops.one]
    for r in range(1, n + 1):
        a = A[r - 1][r - 1]
        R = A[r - 1][: r - 1]
        C = [A[i][r - 1] for i in range(r - 1)]
        sub = [row[: r - 1] for row in A[: r - 1]]
        t = [ops.one, ops.neg(a)]
        col = C
        for _ in range(r - 1):
            s = ops.zero
            for x, y in zip(R, col):
                s = ops.add(s, ops.mul(x, y))
            t.append(ops.neg(s))
            col = [_dot(row, col, ops) for row in sub]
        new = []
        for i in range(r + 1):
            acc = ops.zero
            for j in range(min(i + 1, r)):
                acc = ops.add(acc, ops.mul(t[i - j], vect[j]))
            new.append(acc)
        vect = new
    return vect


def _dot(u, v, ops):
    s = ops.zero
    for x, y in zip(u, v):
        s = ops.add(s, ops.mul(x, y))
    return s


def det(A, ops):
    n = len(A)
    if n == 0:
        return ops.one
    c = charpoly(A, ops)[-1]
    return c if n % 2 == 0 else ops.neg(c)


def adjugate(A, ops):
    """``adj(A)`` via Cayley–Hamilton, valid over any commutative ring."""
    n = len(A)
    c = charpoly(A, ops)
    # adj = (-1)^(n+1) (A^(n-1) + c1 A^(n-2) + ... + c_{n-1} I), evaluated by Horner
    acc = identity(n, ops)
    for k in range(1, n):
        acc = matmul(acc, A, ops)
        for i in range(n):
            acc[i][i] = ops.add(acc[i][i], c[k])
    if n % 2 == 0:
        acc = [[ops.neg(x) for x in row] for row in acc]
    return acc


# --- field linear algebra --------------------------------------------------

def rref(M, field: CoeffField):
    """Reduced row echelon form; returns (rows, pivot columns). Input is not modified."""
    ops = FieldOps(field)
    rows = [list(r) for r in M]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [ops.mul(x, inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(M, field) -> int:
    return len(rref(M, field)[1]) if M else 0


def nullspace(M, field, ncols=None):
    """Basis of ``{x : M x = 0}`` (column vectors, returned as lists)."""
    ncols = ncols if ncols is not None else (len(M[0]) if M else 0)
    if not M:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    rows, piv = rref(M, field)
    free = [c for c in range(ncols) if c not in piv]
    ops = FieldOps(field)
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for r, pc in zip(rows, piv):
            v[pc] = ops.neg(r[f])
        basis.append(v)
    return basis


def solve(M, b, field):
    """One solution of ``M x = b`` or ``None``."""
    ncols = len(M[0]) if M else 0
    aug = [list(r) + [bi] for r, bi in zip(M, b)]
    rows, piv = rref(aug, field) if aug else ([], [])
    if ncols in piv:
        return None
    x = [field.zero] * ncols
    for r, pc in zip(rows, piv):
        x[pc] = r[ncols]
    return x


def inverse(M, field):
    n = len(M)
    aug = [list(r) + [field.one if i == j else field.zero for j in range(n)] for i, r in enumerate(M)]
    rows, piv = rref(aug, field)
    if piv[:n] != list(range(n)) or len(piv) < n:
        return None
    return [r[n:] for r in rows]
