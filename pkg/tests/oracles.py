"""Independent oracles for the test-suite.

Nothing here imports quotalg's algebra kernel: Gröbner bases and Smith forms
come from sympy, points and kernels from brute-force enumeration.
"""

from __future__ import annotations

import itertools
from math import gcd

import sympy
from sympy.matrices.normalforms import smith_normal_form


def sympy_reduced_groebner(gens, variables, modulus=None):
    """Reduced grevlex basis as a set of strings with rational/integer coefficients normalized."""
    syms = sympy.symbols(variables)
    polys = [sympy.sympify(g.replace("^", "**"), locals={v: s for v, s in zip(variables, syms)}) for g in gens]
    kw = {"order": "grevlex"}
    if modulus:
        kw["modulus"] = modulus
    G = sympy.groebner(polys, *syms, **kw)
    return G, syms


def sympy_in_ideal(gens, variables, f, modulus=None) -> bool:
    G, syms = sympy_reduced_groebner(gens, variables, modulus)
    expr = sympy.sympify(f.replace("^", "**"), locals={v: s for v, s in zip(variables, syms)})
    return G.contains(expr)


def invariant_factors(m):
    """Nonzero diagonal of the Smith form, normalized positive, via sympy."""
    M = sympy.Matrix(m)
    if M.rows == 0 or M.cols == 0:
        return []
    D = smith_normal_form(M, domain=sympy.ZZ)
    out = [abs(int(D[i, i])) for i in range(min(D.rows, D.cols))]
    return [d for d in out if d]


def group_order_from_relations(m, ncols):
    """|Z^ncols / row span of m| or None when infinite, from invariant factors."""
    inv = invariant_factors(m) if m else []
    if len(inv) < ncols:
        return None
    out = 1
    for d in inv:
        out *= d
    return out


def points_mod_p(relations, variables, p, inverted=()):
    """Brute force: tuples in F_p^n killing each relation (callables) and with inverted coords nonzero."""
    idx = [variables.index(v) for v in inverted]
    out = []
    for pt in itertools.product(range(p), repeat=len(variables)):
        if any(pt[i] == 0 for i in idx):
            continue
        if all(r(*pt) % p == 0 for r in relations):
            out.append(pt)
    return out


def cyclic_kernel_size(n, p):
    """#{x in F_p^* : x^n = 1} = gcd(n, p - 1)."""
    return gcd(n, p - 1)


def nilpotent_kernel_dim(p, e):
    """dim_Fp {x in F_p[t]/(t^e) : x^p = 0} = e - ceil(e/p)."""
    return e - -(-e // p)


def artin_schreier_fixed(p, factors):
    """#{x : x^p = x} in prod F_p[t]/(t^e_i): one copy of F_p per local factor."""
    return p ** len(factors)


def _exponents(n, D):
    for e in itertools.product(range(D + 1), repeat=n):
        if sum(e) <= D:
            yield e


def brute_degree(e, degs, mods):
    return tuple((sum(k * d[t] for k, d in zip(e, degs)) % m) if m else sum(k * d[t] for k, d in zip(e, degs))
                 for t, m in enumerate(mods))


def brute_minimal_monomials(degs, mods, target, D):
    """Divisibility-minimal exponents of degree ``target`` with total degree <= D."""
    n = len(degs)
    target = tuple((x % m) if m else x for x, m in zip(target, mods))
    hits = [e for e in _exponents(n, D) if brute_degree(e, degs, mods) == target]
    hits.sort(key=sum)
    out = []
    for e in hits:
        if not any(all(a <= b for a, b in zip(f, e)) for f in out):
            out.append(e)
    return set(out)


def brute_degree_zero_irreducibles(degs, mods, D):
    """Nonzero degree-0 exponents (total degree <= D) that are not sums of two nonzero ones."""
    n = len(degs)
    zero = tuple(0 for _ in mods)
    mons = [e for e in _exponents(n, D) if any(e) and brute_degree(e, degs, mods) == zero]
    S = set(mons)
    out = set()
    for e in mons:
        if not any(f != e and tuple(a - b for a, b in zip(e, f)) in S for f in mons
                   if all(a <= b for a, b in zip(f, e))):
            out.add(e)
    return out
