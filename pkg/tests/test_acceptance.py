"""Acceptance suite: ten criteria, each with its own time limit.

Run under pytest (one PASS/FAIL line per criterion is printed even with
output capture on) or directly with ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from math import gcd
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import descent_pairs, extensions, finite_free_algebras  # noqa: E402
from oracles import (  # noqa: E402
    artin_schreier_fixed, cyclic_kernel_size, group_order_from_relations, nilpotent_kernel_dim,
)
from quotalg.abgrp import FgAbGroup, GroupHom, cokernel  # noqa: E402
from quotalg.descent import (  # noqa: E402
    DescentDatum, FpModule, amitsur_exactness, cocycle_check, descend, equivariant_nondescent_demo,
    random_invertible, roundtrip_check, verify_effectivity,
)
from quotalg.exactalg import GF, QQ, PresentedAlgebra, RingMap, subalgebra_contains  # noqa: E402
from quotalg.flf import norm_unit_criterion, zero_locus_image_check  # noqa: E402
from quotalg.gallery import gallery  # noqa: E402
from quotalg.grading import MGrading  # noqa: E402
from quotalg.groups import (  # noqa: E402
    DiagonalizableGroupScheme, alphap_kernel, artin_schreier_check, diag_group_algebra, kummer_check,
)
from quotalg.quotients import (  # noqa: E402
    PASS, ConstantAction, character_route, fiber_square_points_check, find_isomorphism,
    freeness_check_constant, freeness_check_diag, quotient_diag, quotient_flf, relation_from_constant_action,
    subalgebras_equal, torsor_check, verify_flf_quotient,
)


def _all_pass(certs):
    bad = [(c.name, c.verdict) for c in certs if c.verdict != PASS]
    assert not bad, bad


def _is_isomorphism(iso, source):
    f, back = iso
    return back.compose(f).equals(RingMap.identity(source)) and f.compose(back).equals(RingMap.identity(f.target))


# --- 1 ------------------------------------------------------------------
def crit_p1_charts():
    Z = FgAbGroup.parse("Z")
    charts = {}
    for v, w in (("x", "y"), ("y", "x")):
        A = PresentedAlgebra(QQ, ["x", "y"], [], [v])
        res = quotient_diag(MGrading(A, Z, {"x": 1, "y": 1}), 3)
        assert res.verdict == PASS and res.certificate == "complete"
        assert len(res.generators) == 1 and not res.B.relations
        assert str(res.generators[0]) == f"{w}*{v}_inv"
        charts[v] = (A, res.generators[0])
    # on the overlap both are units and t*s = 1, so the substitution is t -> t^-1
    O = PresentedAlgebra(QQ, ["x", "y"], [], ["x", "y"])
    t, s = (O.parse(str(charts[v][1])) for v in ("x", "y"))
    assert O.equal(t * s, O.one())
    assert gallery("p1_charts").results["transition"] == "t -> t^-1"


# --- 2 ------------------------------------------------------------------
def crit_pgl2():
    A = PresentedAlgebra(QQ, ["x11", "x12", "x21", "x22", "D"], ["D*(x11*x22 - x12*x21) - 1"])
    g = MGrading(A, FgAbGroup.parse("Z"), {"x11": 1, "x12": 1, "x21": 1, "x22": 1, "D": -2})
    res = quotient_diag(g, 4)
    assert res.verdict == PASS
    certs = torsor_check(g, res, 4)
    _all_pass(certs)
    names = {c.name: c for c in certs}
    assert "grouplike-surjectivity" in names
    unit = names["unit-condition"].witness
    assert all(w.startswith("1 = ") and "D" in w for w in unit.values())
    # the relation itself rewritten: D times the determinant is 1
    assert A.equal(A("D") * A("x11*x22 - x12*x21"), A.one())
    rep = gallery("pgl2", bound=4)
    assert rep.verdict == PASS
    assert any(c.name == "unit-relation" and "D" in str(c.witness) for c in rep.certificates)


# --- 3 ------------------------------------------------------------------
def crit_kummer(n):
    A = PresentedAlgebra(QQ, ["x"], [], ["x"])
    res = quotient_diag(MGrading(A, FgAbGroup.parse(f"Z/{n}"), {"x": 1}), n)
    assert res.verdict == PASS
    assert subalgebras_equal(A, res.generators, [A(f"x^{n}"), A(f"x_inv^{n}")])
    D = character_route(n, QQ).hopf.carrier
    iso = find_isomorphism(res.B, D)
    assert iso is not None and _is_isomorphism(iso, res.B)
    assert gallery("kummer_mu_n", n=n).verdict == PASS


# --- 4 ------------------------------------------------------------------
def crit_flf_quotient():
    for field in (QQ, GF(5)):
        A = PresentedAlgebra(field, ["x"], [], ["x"])
        act = ConstantAction.from_generators(A, "Z/2", [{"x": "-x"}])
        assert freeness_check_constant(act).verdict == PASS
        r = relation_from_constant_action(act)
        res = quotient_flf(r, 4)
        assert res.verdict == PASS
        certs = verify_flf_quotient(r, res)
        _all_pass(certs)
        assert {"equalizer", "integrality", "free-rank", "tensor-iso"} <= {c.name for c in certs}
        assert len(next(c for c in certs if c.name == "free-rank").witness) == 2
        L = PresentedAlgebra(field, ["v"], [], ["v"])
        iso = find_isomorphism(res.B, L)
        assert iso is not None and _is_isomorphism(iso, res.B)
        # parity oracle: x^k is invariant exactly for even k
        for k in range(-5, 6):
            mono = f"x^{k}" if k >= 0 else f"x_inv^{-k}"
            assert subalgebra_contains(A, res.generators, mono) == (k % 2 == 0)
        if field.p:
            for q in (5, 25):
                c = fiber_square_points_check(res, r, q)
                assert c.verdict == PASS
                assert c.witness["pairs"] == 2 * (q - 1)


# --- 5 ------------------------------------------------------------------
def crit_nonfree():
    for name in ("a1_z2_nonfree", "a2_gm_nonfree"):
        rep = gallery(name)
        assert rep.verdict == "fail" and rep.results["quotient_claimed"] is False
        assert any(c.name.startswith("override:") and c.verdict == PASS for c in rep.certificates)
    A = PresentedAlgebra(QQ, ["x"])
    act = ConstantAction.from_generators(A, "Z/2", [{"x": "-x"}])
    c = freeness_check_constant(act)
    assert c.verdict == "fail" and c.witness["fixed_ideal"] == ["2*x"]
    r = relation_from_constant_action(act)
    assert quotient_flf(r, 4).B is None
    over = quotient_flf(r, 4, override=True)
    assert subalgebras_equal(A, over.generators, [A("x^2")])
    plane = MGrading(PresentedAlgebra(QQ, ["x", "y"]), FgAbGroup.parse("Z"), {"x": 1, "y": 1})
    assert freeness_check_diag(plane, 4).verdict == "fail"
    assert quotient_diag(plane, 4).B is None


# --- 6 ------------------------------------------------------------------
TWISTS_PER_EXTENSION = 13


def crit_descent():
    pairs = descent_pairs()
    assert len(pairs) >= 10
    for label, ext, module in pairs:
        assert amitsur_exactness(ext, module), label
        assert roundtrip_check(ext, module), label
    count = 0
    for idx, (label, ext) in enumerate(extensions()):
        rng = random.Random(2024 + idx)
        for _ in range(TWISTS_PER_EXTENSION):
            rank = rng.choice((1, 2))
            P, Pinv = random_invertible(ext.cover, rank, rng)
            d = DescentDatum.twisted(ext, FpModule(ext.cover, rank, []), P, Pinv)
            assert cocycle_check(d), label
            assert verify_effectivity(d, descend(d)), label
            count += 1
    assert count >= 100


# --- 7 ------------------------------------------------------------------
def crit_nondescent():
    for n in (2, 3):
        d = equivariant_nondescent_demo(n)
        assert d["invariant_generators"] == [f"s^{n}"]
        assert d["strict_inclusion"] and not d["s_in_generated"] and d["matches_expected"]


# --- 8 ------------------------------------------------------------------
PAIRS_PER_ALGEBRA = 100


def _random_element(a, rng, p):
    coeffs = []
    bvars = a.base.variables
    for _ in a.basis:
        c = str(rng.randrange(p))
        if bvars and rng.random() < 0.5:
            c += f"*{rng.choice(bvars)}^{rng.randrange(3)}"
        coeffs.append(a.base.parse(c))
    return a.combine(coeffs)


def crit_norm_laws():
    for p in (3, 5, 7):
        rng = random.Random(p)
        for label, a in finite_free_algebras(p):
            for _ in range(PAIRS_PER_ALGEBRA):
                b1, b2 = _random_element(a, rng, p), _random_element(a, rng, p)
                prod = a.norm(a.total.reduce(b1 * b2))
                assert a.base.equal(prod, a.norm(b1) * a.norm(b2)), (p, label, str(b1), str(b2))
                for b in (b1, b2):
                    unit, norm_unit = norm_unit_criterion(a, b)
                    assert unit == norm_unit, (p, label, str(b))
                assert zero_locus_image_check(a, b1, p), (p, label, str(b1))


# --- 9 ------------------------------------------------------------------
# (algebra over F_p, number of connected components counted by hand)
AS_ALGEBRAS = [
    (3, [], [], 1),                         # F_3
    (3, ["t"], ["t^2 - t"], 2),             # F_3 x F_3
    (5, ["t"], ["t^2"], 1),                 # local, dual numbers
    (5, ["t"], ["t^3 - t"], 3),             # three distinct roots
    (3, ["t"], ["t^2 + 1"], 1),             # F_9
    (5, ["t"], ["t^3 - t^2"], 2),           # F_5[t]/t^2 x F_5
    (2, ["t", "u"], ["t^2 - t", "u^2 - u"], 4),
]
ALPHA_P = [(2, 2), (3, 3), (5, 1), (3, 5), (2, 5), (7, 4)]


def crit_exact_sequences():
    for p in (2, 3, 5, 7):
        base = PresentedAlgebra.base_field(GF(p))
        for n in range(1, 7):
            r = kummer_check(base, 1, n)
            assert r.witness_ok and r.cover_rank == n
            assert r.etale == (gcd(n, p) == 1), (p, n)
            assert r.kernel_size == cyclic_kernel_size(n, p), (p, n)
    for n in range(1, 7):
        r = kummer_check(PresentedAlgebra.base_field(QQ), 2, n)
        assert r.witness_ok and r.etale
    for p, vs, rels, comps in AS_ALGEBRAS:
        A = PresentedAlgebra(GF(p), vs, rels)
        r = artin_schreier_check(A, 0)
        assert r.witness_ok
        assert r.extra["components"] == comps, (p, rels)
        assert r.kernel_size == p ** comps == artin_schreier_fixed(p, range(comps)), (p, rels)
    for p, e in ALPHA_P:
        A = PresentedAlgebra(GF(p), ["eps"], [f"eps^{e}"]) if e > 1 else PresentedAlgebra.base_field(GF(p))
        assert len(alphap_kernel(A)) == nilpotent_kernel_dim(p, e), (p, e)


# --- 10 -----------------------------------------------------------------
def _disguised_diagonal(n, rng):
    """diag(d_i) scrambled by random unimodular row and column operations."""
    m = [[rng.randint(1, 4) if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(6):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-2, 2)
        if rng.random() < 0.5:
            m[i] = [a + k * b for a, b in zip(m[i], m[j])]
        else:
            for row in m:
                row[i] += k * row[j]
    return m


def crit_degree_law():
    rng = random.Random(10)
    done = 0
    while done < 10:
        n = rng.randint(1, 3)
        if done % 2:
            m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        else:
            m = _disguised_diagonal(n, rng)
        expected = group_order_from_relations([list(r) for r in zip(*m)], n)
        if expected is None or expected > 60:
            continue
        Zn = FgAbGroup(n)
        M, _ = cokernel(GroupHom(Zn, Zn, m))
        assert M.order() == expected
        assert diag_group_algebra(DiagonalizableGroupScheme(M, QQ)).dimension() == expected
        done += 1


CRITERIA = [
    (1, "P1 charts", 5, crit_p1_charts),
    (2, "PGL2 torsor", 60, crit_pgl2),
    (3, "Kummer route agreement n=2", 10, lambda: crit_kummer(2)),
    (3, "Kummer route agreement n=3", 10, lambda: crit_kummer(3)),
    (3, "Kummer route agreement n=4", 10, lambda: crit_kummer(4)),
    (4, "finite locally free quotient", 30, crit_flf_quotient),
    (5, "non-free rejection", 5, crit_nonfree),
    (6, "descent suite", 120, crit_descent),
    (7, "equivariant non-descent", 5, crit_nondescent),
    (8, "norm laws", 60, crit_norm_laws),
    (9, "exact sequence checks", 30, crit_exact_sequences),
    (10, "degree law", 5, crit_degree_law),
]


def run_criterion(num, title, limit, fn):
    start = time.perf_counter()
    err = None
    try:
        fn()
    except Exception as exc:  # report, then fail
        err = exc
    elapsed = time.perf_counter() - start
    ok = err is None and elapsed < limit
    why = "" if ok else (f" ({type(err).__name__}: {err})" if err else f" (over {limit} s)")
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title}  {elapsed:.2f}s / {limit}s{why}"
    return ok, line, err


@pytest.mark.parametrize("num,title,limit,fn", CRITERIA, ids=[f"{c[0]}-{c[1]}" for c in CRITERIA])
def test_criterion(num, title, limit, fn, capsys):
    ok, line, err = run_criterion(num, title, limit, fn)
    with capsys.disabled():
        print("\n" + line)
    if err is not None:
        raise err
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line, _ in results:
        print(line)
    sys.exit(0 if all(ok for ok, _, _ in results) else 1)
