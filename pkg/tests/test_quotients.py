import pytest

from quotalg.abgrp import FgAbGroup
from quotalg.errors import InputError
from quotalg.exactalg import GF, QQ, PresentedAlgebra, subalgebra_contains
from quotalg.grading import MGrading
from quotalg.quotients import (
    FAIL, INCONCLUSIVE, PASS, ConstantAction, fiber_square_points_check, find_isomorphism, freeness_check_constant,
    freeness_check_diag, is_monomorphism, overall, quotient_diag, quotient_flf, relation_from_constant_action,
    relation_from_grading, subalgebras_equal, torsor_check, verify_flf_quotient, Certificate,
)


def laurent(field=QQ):
    return PresentedAlgebra(field, ["x"], [], ["x"])


def sign_action(field=QQ, inverted=True):
    A = laurent(field) if inverted else PresentedAlgebra(field, ["x"])
    return ConstantAction.from_generators(A, "Z/2", [{"x": "-x"}])


def gl2(field=QQ):
    A = PresentedAlgebra(field, ["x11", "x12", "x21", "x22", "D"], ["D*(x11*x22 - x12*x21) - 1"])
    return MGrading(A, FgAbGroup.parse("Z"), {"x11": 1, "x12": 1, "x21": 1, "x22": 1, "D": -2})


def test_overall_verdict_order():
    c = lambda v: Certificate("c", v, "")
    assert overall([c(PASS), c(PASS)]) == PASS
    assert overall([c(PASS), c(INCONCLUSIVE)]) == INCONCLUSIVE
    assert overall([c(INCONCLUSIVE), c(FAIL)]) == FAIL
    assert overall([]) == PASS


def test_relation_from_sign_action():
    r = relation_from_constant_action(sign_action())
    assert r.rank == 2
    P = r.tensor.legs[1].source
    e0, e1 = (r.tensor.legs[1](P.gen(v)) for v in ("e0", "e1"))
    d1, d2 = r.delta1.image("x"), r.delta2.image("x")
    # delta1(x) = (x, -x) and delta2(x) = (x, x) in A x A
    assert r.C.equal(d1, d2 * (e0 - e1))
    assert r.C.equal(e0 + e1, r.C.one())
    assert not r.C.equal(d1, d2)
    assert r.C.equal(d1 * d1, d2 * d2)


def test_action_must_be_a_homomorphism():
    with pytest.raises(InputError):
        ConstantAction.from_generators(laurent(), "Z/3", [{"x": "-x"}])


def test_freeness_constant():
    c = freeness_check_constant(sign_action(inverted=False))
    assert c.verdict == FAIL and c.witness["fixed_ideal"] == ["2*x"]
    assert freeness_check_constant(sign_action()).verdict == PASS
    assert freeness_check_constant(ConstantAction.trivial(laurent())).verdict == PASS


def test_freeness_diag():
    A = PresentedAlgebra(QQ, ["x", "y"])
    assert freeness_check_diag(MGrading(A, FgAbGroup.parse("Z"), {"x": 1, "y": 1}), 4).verdict == FAIL
    mu2 = MGrading(laurent(), FgAbGroup.parse("Z/2"), {"x": 1})
    assert freeness_check_diag(mu2).verdict == PASS
    assert freeness_check_diag(MGrading(A, FgAbGroup.parse("0"), {"x": [], "y": []})).verdict == PASS


def _even_laurent_oracle(B_gens, A, n, span=6):
    """x^k lies in the subalgebra exactly when n divides k (checked for |k| <= span)."""
    for k in range(-span, span + 1):
        mono = f"x^{k}" if k >= 0 else f"x_inv^{-k}"
        assert subalgebra_contains(A, B_gens, mono) == (k % n == 0), k


def test_quotient_flf_sign_action():
    a = sign_action()
    r = relation_from_constant_action(a)
    res = quotient_flf(r, 4)
    assert res.verdict == PASS
    assert sorted(str(g) for g in res.generators) == ["x^2", "x_inv^2"]
    assert len(res.B.relations) == 1
    _even_laurent_oracle(res.generators, a.algebra, 2)
    certs = verify_flf_quotient(r, res)
    assert {c.name: c.verdict for c in certs} == {
        "equalizer": PASS, "integrality": PASS, "free-rank": PASS, "tensor-iso": PASS}


def test_quotient_flf_order_three_over_f7():
    A = laurent(GF(7))
    a = ConstantAction.from_generators(A, "Z/3", [{"x": "2*x"}])
    r = relation_from_constant_action(a)
    assert r.rank == 3
    res = quotient_flf(r, 4)
    assert res.verdict == PASS
    assert subalgebras_equal(A, res.generators, [A("x^3"), A("x_inv^3")])


def test_quotient_flf_trivial_relation():
    A = PresentedAlgebra(QQ, ["x", "y"])
    r = relation_from_constant_action(ConstantAction.trivial(A))
    res = quotient_flf(r, 2)
    assert res.verdict == PASS
    assert subalgebras_equal(A, res.generators, [A("x"), A("y")])
    assert all(c.verdict == PASS for c in verify_flf_quotient(r, res))


def test_quotient_flf_refuses_non_free():
    r = relation_from_constant_action(sign_action(inverted=False))
    assert not is_monomorphism(r)
    res = quotient_flf(r, 4)
    assert res.B is None and res.verdict == FAIL
    over = quotient_flf(r, 4, override=True)
    assert subalgebras_equal(r.A, over.generators, [r.A("x^2")])


def test_quotient_diag_examples():
    chart = MGrading(PresentedAlgebra(QQ, ["x", "y"], [], ["x"]), FgAbGroup.parse("Z"), {"x": 1, "y": 1})
    res = quotient_diag(chart, 3)
    assert res.verdict == PASS and [str(u) for u in res.generators] == ["y*x_inv"]
    res = quotient_diag(gl2(), 4)
    assert res.verdict == PASS and len(res.generators) == 6
    assert quotient_diag(gl2(), 1).verdict == INCONCLUSIVE


def test_torsor_check_witness():
    g = gl2()
    res = quotient_diag(g, 4)
    certs = {c.name: c for c in torsor_check(g, res, 4)}
    assert all(c.verdict == PASS for c in certs.values())
    w = certs["unit-condition"].witness
    assert any("D" in str(v) for v in w.values())


def test_torsor_fails_for_scaling_plane():
    A = PresentedAlgebra(QQ, ["x", "y"])
    g = MGrading(A, FgAbGroup.parse("Z"), {"x": 1, "y": 1})
    res = quotient_diag(g, 4)
    assert res.B is None and res.verdict == FAIL
    over = quotient_diag(g, 4, override=True)
    assert over.generators == []


@pytest.mark.parametrize("q", [5, 25])
def test_fiber_square_sign_action_f5(q):
    r = relation_from_constant_action(sign_action(GF(5)))
    res = quotient_flf(r, 4)
    c = fiber_square_points_check(res, r, q)
    assert c.verdict == PASS
    # brute force: y^2 = x^2 on F_q^* means y = +-x, two partners per point
    assert c.witness["points"] == q - 1 and c.witness["pairs"] == 2 * (q - 1)


def test_fiber_square_mu3_f7():
    g = MGrading(laurent(GF(7)), FgAbGroup.parse("Z/3"), {"x": 1})
    res = quotient_diag(g, 3)
    assert fiber_square_points_check(res, relation_from_grading(g), 7).verdict == PASS


def test_fiber_square_trivial_relation_is_diagonal():
    A = PresentedAlgebra(GF(3), ["x"])
    r = relation_from_constant_action(ConstantAction.trivial(A))
    res = quotient_flf(r, 2)
    c = fiber_square_points_check(res, r, 3)
    assert c.verdict == PASS


@pytest.mark.parametrize("n", [2, 3, 4])
def test_kummer_isomorphism_search(n):
    from quotalg.quotients import character_route
    g = MGrading(laurent(), FgAbGroup.parse(f"Z/{n}"), {"x": 1})
    res = quotient_diag(g, n)
    iso = find_isomorphism(res.B, character_route(n, QQ).hopf.carrier)
    assert iso is not None
    f, back = iso
    assert back.compose(f).equals(type(f).identity(res.B))
