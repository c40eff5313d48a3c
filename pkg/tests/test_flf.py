import random

import pytest
from hypothesis import given, settings, strategies as st

from quotalg.errors import NotFree
from quotalg.exactalg import GF, QQ, PresentedAlgebra, RingMap
from quotalg.flf import FiniteFreeAlgebra, norm_unit_criterion, zero_locus_image, zero_locus_image_check


def qx_over_qx2(field=QQ):
    return FiniteFreeAlgebra.over_subalgebra(PresentedAlgebra(field, ["x"]), ["x^2"], ["1", "x"])


def gaussian():
    total = PresentedAlgebra(QQ, ["T"], ["T^2 + 1"])
    return FiniteFreeAlgebra(total, PresentedAlgebra.base_field(QQ), RingMap.structural(total))


def test_expand_examples():
    a = qx_over_qx2()
    assert [str(c) for c in a.expand("x^3")] == ["0", "u1"]
    assert [str(c) for c in a.expand("1")] == ["1", "0"]
    assert [str(c) for c in gaussian().expand("(1+T)^2")] == ["0", "2"]
    assert a.verify()


def test_norm_trace_charpoly_examples():
    a = qx_over_qx2()
    assert str(a.norm("x")) == "-u1"
    assert str(a.norm("1")) == "1"
    assert str(a.charpoly_poly("x")) == "T^2 - u1"
    assert str(a.charpoly_poly("0")) == "T^2"
    assert str(a.charpoly_poly("3")) == "T^2 - 6*T + 9"
    assert str(gaussian().norm("2 + 3*T")) == "13"
    assert str(a.trace("x")) == "0"


def test_cayley_hamilton():
    a = qx_over_qx2()
    for b in ["x", "x^3 + 2*x", "5", "x^2 - x + 1"]:
        assert a.cayley_hamilton(b)


def test_unit_criterion_examples():
    a = qx_over_qx2()
    assert norm_unit_criterion(a, "x") == (False, False)
    assert norm_unit_criterion(a, "1") == (True, True)
    b = FiniteFreeAlgebra.over_subalgebra(PresentedAlgebra(QQ, ["x"], [], ["x"]), ["x^2", "x_inv^2"],
                                          ["1", "x"])
    assert norm_unit_criterion(b, "x") == (True, True)


def test_zero_locus_examples():
    assert zero_locus_image_check(qx_over_qx2(GF(3)), "x", 3)
    assert zero_locus_image_check(qx_over_qx2(GF(3)), "1", 3)
    total = PresentedAlgebra(GF(5), ["T"], ["T^2 - 2"])
    c = FiniteFreeAlgebra(total, PresentedAlgebra.base_field(GF(5)), RingMap.structural(total))
    assert str(c.norm("T - 1")) == "4"
    for q in (5, 25):
        assert zero_locus_image_check(c, "T - 1", q)


def test_non_free_rejected():
    with pytest.raises(NotFree):
        FiniteFreeAlgebra.over_subalgebra(PresentedAlgebra(QQ, ["x", "y"]), ["x"])
    with pytest.raises(NotFree):
        FiniteFreeAlgebra.over_subalgebra(PresentedAlgebra(QQ, ["x"]), ["x^2"], ["1", "x^3"])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_norm_multiplicative_and_base_change(seed):
    rng = random.Random(seed)
    p = rng.choice([3, 5, 7])
    a = qx_over_qx2(GF(p))

    def rand():
        return a.total.ring.poly({(k,): rng.randrange(p) for k in range(4)})

    b, c = rand(), rand()
    assert a.base.equal(a.norm(b * c), a.norm(b) * a.norm(c))
    # evaluating the norm at a base point equals the norm of the specialized algebra
    u = rng.randrange(p)
    fiber = PresentedAlgebra(GF(p), ["x"], [f"x^2 - {u}"])
    fa = FiniteFreeAlgebra(fiber, PresentedAlgebra.base_field(GF(p)), RingMap.structural(fiber))
    spec = fiber.reduce(b.to_ring(fiber.ring))
    at_u = sum(int(c) * u ** e[0] for e, c in a.norm(b).terms.items()) % p
    assert int(fa.norm(spec).constant_value()) % p == at_u


def test_zero_locus_fiber_without_rational_points():
    # over u = 2 in F_3 the fiber x^2 = 2 has only F_9-points
    a = FiniteFreeAlgebra.over_subalgebra(PresentedAlgebra(GF(3), ["x"]), ["x^2"], ["1", "x"])
    z = zero_locus_image(a, "2*x^2 + 2", 3)
    assert [pt.values for pt in z["norm"]] == [(2,)]
    assert z["geometric"] == z["norm"] and not z["rational"]
    assert zero_locus_image_check(a, "2*x^2 + 2", 3)
