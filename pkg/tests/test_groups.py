import pytest
from hypothesis import given, settings, strategies as st

from oracles import nilpotent_kernel_dim
from quotalg.abgrp import FgAbGroup, GroupHom
from quotalg.errors import NotFinite
from quotalg.exactalg import GF, QQ, PresentedAlgebra, RingMap
from quotalg.groups import (
    ConstantGroupScheme, DiagonalizableGroupScheme, alphap_kernel, artin_schreier_check, constant_group_algebra,
    diag_degree, diag_group_algebra, diag_quotient, fourier_isomorphism, group_scheme_from_tag, kummer_check,
)


@pytest.mark.parametrize("group,field,dim", [(ConstantGroupScheme.cyclic(2), QQ, 2),
                                             (ConstantGroupScheme.cyclic(3, GF(2)), GF(2), 3),
                                             (ConstantGroupScheme.cyclic(1), QQ, 1),
                                             (ConstantGroupScheme.symmetric3(), QQ, 6)])
def test_constant_group_algebra_axioms(group, field, dim):
    h = constant_group_algebra(group)
    assert h.dimension() == dim
    assert h.is_hopf()


@pytest.mark.parametrize("tag", ["Gm", "Ga", "mu_3", "diag:Z/2+Z/2", "diag:Z+Z/2", "diag:0"])
def test_tagged_group_schemes_are_hopf(tag):
    assert group_scheme_from_tag(tag, QQ).is_hopf()


def test_alpha_p_is_hopf():
    assert group_scheme_from_tag("alpha_p", GF(3)).is_hopf()


def test_gm_carrier():
    h = diag_group_algebra(DiagonalizableGroupScheme(FgAbGroup.parse("Z"), QQ))
    assert h.carrier.inverted
    with pytest.raises(NotFinite):
        h.dimension()


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=0, max_size=2))
def test_diag_degree_is_group_order(orders):
    G = FgAbGroup.from_invariants(0, orders)
    d = DiagonalizableGroupScheme(G, QQ)
    assert diag_degree(d) == G.order()
    assert diag_group_algebra(d).dimension() == G.order()


def test_diag_quotient_kummer():
    q = diag_quotient(GroupHom(FgAbGroup.parse("Z"), FgAbGroup.parse("Z/4"), [[1]]), QQ)
    assert str(q.group) == "Z"
    img = q.inclusion.image(q.hopf.carrier.variables[0])
    assert str(img) in ("X^4", "X_inv^4")


def test_diag_quotient_projection_and_identity():
    q = diag_quotient(GroupHom(FgAbGroup.parse("Z^2"), FgAbGroup.parse("Z"), [[1, 0]]), QQ)
    assert str(q.group) == "Z"
    q = diag_quotient(GroupHom(FgAbGroup.parse("Z"), FgAbGroup.parse("Z"), [[1]]), QQ)
    assert q.group.order() == 1


def test_kummer_examples():
    r = kummer_check(PresentedAlgebra.base_field(GF(5)), 2, 3)
    assert r.cover_rank == 3 and r.witness_ok and r.etale
    r = kummer_check(PresentedAlgebra.base_field(QQ), 1, 2)
    assert r.extra["root_in_base"] == "1"
    r = kummer_check(PresentedAlgebra.base_field(GF(3)), 1, 3)
    assert r.cover_rank == 3 and not r.etale


def test_artin_schreier_constant_kernel():
    r = artin_schreier_check(PresentedAlgebra.base_field(GF(3)), 0)
    assert r.kernel_size == 3
    assert r.extra["cover_components"] == 3


@pytest.mark.parametrize("p,e", [(2, 2), (3, 3), (5, 1), (3, 5), (2, 5)])
def test_alpha_p_kernel_dimension(p, e):
    A = PresentedAlgebra(GF(p), ["eps"], [f"eps^{e}"]) if e > 1 else PresentedAlgebra.base_field(GF(p))
    assert len(alphap_kernel(A)) == nilpotent_kernel_dim(p, e)


def test_fourier_isomorphism_roundtrip():
    f, b = fourier_isomorphism(4, GF(5), 2)
    assert b.compose(f).equals(RingMap.identity(f.source))
    assert f.compose(b).equals(RingMap.identity(b.source))
