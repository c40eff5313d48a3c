"""Fixed instances shared by the module tests and the acceptance suite."""

from quotalg.descent import FpModule, RingExtension
from quotalg.exactalg import GF, QQ, PresentedAlgebra, RingMap
from quotalg.flf import FiniteFreeAlgebra


def _over_field(field, var, rel):
    return RingExtension.over_field(PresentedAlgebra(field, [var], [rel]))


def extensions():
    """(label, RingExtension) pairs: field extensions, split algebras and relative covers."""
    Qx = PresentedAlgebra(QQ, ["x"])
    F7x = PresentedAlgebra(GF(7), ["x"])
    Qxy = PresentedAlgebra(QQ, ["x", "y"])
    return [
        ("Q(i)/Q", _over_field(QQ, "T", "T^2 + 1")),
        ("QxQ/Q", _over_field(QQ, "T", "T^2 - T")),
        ("F25/F5", _over_field(GF(5), "T", "T^2 - 2")),
        ("Q(2^(1/3))/Q", _over_field(QQ, "T", "T^3 - 2")),
        ("Q[x,sqrt x]/Q[x]", RingExtension(Qx, PresentedAlgebra(QQ, ["x", "T"], ["T^2 - x"]))),
        ("cubic/Q[x]", RingExtension(Qx, PresentedAlgebra(QQ, ["x", "T"], ["T^3 - x - 1"]))),
        ("AS/F7[x]", RingExtension(F7x, PresentedAlgebra(GF(7), ["x", "T"], ["T^2 - T - x"]))),
        ("generic quadratic", RingExtension(Qxy, PresentedAlgebra(QQ, ["x", "y", "T"], ["T^2 - x*T - y"]))),
    ]


def descent_pairs():
    """At least ten (label, extension, module over the base) triples."""
    out = []
    for label, ext in extensions():
        A = ext.base
        out.append((label + " free rank 1", ext, FpModule(A, 1, [])))
        out.append((label + " free rank 2", ext, FpModule(A, 2, [])))
        if A.variables:
            x = A.variables[0]
            out.append((label + " cyclic", ext, FpModule(A, 1, [[x]])))
            out.append((label + " rank 2 relation", ext, FpModule(A, 2, [[x, f"{x}^2"]])))
        else:
            out.append((label + " zero", ext, FpModule(A, 1, [["1"]])))
    return out


def finite_free_algebras(p):
    """Finite free algebras over F_p used by the norm-law checks."""
    F = GF(p)
    out = []
    out.append(("x over x^2", FiniteFreeAlgebra.over_subalgebra(PresentedAlgebra(F, ["x"]), ["x^2"], ["1", "x"])))
    out.append(("x over x^3", FiniteFreeAlgebra.over_subalgebra(PresentedAlgebra(F, ["x"]), ["x^3"])))
    for rel in ("T^2 - 2", "T^3 - T - 1", "T^2"):
        total = PresentedAlgebra(F, ["T"], [rel])
        out.append((rel, FiniteFreeAlgebra(total, PresentedAlgebra.base_field(F), RingMap.structural(total))))
    base = PresentedAlgebra(F, ["a"])
    total = PresentedAlgebra(F, ["a", "T"], ["T^2 - a*T - 1"])
    out.append(("T^2 - aT - 1 over F[a]", FiniteFreeAlgebra(total, base, RingMap(base, total, {"a": "a"}))))
    return out
