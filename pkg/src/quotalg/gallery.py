"""Registered end-to-end examples: freeness, quotient, verification and point oracle."""

from __future__ import annotations

from dataclasses import dataclass, field

from .abgrp import FgAbGroup
from .descent import equivariant_nondescent_demo
from .errors import InputError
from .exactalg import GF, QQ, PresentedAlgebra
from .flf import FiniteFreeAlgebra
from .grading import MGrading
from .quotients import (
    FAIL, INCONCLUSIVE, PASS, Certificate, ConstantAction, character_route, fiber_square_points_check,
    find_isomorphism, freeness_check_constant, overall, quotient_diag, quotient_flf,
    relation_from_constant_action, relation_from_grading, subalgebras_equal, verify_flf_quotient,
)


@dataclass
class GalleryReport:
    name: str
    description: str
    certificates: list = field(default_factory=list)
    results: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return overall(self.certificates)

    def to_dict(self):
        return {
            "name": self.name,
            "description": self.description,
            "verdict": self.verdict,
            "certificates": [c.to_dict() for c in self.certificates],
            "results": self.results,
        }


def _gl2(field):
    return PresentedAlgebra(field, ["x11", "x12", "x21", "x22", "D"], ["D*(x11*x22 - x12*x21) - 1"], name="GL2")


def _gl2_grading(field):
    A = _gl2(field)
    return MGrading(A, FgAbGroup.parse("Z"), {"x11": 1, "x12": 1, "x21": 1, "x22": 1, "D": -2})


def _tagged(prefix, certs):
    for c in certs:
        c.name = f"{prefix}:{c.name}"
    return certs


def _pgl2(bound=None, point_fields=(3, 5)):
    rep = GalleryReport("pgl2", DESCRIPTIONS["pgl2"])
    g = _gl2_grading(QQ)
    A = g.algebra
    res = quotient_diag(g, bound or 4)
    rep.certificates += res.certificates
    det_unit = A.equal(A("D*(x11*x22 - x12*x21)"), A.one())
    rep.certificates.append(Certificate("unit-relation", PASS if det_unit else FAIL,
                                        "1 = D*(x11*x22 - x12*x21) in A", "1 = D*(x11*x22 - x12*x21)"))
    rep.results["quotient"] = res.to_dict().get("quotient")
    if res.B is not None and res.verdict == PASS:
        for q in point_fields:
            gq = _gl2_grading(GF(q))
            rq = quotient_diag(gq, bound or 4)
            rep.certificates.append(fiber_square_points_check(rq, relation_from_grading(gq), q))
    return rep


def _chart(field, inverted):
    A = PresentedAlgebra(field, ["x", "y"], [], [inverted])
    return MGrading(A, FgAbGroup.parse("Z"), {"x": 1, "y": 1})


def _p1_charts(bound=None, point_fields=(5, 7)):
    rep = GalleryReport("p1_charts", DESCRIPTIONS["p1_charts"])
    charts = {}
    for label, inv in (("x_nonzero", "x"), ("y_nonzero", "y")):
        g = _chart(QQ, inv)
        res = quotient_diag(g, bound or 2)
        rep.certificates += _tagged(label, res.certificates)
        one_gen = res.B is not None and len(res.generators) == 1 and not res.B.relations
        rep.certificates.append(Certificate(f"{label}:affine-line", PASS if one_gen else FAIL,
                                            "one generator, no relations",
                                            [str(x) for x in res.generators]))
        charts[label] = res
        rep.results[label] = res.to_dict().get("quotient")
    if all(c.B is not None and len(c.generators) == 1 for c in charts.values()):
        L = PresentedAlgebra(QQ, ["x", "y"], [], ["x", "y"])
        t = L.parse(charts["x_nonzero"].generators[0])
        s = L.parse(charts["y_nonzero"].generators[0])
        ok = L.equal(L.reduce(t * s), L.one())
        rep.certificates.append(Certificate("transition", PASS if ok else FAIL,
                                            "the chart coordinates are mutually inverse on the overlap",
                                            {"t": str(t), "s": str(s), "substitution": "t -> t^-1"}))
        rep.results["transition"] = "t -> t^-1"
    for q in point_fields:
        g = _chart(GF(q), "x")
        res = quotient_diag(g, bound or 2)
        rep.certificates.append(fiber_square_points_check(res, relation_from_grading(g), q))
    return rep


def _kummer_grading(field, n):
    A = PresentedAlgebra(field, ["x"], [], ["x"])
    return MGrading(A, FgAbGroup.parse(f"Z/{n}"), {"x": 1})


def _primes_one_mod(n, count=2):
    out, p = [], 2
    while len(out) < count:
        p += 1
        if all(p % d for d in range(2, int(p ** 0.5) + 1)) and p % n == 1:
            out.append(p)
    return out


def _kummer(n=4, bound=None, point_fields=None):
    n = int(n)
    if n < 2:
        raise InputError("kummer_mu_n needs n >= 2")
    rep = GalleryReport("kummer_mu_n", DESCRIPTIONS["kummer_mu_n"])
    rep.results["n"] = n
    g = _kummer_grading(QQ, n)
    res = quotient_diag(g, bound or n)
    rep.certificates += _tagged("grading-route", res.certificates)
    rep.results["grading_route"] = res.to_dict().get("quotient")
    cr = character_route(n, QQ)
    H = cr.hopf.carrier
    rep.results["character_route"] = {
        "group": str(cr.group),
        "inclusion": {v: str(cr.inclusion.image(v)) for v in H.variables},
    }
    if res.B is None:
        return rep
    iso = find_isomorphism(res.B, H)
    if iso is None:
        rep.certificates.append(Certificate("route-agreement", INCONCLUSIVE, "no isomorphism found within the search bound"))
    else:
        f, back = iso
        target = cr.inclusion.target
        rename = {"x": target.variables[0], "x_inv": target.inverse_names[target.variables[0]]}
        ours = [res.inclusion.image(u).to_ring(target.ring, rename) for u in res.B.variables]
        theirs = [cr.inclusion(H.ring.gen(v)) for v in H.ring.variables]
        same = subalgebras_equal(target, ours, theirs)
        rep.certificates.append(Certificate(
            "route-agreement", PASS if same else FAIL,
            "both routes give the same subring of k[Z] = k[x, x^-1], and the rings are isomorphic",
            {"forward": {u: str(f.image(u)) for u in res.B.variables},
             "backward": {v: str(back.image(v)) for v in H.variables}}))
    ff = FiniteFreeAlgebra(g.algebra, res.B, res.inclusion)
    rep.certificates.append(Certificate("rank-law", PASS if ff.rank == n else FAIL,
                                        f"A is free of rank {ff.rank} over the quotient, |M| = {n}",
                                        [str(b) for b in ff.basis]))
    for q in point_fields or _primes_one_mod(n):
        gq = _kummer_grading(GF(q), n)
        rq = quotient_diag(gq, bound or n)
        rep.certificates.append(fiber_square_points_check(rq, relation_from_grading(gq), q))
    return rep


def _sign_action(field, inverted=True):
    A = PresentedAlgebra(field, ["x"], [], ["x"] if inverted else [])
    return ConstantAction.from_generators(A, "Z/2", [{"x": "-x"}])


def _gm_mod_mu2(bound=None, point_fields=(5, 25)):
    rep = GalleryReport("gm_mod_mu2", DESCRIPTIONS["gm_mod_mu2"])
    a = _sign_action(QQ)
    rep.certificates.append(freeness_check_constant(a))
    r = relation_from_constant_action(a)
    res = quotient_flf(r, bound or 4)
    rep.certificates += res.certificates
    rep.results["quotient"] = res.to_dict().get("quotient")
    if res.B is None:
        return rep
    rep.certificates += verify_flf_quotient(r, res)
    g = _kummer_grading(QQ, 2)
    dres = quotient_diag(g, 2)
    same = dres.B is not None and subalgebras_equal(a.algebra, res.generators, dres.generators)
    rep.certificates.append(Certificate("diag-route-agreement", PASS if same else FAIL,
                                        "equalizer ring equals the degree-0 ring of the Z/2 grading",
                                        [str(x) for x in dres.generators]))
    p = 5
    a5 = _sign_action(GF(p))
    r5 = relation_from_constant_action(a5)
    res5 = quotient_flf(r5, bound or 4)
    rep.certificates += _tagged(f"F{p}", verify_flf_quotient(r5, res5))
    for q in point_fields:
        rep.certificates.append(fiber_square_points_check(res5, r5, q))
    return rep


def _a1_z2_nonfree(bound=None):
    rep = GalleryReport("a1_z2_nonfree", DESCRIPTIONS["a1_z2_nonfree"])
    a = _sign_action(QQ, inverted=False)
    rep.certificates.append(freeness_check_constant(a))
    r = relation_from_constant_action(a)
    res = quotient_flf(r, bound or 4)
    rep.certificates += [c for c in res.certificates if c.name == "monomorphism"]
    rep.results["quotient_claimed"] = res.B is not None
    over = quotient_flf(r, bound or 4, override=True)
    A = a.algebra
    same = over.B is not None and subalgebras_equal(A, over.generators, [A("x^2")])
    rep.certificates.append(Certificate("override:invariant-ring", PASS if same else FAIL,
                                        "invariant ring equals k[x^2] (no representability claim)",
                                        [str(x) for x in over.generators]))
    return rep


def _a2_gm_nonfree(bound=None):
    rep = GalleryReport("a2_gm_nonfree", DESCRIPTIONS["a2_gm_nonfree"])
    A = PresentedAlgebra(QQ, ["x", "y"])
    g = MGrading(A, FgAbGroup.parse("Z"), {"x": 1, "y": 1})
    res = quotient_diag(g, bound or 4)
    rep.certificates += res.certificates
    rep.results["quotient_claimed"] = res.B is not None
    over = quotient_diag(g, bound or 4, override=True)
    constants = over.B is not None and not over.generators and over.certificate == "complete"
    rep.certificates.append(Certificate("override:invariant-ring", PASS if constants else FAIL,
                                        "invariant ring is the constants (no representability claim)",
                                        [str(x) for x in over.generators]))
    return rep


def _equivariant_nondescent(bound=None, ns=(2, 3)):
    rep = GalleryReport("equivariant_nondescent", DESCRIPTIONS["equivariant_nondescent"])
    for n in ns:
        d = equivariant_nondescent_demo(int(n))
        ok = d["matches_expected"] and d["strict_inclusion"]
        rep.certificates.append(Certificate(f"n={n}:strict-inclusion", PASS if ok else FAIL,
                                            f"invariants of (s) generate (s^{n}), which does not contain s", d))
    return rep


DESCRIPTIONS = {
    "pgl2": "GL2 modulo scalars: the degree-0 ring is the coordinate ring of PGL2 (torsor certified)",
    "p1_charts": "Gm scaling on the two standard charts; quotients k[y/x] and k[x/y] glue by t -> t^-1",
    "kummer_mu_n": "Gm modulo mu_n through a Z/n grading, matched with the character-group quotient",
    "gm_mod_mu2": "Z/2 acting freely on Gm by x -> -x: equalizer ring, rank-2 freeness, A (x)_B A = A x A",
    "a1_z2_nonfree": "Z/2 acting on the affine line by x -> -x: fixed origin, quotient refused",
    "a2_gm_nonfree": "Gm scaling the affine plane: fixed origin, quotient refused",
    "equivariant_nondescent": "the equivariant module (s) over k[s] is not generated by its invariants",
}

_RUNNERS = {
    "pgl2": _pgl2,
    "p1_charts": _p1_charts,
    "kummer_mu_n": _kummer,
    "gm_mod_mu2": _gm_mod_mu2,
    "a1_z2_nonfree": _a1_z2_nonfree,
    "a2_gm_nonfree": _a2_gm_nonfree,
    "equivariant_nondescent": _equivariant_nondescent,
}


def list_gallery():
    """``(name, one-line description)`` pairs in a fixed order."""
    return [(name, DESCRIPTIONS[name]) for name in _RUNNERS]


def gallery(name: str, bound: int | None = None, **params) -> GalleryReport:
    if name not in _RUNNERS:
        raise InputError(f"unknown gallery entry {name!r}; known: {', '.join(_RUNNERS)}")
    return _RUNNERS[name](bound=bound, **params)
