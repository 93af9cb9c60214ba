"""Named example objects: coalgebras, comodules, partial comodules and covers."""

from __future__ import annotations

from .comod import (
    Comodule,
    Coalgebra,
    direct_sum_comodule,
    free_comodule,
    graded_comodule,
    group_like,
    gx_coalgebra,
    matrix_coalgebra,
    regular_comodule,
)
from .exactla import LinearMap, VectorSpace, hstack, identity, tensor_space, zero_map
from .gpc import Cover, PartialComoduleDatum, global_gpc, induce, trivial_gpc
from .psets import FiniteMonoid, GlobalGSet, PartialGSet, cyclic, restrict, symmetric


def QC2() -> Coalgebra:
    return group_like(["a", "b"], "QC2")


def QC3() -> Coalgebra:
    return group_like(["a", "b", "c"], "QC3")


def coalgebras() -> list[Coalgebra]:
    """The fixture coalgebras, all of dimension at most 4."""
    return [QC2(), QC3(), gx_coalgebra(), matrix_coalgebra(2)]


def graded2() -> Comodule:
    """``y_a`` of degree ``a``, ``y_b`` of degree ``b`` over QC2."""
    return graded_comodule(QC2(), ["a", "b"], "graded2", ["y_a", "y_b"])


def graded3() -> Comodule:
    return graded_comodule(QC2(), ["a", "b", "b"], "graded3", ["y_a", "y_b", "z_b"])


def point_cover() -> Cover:
    """graded2 onto Q by ``(1, 1)``: induces the trivial structure on Q."""
    return Cover(graded2(), VectorSpace.named("x"), LinearMap(graded2().space, VectorSpace.named("x"), ((1, 1),)), "point")


def graded3_cover() -> Cover:
    """graded3 onto Q^2 with ``y_a -> e1, y_b -> e2, z_b -> e1``: a genuinely partial structure."""
    X = VectorSpace.named("e1", "e2")
    return Cover(graded3(), X, LinearMap(graded3().space, X, ((1, 0, 1), (0, 1, 0))), "graded3")


def doubled_cover() -> Cover:
    """``Y' (+) Y'`` with both summands projected identically: not proper."""
    Yp = graded2()
    Y = direct_sum_comodule(Yp, Yp, "graded2⊕graded2")
    p = hstack(identity(Yp.space), identity(Yp.space)).with_spaces(Y.space, Yp.space)
    return Cover(Y, Yp.space, p, "doubled")


def global_quotient_cover() -> Cover:
    """A colinear epi between global comodules: graded3 -> graded2 folding ``z_b`` onto ``y_b``."""
    X = graded2()
    p = LinearMap(graded3().space, X.space, ((1, 0, 0), (0, 1, 1)))
    return Cover(graded3(), X.space, p, "global_quotient")


def global_comodules() -> list[Comodule]:
    out = [graded2(), graded3()]
    for H in coalgebras():
        out.append(regular_comodule(H))
    out.append(free_comodule(VectorSpace.named("v", "w"), gx_coalgebra(), "free2_gx"))
    return out


def covers() -> list[Cover]:
    return [point_cover(), graded3_cover(), doubled_cover(), global_quotient_cover()]


def globalizable_gpcs():
    out = [trivial_gpc(VectorSpace.named("v", "w"), QC2(), "trivial_V")]
    out.append(induce(graded3_cover())[0])
    out.append(induce(point_cover())[0])
    out.append(global_gpc(graded2()))
    out.append(trivial_gpc(VectorSpace.named("v"), gx_coalgebra(), "trivial_gx"))
    return out


def trivial_cases():
    """``(V, H)`` pairs for the trivial-partial-comodule globalization checks."""
    out = []
    for H in [QC2(), QC3(), gx_coalgebra()]:
        for n in (1, 2, 3):
            out.append((VectorSpace(n, tuple(f"v{i}" for i in range(n))), H))
    return out


# ---------------------------------------------------------------------------
# data that must be rejected by the GP checks

def _line_over_QC2():
    H = QC2()
    X = VectorSpace.named("x")
    return H, X, tensor_space(X, H.space)


def broken_rho() -> PartialComoduleDatum:
    """``rho = 0``: the counit triangle fails at ``x``."""
    H, X, XH = _line_over_QC2()
    return PartialComoduleDatum(X, H, XH, identity(XH), zero_map(X, XH), "broken_rho")


def broken_pi() -> PartialComoduleDatum:
    """``pi = (1, -1)`` kills ``x⊗a + x⊗b``, on which ``X⊗ε`` is 2."""
    H, X, XH = _line_over_QC2()
    U = VectorSpace.named("u")
    return PartialComoduleDatum(X, H, U, LinearMap(XH, U, ((1, -1),)), LinearMap(X, U, ((1,),)), "broken_pi")


def broken_theta() -> PartialComoduleDatum:
    """``pi = id``, ``rho(x) = 2 x⊗a - x⊗b``: counital but not coassociative."""
    H, X, XH = _line_over_QC2()
    return PartialComoduleDatum(X, H, XH, identity(XH), LinearMap(X, XH, ((2,), (-1,))), "broken_theta")


def broken_data() -> dict[str, PartialComoduleDatum]:
    return {d.name: d for d in (broken_rho(), broken_pi(), broken_theta())}


# ---------------------------------------------------------------------------
# the shipped workspace document

def _stringify_group(G: FiniteMonoid, name: str) -> FiniteMonoid:
    s = {g: str(g) for g in G.elements}
    return FiniteMonoid(
        [s[g] for g in G.elements], {(s[g], s[h]): s[G.mul(g, h)] for g in G.elements for h in G.elements},
        s[G.unit], name,
    )


def groups() -> dict[str, FiniteMonoid]:
    return {"C2": _stringify_group(cyclic(2), "C2"), "C4": _stringify_group(cyclic(4), "C4"),
            "S3": _stringify_group(symmetric(3), "S3")}


def actions() -> dict[str, GlobalGSet]:
    G = groups()
    C2, C4 = G["C2"], G["C4"]
    swap = {(g, y): y if g == "0" else {"p": "q", "q": "p"}[y] for g in C2.elements for y in ("p", "q")}
    translate = {(g, y): str((int(g) + int(y)) % 4) for g in C4.elements for y in "0123"}
    return {"C2_swap": GlobalGSet(C2, ("p", "q"), swap, "C2_swap"),
            "C4_translate": GlobalGSet(C4, tuple("0123"), translate, "C4_translate")}


def partial_actions() -> dict[str, PartialGSet]:
    A = actions()
    return {"C2_point": restrict(A["C2_swap"], ["p"], "C2_point"),
            "C4_X01": restrict(A["C4_translate"], ["0", "1"], "C4_X01")}


def document() -> dict:
    """Every fixture above as one version-1 workspace document."""
    from . import workspace as ws

    cos = {"QC2": QC2(), "QC3": QC3(), "Cgx": gx_coalgebra(), "M2star": matrix_coalgebra(2)}
    ref = {H.name: k for k, H in cos.items()}
    comodules = {Y.name: ws.comodule_to_json(Y, ref[Y.coalgebra.name]) for Y in global_comodules()}
    for c in covers():
        comodules.setdefault(c.Y.name, ws.comodule_to_json(c.Y, ref[c.Y.coalgebra.name]))
    gpcs = {
        "trivial_V": {"trivial_on": {"dim": 2, "labels": ["v", "w"]}, "coalgebra_ref": "QC2"},
        "trivial_gx": {"trivial_on": {"dim": 1, "labels": ["v"]}, "coalgebra_ref": "Cgx"},
        "global_graded2": {"global_from": "graded2"},
        "induced_graded3": {"induced_from": "graded3"},
        "induced_point": {"induced_from": "point"},
        "explicit_graded3": ws.datum_to_json(induce(graded3_cover())[0].datum, "QC2"),
    }
    for name, d in broken_data().items():
        gpcs[name] = ws.datum_to_json(d, "QC2")
    G = groups()
    return {
        "version": ws.VERSION,
        "coalgebras": {k: ws.coalgebra_to_json(H) for k, H in cos.items()},
        "comodules": comodules,
        "gpcs": gpcs,
        "covers": {c.name: ws.cover_to_json(c, c.Y.name) for c in covers()},
        "groups": {k: ws.group_to_json(g) for k, g in G.items()},
        "actions": {k: ws.action_to_json(a, a.monoid.name) for k, a in actions().items()},
        "partial_actions": {k: ws.partial_to_json(p, p.monoid.name) for k, p in partial_actions().items()},
    }
