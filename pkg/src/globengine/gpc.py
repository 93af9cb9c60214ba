"""
Geometric partial comodules in finite-dimensional rational vector spaces.

A partial comodule datum is a cospan ``X --rho--> X•H <<--pi-- X⊗H`` with
``pi`` surjective.  It is *geometric* when

* GP1: ``X⊗ε`` factors as ``u o pi`` with ``u o rho = id_X`` (``u`` is ``X•ε``);
* GP2: the comparison ``theta: X•(H•H) -> (X•H)•H`` between the two iterated
  pushouts exists, is invertible, and
  ``theta o pi'_X o X•Δ o rho = (rho•H) o rho``.

Every map is an explicit matrix; failures carry the witness that broke the law.
"""

from __future__ import annotations

from dataclasses import dataclass

from .comod import Comodule, coefficient_trials, is_colinear
from .exactla import (
    LinearMap,
    PushoutResult,
    ShapeError,
    VectorSpace,
    direct_sum,
    factor_through_epi,
    first_difference,
    hstack,
    identity,
    inverse,
    is_epi,
    is_iso,
    kernel_witness,
    pushout,
    solve_matrix_system,
    tensor_map,
    tensor_space,
)
from .verdicts import InternalConsistencyError, Verdict

# witness categories
PI_TRIANGLE = "pi_triangle"
RHO_TRIANGLE = "rho_triangle"
THETA_MISSING = "theta_missing"
THETA_NOT_ISO = "theta_not_iso"
THETA_SQUARE = "theta_square"


@dataclass(frozen=True)
class PartialComoduleDatum:
    X: VectorSpace
    coalgebra: object
    XbulletH: VectorSpace
    pi: LinearMap
    rho: LinearMap
    name: str = "X"

    def __post_init__(self):
        H = self.coalgebra
        if self.pi.shape != (self.XbulletH.dim, self.X.dim * H.dim):
            raise ShapeError(f"pi has shape {self.pi.shape}, expected {(self.XbulletH.dim, self.X.dim * H.dim)}")
        if self.rho.shape != (self.XbulletH.dim, self.X.dim):
            raise ShapeError(f"rho has shape {self.rho.shape}, expected {(self.XbulletH.dim, self.X.dim)}")
        if not is_epi(self.pi):
            raise ValueError(f"{self.name}: pi is not an epimorphism")

    @property
    def XH(self) -> VectorSpace:
        return tensor_space(self.X, self.coalgebra.space)

    @property
    def counit_X(self) -> LinearMap:
        """``X⊗ε: X⊗H -> X``."""
        return tensor_map(identity(self.X), self.coalgebra.eps).with_spaces(self.XH, self.X)

    @property
    def datum(self) -> "PartialComoduleDatum":
        return self


@dataclass(frozen=True)
class CanonicalPushouts:
    XbH_bH: PushoutResult   # (X•H)•H: legs rho•H, pi_{X•H}
    Xb_HtH: PushoutResult   # X•(H⊗H): legs X•Δ, pi_{X,Δ}
    Xb_HbH: PushoutResult   # X•(H•H): legs pi'_X, pi'_{X,Δ}

    @property
    def rho_bullet_H(self) -> LinearMap:
        return self.XbH_bH.leg_left

    @property
    def pi_XbH(self) -> LinearMap:
        return self.XbH_bH.leg_right

    @property
    def X_bullet_delta(self) -> LinearMap:
        return self.Xb_HtH.leg_left

    @property
    def pi_X_delta(self) -> LinearMap:
        return self.Xb_HtH.leg_right

    @property
    def pi_prime_X(self) -> LinearMap:
        return self.Xb_HbH.leg_left

    @property
    def pi_prime_X_delta(self) -> LinearMap:
        return self.Xb_HbH.leg_right


@dataclass(frozen=True)
class GeometricPartialComodule:
    datum: PartialComoduleDatum
    counit_factor: LinearMap   # X•ε
    theta: LinearMap
    pushouts: CanonicalPushouts

    # delegate the datum fields so a gpc can be used wherever a datum is expected
    X = property(lambda self: self.datum.X)
    XbulletH = property(lambda self: self.datum.XbulletH)
    pi = property(lambda self: self.datum.pi)
    rho = property(lambda self: self.datum.rho)
    coalgebra = property(lambda self: self.datum.coalgebra)
    name = property(lambda self: self.datum.name)
    XH = property(lambda self: self.datum.XH)
    counit_X = property(lambda self: self.datum.counit_X)


@dataclass(frozen=True)
class GpcFailure:
    axiom: str        # "GP1" or "GP2"
    verdict: Verdict

    ok = False

    def __bool__(self):
        return False


@dataclass(frozen=True)
class GpcMorphism:
    f: LinearMap
    f_bullet: LinearMap

    def __matmul__(self, other: "GpcMorphism") -> "GpcMorphism":
        return GpcMorphism(self.f @ other.f, self.f_bullet @ other.f_bullet)

    def __eq__(self, other):
        if not isinstance(other, GpcMorphism):
            return NotImplemented
        return self.f == other.f and self.f_bullet == other.f_bullet

    def __hash__(self):
        return hash((self.f, self.f_bullet))


@dataclass(frozen=True)
class Cover:
    Y: Comodule
    X: VectorSpace
    p: LinearMap
    name: str = "cover"

    def __post_init__(self):
        if self.p.shape != (self.X.dim, self.Y.dim):
            raise ShapeError(f"cover map has shape {self.p.shape}, expected {(self.X.dim, self.Y.dim)}")
        if not is_epi(self.p):
            raise ValueError(f"{self.name}: p is not an epimorphism")

    @property
    def cogenerator(self) -> LinearMap:
        """``(p⊗H) o δ_Y: Y -> X⊗H``."""
        H = self.Y.coalgebra
        return tensor_map(self.p, H.id) @ self.Y.coaction


# ---------------------------------------------------------------------------
# checks

def canonical_pushouts(d: PartialComoduleDatum) -> CanonicalPushouts:
    H = d.coalgebra
    IH = H.id
    po1 = pushout(d.pi, tensor_map(d.rho, IH))
    po2 = pushout(d.pi, tensor_map(identity(d.X), H.delta))
    po3 = pushout(po2.leg_right, tensor_map(d.pi, IH))
    return CanonicalPushouts(po1, po2, po3)


def check_counitality(d: PartialComoduleDatum) -> tuple[LinearMap | None, Verdict]:
    """GP1.  Returns ``(X•ε, verdict)``; ``X•ε`` is ``None`` on failure."""
    xe = d.counit_X
    u = factor_through_epi(xe, d.pi)
    if u is None:
        w = kernel_witness(d.pi, xe)
        return None, Verdict.failed(PI_TRIANGLE, w, "X⊗ε does not vanish on ker pi_X")
    j = first_difference(u @ d.rho, identity(d.X))
    if j is not None:
        return None, Verdict.failed(RHO_TRIANGLE, (j, d.X.labels[j]), "X•ε o rho_X ≠ id_X")
    return u, Verdict.passed("GP1")


def check_coassociativity(
    d: PartialComoduleDatum, pushouts: CanonicalPushouts | None = None
) -> tuple[LinearMap | None, Verdict]:
    """GP2.  Returns ``(theta, verdict)``; ``theta`` is ``None`` on failure."""
    P = pushouts or canonical_pushouts(d)
    theta = factor_through_epi(P.pi_XbH, P.pi_prime_X_delta)
    back = factor_through_epi(P.pi_prime_X_delta, P.pi_XbH)
    if theta is not None and back is not None:
        # comparison maps between cospans with an epi leg are unique, so they are mutually inverse
        if theta @ back != identity(P.XbH_bH.apex) or back @ theta != identity(P.Xb_HbH.apex):
            raise InternalConsistencyError("cospan comparison maps are not mutually inverse")
    if theta is None:
        w = kernel_witness(P.pi_prime_X_delta, P.pi_XbH)
        return None, Verdict.failed(THETA_MISSING, w, "pi_{X•H} does not vanish on ker pi'_{X,Δ}")
    if not is_iso(theta):
        w = kernel_witness(P.pi_XbH, P.pi_prime_X_delta)
        return None, Verdict.failed(THETA_NOT_ISO, w, "comparison map theta is not invertible")
    lhs = theta @ P.pi_prime_X @ P.X_bullet_delta @ d.rho
    rhs = P.rho_bullet_H @ d.rho
    j = first_difference(lhs, rhs)
    if j is not None:
        return None, Verdict.failed(THETA_SQUARE, (j, d.X.labels[j]), "theta o pi'_X o X•Δ o rho ≠ (rho•H) o rho")
    return theta, Verdict.passed("GP2")


def check_gpc(d: PartialComoduleDatum) -> GeometricPartialComodule | GpcFailure:
    d = d.datum
    u, v1 = check_counitality(d)
    if u is None:
        return GpcFailure("GP1", v1)
    P = canonical_pushouts(d)
    theta, v2 = check_coassociativity(d, P)
    if theta is None:
        return GpcFailure("GP2", v2)
    return GeometricPartialComodule(d, u, theta, P)


def require_gpc(d: PartialComoduleDatum) -> GeometricPartialComodule:
    res = check_gpc(d)
    if isinstance(res, GpcFailure):
        raise ValueError(f"{d.name} is not a geometric partial comodule: {res.axiom} {res.verdict.law}")
    return res


# ---------------------------------------------------------------------------
# morphisms

def is_gpc_morphism(f: LinearMap, f_bullet: LinearMap, source, target) -> bool:
    """Both squares: ``f• o rho_X = rho_Y o f`` and ``f• o pi_X = pi_Y o (f⊗H)``."""
    if f.shape != (target.X.dim, source.X.dim) or f_bullet.shape != (target.XbulletH.dim, source.XbulletH.dim):
        raise ShapeError("morphism shapes do not match the partial comodules")
    H = source.coalgebra
    return (f_bullet @ source.rho == target.rho @ f
            and f_bullet @ source.pi == target.pi @ tensor_map(f, H.id))


def induced_bullet(f: LinearMap, source, target) -> LinearMap | None:
    """The unique ``f•`` completing ``f`` to a morphism, if one exists.

    ``(rho_X, pi_X)`` is jointly surjective, so ``f•`` is determined by
    ``f• o [rho_X | pi_X] = [rho_Y o f | pi_Y o (f⊗H)]``.
    """
    H = source.coalgebra
    return factor_through_epi(
        hstack(target.rho @ f, target.pi @ tensor_map(f, H.id)),
        hstack(source.rho, source.pi),
    )


def morphism_from_global(g: LinearMap, Y: Comodule, X) -> bool:
    """Whether ``g: Y -> X`` is a morphism ``I(Y) -> X``: ``pi_X (g⊗H) δ_Y = rho_X g``."""
    if g.shape != (X.X.dim, Y.dim):
        raise ShapeError("map shape does not match")
    H = Y.coalgebra
    return X.pi @ tensor_map(g, H.id) @ Y.coaction == X.rho @ g


def to_equalizing(g: LinearMap, Y: Comodule) -> LinearMap:
    """``g -> (g⊗H) o δ_Y``, a colinear map ``Y -> X⊗H``."""
    return tensor_map(g, Y.coalgebra.id) @ Y.coaction


def from_equalizing(f: LinearMap, X) -> LinearMap:
    """``f -> (X⊗ε) o f``."""
    return X.counit_X @ f


def correspondence_roundtrip(g: LinearMap, Y: Comodule, X) -> Verdict:
    """Check both directions of the bijection between morphisms ``I(Y) -> X``
    and colinear maps ``Y -> X⊗H`` equalizing the globalization pair, on ``g``."""
    from .globalize import globalization_pair  # the pair lives with the engine

    if not morphism_from_global(g, Y, X):
        return Verdict.failed("morphism", None, "g is not a morphism I(Y) -> X")
    f = to_equalizing(g, Y)
    H = Y.coalgebra
    free = Comodule(X.XH, H, tensor_map(identity(X.X), H.delta))
    if not is_colinear(f, Y, free):
        return Verdict.failed("colinearity", None, "(g⊗H)δ is not colinear")
    a, b = globalization_pair(X)
    if a.map @ f != b.map @ f:
        return Verdict.failed("equalizing", None, "(g⊗H)δ does not equalize the pair")
    if from_equalizing(f, X) != g:
        return Verdict.failed("roundtrip", None, "(X⊗ε)(g⊗H)δ ≠ g")
    return Verdict.passed("correspondence")


# ---------------------------------------------------------------------------
# constructions

def global_gpc(Y: Comodule) -> GeometricPartialComodule:
    """``I(Y) = (Y, Y⊗H, id, δ_Y)``."""
    YH = tensor_space(Y.space, Y.coalgebra.space)
    d = PartialComoduleDatum(Y.space, Y.coalgebra, YH, identity(YH), Y.coaction.with_spaces(Y.space, YH), f"I({Y.name})")
    return require_gpc(d)


def trivial_datum(V: VectorSpace, H, name: str | None = None) -> PartialComoduleDatum:
    if H.dim == 0:
        raise ValueError("trivial partial comodule needs a nonzero coalgebra")
    xe = tensor_map(identity(V), H.eps).with_spaces(tensor_space(V, H.space), V)
    if not is_epi(xe):
        raise ValueError("V⊗ε is not an epimorphism")
    return PartialComoduleDatum(V, H, V, xe, identity(V), name or f"T({V.dim})")


def trivial_gpc(V: VectorSpace, H, name: str | None = None) -> GeometricPartialComodule:
    """``(V, V, V⊗ε, id_V)``."""
    return require_gpc(trivial_datum(V, H, name))


def induce(c: Cover) -> tuple[GeometricPartialComodule, GpcMorphism]:
    """The partial comodule structure on ``X`` pushed forward from ``Y`` along ``p``."""
    po = pushout(c.p, c.cogenerator)
    XH = tensor_space(c.X, c.Y.coalgebra.space)
    d = PartialComoduleDatum(c.X, c.Y.coalgebra, po.apex, po.leg_right.with_spaces(XH), po.leg_left, f"Ind({c.name})")
    res = check_gpc(d)
    if isinstance(res, GpcFailure):
        raise InternalConsistencyError(f"induced datum fails {res.axiom}: {res.verdict.law}")
    # p as a morphism I(Y) -> X; on bullets it is pi_X o (p⊗H)
    p_bullet = d.pi @ tensor_map(c.p, c.Y.coalgebra.id)
    return res, GpcMorphism(c.p, p_bullet)


def is_cover_morphism(F: LinearMap, f: LinearMap, source: Cover, target: Cover) -> bool:
    return is_colinear(F, source.Y, target.Y) and target.p @ F == f @ source.p


def ind_on_morphisms(
    F: LinearMap, f: LinearMap, source: Cover, target: Cover,
    induced: tuple | None = None,
) -> GpcMorphism:
    """``Ind(F, f) = (f, f•H)`` with ``f•H`` from the pushout universal property."""
    if not is_cover_morphism(F, f, source, target):
        raise ValueError("(F, f) is not a morphism of covers")
    Xs, Xt = induced if induced else (induce(source)[0], induce(target)[0])
    fb = induced_bullet(f, Xs, Xt)
    if fb is None:
        raise InternalConsistencyError("cover morphism does not induce a map of pushouts")
    return GpcMorphism(f, fb)


def find_gpc_iso(A, B, f: LinearMap | None = None) -> GpcMorphism | None:
    """An isomorphism ``(f, f•H): A -> B`` of partial comodules, or ``None``.

    With ``f`` given only ``f•H`` is solved for.  Otherwise the pair is solved
    jointly from both squares and a deterministic combination of the solution
    basis with ``f`` invertible is sought.
    """
    if A.X.dim != B.X.dim or A.XbulletH.dim != B.XbulletH.dim:
        return None
    if f is not None:
        fb = induced_bullet(f, A, B)
        if fb is None or not (is_iso(f) and is_iso(fb)):
            return None
        return GpcMorphism(f, fb)
    H = A.coalgebra
    n, m = A.X.dim, A.XbulletH.dim
    # joint unknown: block-diagonal map X (+) X•H -> X (+) X•H, off-diagonal blocks forced to 0
    S, T = direct_sum(A.X, A.XbulletH), direct_sum(B.X, B.XbulletH)

    def blocks(M):
        f_ = LinearMap(A.X, B.X, tuple(r[:n] for r in M.matrix[:n]))
        fb_ = LinearMap(A.XbulletH, B.XbulletH, tuple(r[n:] for r in M.matrix[n:]))
        off1 = LinearMap(A.XbulletH, B.X, tuple(r[n:] for r in M.matrix[:n]))
        off2 = LinearMap(A.X, B.XbulletH, tuple(r[:n] for r in M.matrix[n:]))
        return f_, fb_, off1, off2

    eqs = [
        (lambda M: blocks(M)[1] @ A.rho - B.rho @ blocks(M)[0], None),
        (lambda M: blocks(M)[1] @ A.pi - B.pi @ tensor_map(blocks(M)[0], H.id), None),
        (lambda M: blocks(M)[2], None),
        (lambda M: blocks(M)[3], None),
    ]
    _, basis = solve_matrix_system(S, T, eqs)
    for coeffs in coefficient_trials(len(basis)) if basis else ():
        M = basis[0].scale(coeffs[0])
        for c, Bm in zip(coeffs[1:], basis[1:]):
            M = M + Bm.scale(c)
        f_, fb_, _, _ = blocks(M)
        if is_iso(f_):
            if not is_iso(fb_):
                raise InternalConsistencyError("f invertible but f•H is not")
            return GpcMorphism(f_, fb_)
    if n == 0 and m == 0:
        return GpcMorphism(identity(A.X), identity(A.XbulletH))
    return None


def gpc_morphism_inverse(phi: GpcMorphism) -> GpcMorphism:
    return GpcMorphism(inverse(phi.f), inverse(phi.f_bullet))


def faithfulness_defect(source: Comodule, target: Cover) -> int:
    """Dimension of the space of colinear ``D: source -> target.Y`` with ``p o D = 0``.

    Two cover morphisms into ``target`` with the same ``f`` differ by such a
    ``D``; when ``target`` is proper the space is zero, so ``Ind`` is faithful.
    """
    Y = target.Y
    H = Y.coalgebra
    _, basis = solve_matrix_system(
        source.space, Y.space,
        [
            (lambda D: Y.coaction @ D - tensor_map(D, H.id) @ source.coaction, None),
            (lambda D: target.p @ D, None),
        ],
    )
    return len(basis)
