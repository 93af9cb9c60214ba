"""
Finite-dimensional coalgebras and right comodules over the rationals.

A coalgebra is ``(H, delta, eps)`` with ``delta: H -> H (x) H`` and
``eps: H -> Q``; a comodule is ``(X, coaction)`` with ``coaction: X -> X (x) H``.
Identifications ``Q (x) H = H = H (x) Q`` are the identity on coordinates
(see :mod:`globengine.exactla`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactla import (
    UNIT,
    ZERO,
    LinearMap,
    ShapeError,
    VectorSpace,
    direct_sum,
    equalizer,
    factor_through_mono,
    first_difference,
    identity,
    inverse,
    is_iso,
    is_mono,
    solve_matrix_system,
    tensor_map,
    tensor_space,
)
from .verdicts import InternalConsistencyError, Verdict


@dataclass(frozen=True)
class Coalgebra:
    space: VectorSpace
    delta: LinearMap
    eps: LinearMap
    name: str = "H"

    def __post_init__(self):
        H = self.space
        if self.delta.shape != (H.dim * H.dim, H.dim):
            raise ShapeError(f"comultiplication of {self.name} has shape {self.delta.shape}")
        if self.eps.shape != (1, H.dim):
            raise ShapeError(f"counit of {self.name} has shape {self.eps.shape}")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def id(self) -> LinearMap:
        return identity(self.space)


@dataclass(frozen=True)
class Comodule:
    space: VectorSpace
    coalgebra: Coalgebra
    coaction: LinearMap
    name: str = "Y"

    def __post_init__(self):
        expected = (self.space.dim * self.coalgebra.dim, self.space.dim)
        if self.coaction.shape != expected:
            raise ShapeError(f"coaction of {self.name} has shape {self.coaction.shape}, expected {expected}")

    @property
    def dim(self) -> int:
        return self.space.dim

    def __eq__(self, other):
        # same space, identical coaction matrix
        if not isinstance(other, Comodule):
            return NotImplemented
        return self.space.dim == other.space.dim and self.coaction == other.coaction

    def __hash__(self):
        return hash((self.space.dim, self.coaction))


@dataclass(frozen=True)
class ComoduleMorphism:
    source: Comodule
    target: Comodule
    map: LinearMap

    def __post_init__(self):
        if self.map.shape != (self.target.dim, self.source.dim):
            raise ShapeError("morphism shape does not match its comodules")


# ---------------------------------------------------------------------------
# law checks

def _first_bad(f: LinearMap, g: LinearMap, space: VectorSpace):
    j = first_difference(f, g)
    return None if j is None else (j, space.labels[j])


def check_coalgebra(H: Coalgebra) -> Verdict:
    """Coassociativity and both counit laws, with the failing basis vector."""
    d, e, I = H.delta, H.eps, H.id
    bad = _first_bad(tensor_map(d, I) @ d, tensor_map(I, d) @ d, H.space)
    if bad:
        return Verdict.failed("coassociativity", bad, f"(Δ⊗H)Δ ≠ (H⊗Δ)Δ at {bad[1]}")
    bad = _first_bad(tensor_map(e, I) @ d, I, H.space)
    if bad:
        return Verdict.failed("left counit", bad, f"(ε⊗H)Δ ≠ id at {bad[1]}")
    bad = _first_bad(tensor_map(I, e) @ d, I, H.space)
    if bad:
        return Verdict.failed("right counit", bad, f"(H⊗ε)Δ ≠ id at {bad[1]}")
    return Verdict.passed("coalgebra")


def check_comodule(X: Comodule) -> Verdict:
    H, d, IX = X.coalgebra, X.coaction, identity(X.space)
    bad = _first_bad(tensor_map(d, H.id) @ d, tensor_map(IX, H.delta) @ d, X.space)
    if bad:
        return Verdict.failed("coassociativity", bad, f"(δ⊗H)δ ≠ (X⊗Δ)δ at {bad[1]}")
    bad = _first_bad(tensor_map(IX, H.eps) @ d, IX, X.space)
    if bad:
        return Verdict.failed("counitality", bad, f"(X⊗ε)δ ≠ id at {bad[1]}")
    return Verdict.passed("comodule")


# ---------------------------------------------------------------------------
# constructions

def free_comodule(V: VectorSpace, H: Coalgebra, name: str | None = None) -> Comodule:
    """``(V (x) H, V (x) delta)``."""
    return Comodule(tensor_space(V, H.space), H, tensor_map(identity(V), H.delta), name or f"{V.dim}⊗{H.name}")


def regular_comodule(H: Coalgebra) -> Comodule:
    return Comodule(H.space, H, H.delta, f"{H.name}_reg")


def is_colinear(f: LinearMap, X: Comodule, Y: Comodule) -> bool:
    if f.shape != (Y.dim, X.dim):
        raise ShapeError("map shape does not match the comodules")
    return Y.coaction @ f == tensor_map(f, X.coalgebra.id) @ X.coaction


def colinear_maps(X: Comodule, Y: Comodule) -> list[LinearMap]:
    """A basis of ``Hom^H(X, Y)``."""
    H = X.coalgebra
    _, basis = solve_matrix_system(
        X.space, Y.space,
        [(lambda F: Y.coaction @ F - tensor_map(F, H.id) @ X.coaction, None)],
    )
    return basis


def find_comodule_iso(X: Comodule, Y: Comodule) -> LinearMap | None:
    """An explicit colinear isomorphism ``X -> Y``, or ``None``.

    Searches deterministic integer combinations of a basis of the colinear
    maps; the generic combination is invertible whenever any is.
    """
    if X.dim != Y.dim:
        return None
    basis = colinear_maps(X, Y)
    if not basis:
        return identity(X.space).with_spaces(X.space, Y.space) if X.dim == 0 else None
    for coeffs in coefficient_trials(len(basis)):
        F = basis[0].scale(coeffs[0])
        for c, B in zip(coeffs[1:], basis[1:]):
            F = F + B.scale(c)
        if is_iso(F):
            return F
    return None


def coefficient_trials(n: int, limit: int = 64):
    yield tuple([1] * n)
    yield tuple(range(1, n + 1))
    for k, coeffs in enumerate(itertools.product(range(-2, 4), repeat=n)):
        if k >= limit:
            return
        yield coeffs


def comodule_equalizer(f: ComoduleMorphism, g: ComoduleMorphism) -> tuple[Comodule, ComoduleMorphism]:
    """Equalizer of two parallel colinear maps, computed in vector spaces.

    Over a field the inclusion of the equalizer is a subcomodule, so the
    coaction restricts; failure to restrict is an engine bug.
    """
    A = f.source
    if f.map.shape != g.map.shape:
        raise ShapeError("equalizer needs parallel morphisms")
    k = equalizer(f.map, g.map)
    H = A.coalgebra
    delta_E = factor_through_mono(A.coaction @ k, tensor_map(k, H.id))
    if delta_E is None:
        raise InternalConsistencyError("coaction does not restrict")
    E = Comodule(k.dom, H, delta_E.with_spaces(k.dom, tensor_space(k.dom, H.space)), f"Eq({A.name})")
    return E, ComoduleMorphism(E, A, k)


def subcomodule_from_mono(m: LinearMap, Y: Comodule, name: str = "S") -> Comodule:
    """Restrict the coaction of ``Y`` along an injective map whose image is a subcomodule."""
    if not is_mono(m):
        raise ValueError("map is not injective")
    H = Y.coalgebra
    d = factor_through_mono(Y.coaction @ m, tensor_map(m, H.id))
    if d is None:
        raise ValueError("image is not a subcomodule")
    return Comodule(m.dom, H, d.with_spaces(m.dom, tensor_space(m.dom, H.space)), name)


def direct_sum_comodule(X: Comodule, Y: Comodule, name: str | None = None) -> Comodule:
    H = X.coalgebra
    n, m, h = X.dim, Y.dim, H.dim
    S = direct_sum(X.space, Y.space)
    rows = []
    # (X (+) Y) (x) H = X(x)H (+) Y(x)H in the lexicographic order
    for i in range(n):
        for a in range(h):
            rows.append(X.coaction.matrix[i * h + a] + (ZERO,) * m)
    for i in range(m):
        for a in range(h):
            rows.append((ZERO,) * n + Y.coaction.matrix[i * h + a])
    return Comodule(S, H, LinearMap(S, tensor_space(S, H.space), tuple(rows)), name or f"{X.name}⊕{Y.name}")


def transport(Y: Comodule, T: LinearMap, name: str | None = None) -> Comodule:
    """The comodule structure on ``cod T`` making the invertible ``T`` colinear."""
    H = Y.coalgebra
    d = tensor_map(T, H.id) @ Y.coaction @ inverse(T)
    return Comodule(T.cod, H, d.with_spaces(T.cod, tensor_space(T.cod, H.space)), name or Y.name)


# ---------------------------------------------------------------------------
# fixture coalgebras

def _unit_vec(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


def group_like(labels, name: str | None = None) -> Coalgebra:
    """``Q[S]`` with every basis element group-like: ``Δx = x⊗x``, ``ε(x) = 1``."""
    labels = tuple(str(x) for x in labels)
    n = len(labels)
    H = VectorSpace(n, labels)
    HH = tensor_space(H, H)
    delta = LinearMap.from_columns(H, HH, [_unit_vec(n * n, i * n + i) for i in range(n)])
    eps = LinearMap(H, UNIT, ((1,) * n,))
    return Coalgebra(H, delta, eps, name or f"QC{n}")


def cyclic_group_coalgebra(n: int) -> Coalgebra:
    return group_like([f"g{i}" for i in range(n)], f"QC{n}")


def gx_coalgebra() -> Coalgebra:
    """Basis ``{g, x}``: ``Δg = g⊗g``, ``Δx = g⊗x + x⊗g``, ``ε(g) = 1``, ``ε(x) = 0``."""
    H = VectorSpace.named("g", "x")
    HH = tensor_space(H, H)
    # HH basis: g⊗g, g⊗x, x⊗g, x⊗x
    delta = LinearMap.from_columns(H, HH, [(1, 0, 0, 0), (0, 1, 1, 0)])
    eps = LinearMap(H, UNIT, ((1, 0),))
    return Coalgebra(H, delta, eps, "Cgx")


def matrix_coalgebra(n: int) -> Coalgebra:
    """Dual of ``M_n(Q)``: basis ``e_ij``, ``Δe_ij = Σ_k e_ik⊗e_kj``, ``ε(e_ij) = δ_ij``."""
    labels = [f"e{i}{j}" for i in range(n) for j in range(n)]
    H = VectorSpace(n * n, tuple(labels))
    HH = tensor_space(H, H)
    N = n * n
    cols = []
    for i in range(n):
        for j in range(n):
            v = [0] * (N * N)
            for k in range(n):
                v[(i * n + k) * N + (k * n + j)] = 1
            cols.append(tuple(v))
    delta = LinearMap.from_columns(H, HH, cols)
    eps = LinearMap(H, UNIT, (tuple(1 if i == j else 0 for i in range(n) for j in range(n)),))
    return Coalgebra(H, delta, eps, f"M{n}*")


def graded_comodule(H: Coalgebra, degrees, name: str = "Y", labels=None) -> Comodule:
    """For group-like ``H``: basis vector ``y_i`` of degree ``degrees[i]`` (a label of ``H``)."""
    h = H.dim
    idx = [H.space.labels.index(str(d)) for d in degrees]
    n = len(idx)
    Y = VectorSpace(n, tuple(labels) if labels else tuple(f"y{i}_{d}" for i, d in enumerate(degrees)))
    cols = [_unit_vec(n * h, i * h + a) for i, a in enumerate(idx)]
    return Comodule(Y, H, LinearMap.from_columns(Y, tensor_space(Y, H.space), cols), name)
