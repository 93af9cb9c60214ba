"""Seeded random comodules, covers and cover morphisms for property suites."""

from __future__ import annotations

import itertools
import random

from .comod import (
    Comodule,
    Coalgebra,
    colinear_maps,
    direct_sum_comodule,
    regular_comodule,
    subcomodule_from_mono,
    transport,
)
from .exactla import LinearMap, VectorSpace, hstack, identity, inverse, is_epi, vstack
from .gpc import Cover


def atoms(H: Coalgebra) -> list[Comodule]:
    """Subcomodules of the regular comodule spanned by subsets of the basis."""
    R = regular_comodule(H)
    n = H.dim
    out = []
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            cols = [tuple(1 if i == s else 0 for i in range(n)) for s in subset]
            S = VectorSpace(size, tuple(H.space.labels[s] for s in subset))
            m = LinearMap.from_columns(S, H.space, cols)
            try:
                out.append(subcomodule_from_mono(m, R, "span(" + ",".join(S.labels) + ")"))
            except ValueError:
                continue
    return out


def random_unimodular(n: int, rng: random.Random, steps: int | None = None) -> list[list[int]]:
    """An integer matrix of determinant ±1 built from elementary operations."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    M = [M[i] for i in perm]
    for _ in range(steps if steps is not None else 2 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    return M


def random_comodule(H: Coalgebra, rng: random.Random, max_dim: int = 6, name: str = "Y") -> Comodule:
    pieces = [a for a in atoms(H) if a.dim <= max_dim]
    target = rng.randint(1, max_dim)
    Y = None
    while Y is None or Y.dim < target:
        fits = [a for a in pieces if (0 if Y is None else Y.dim) + a.dim <= max_dim]
        if not fits:
            break
        a = rng.choice(fits)
        Y = a if Y is None else direct_sum_comodule(Y, a)
    V = VectorSpace(Y.dim, tuple(f"y{i}" for i in range(Y.dim)))
    T = LinearMap(Y.space, V, random_unimodular(Y.dim, rng))
    return transport(Y, T, name)


def random_epi(dom: VectorSpace, cod: VectorSpace, rng: random.Random) -> LinearMap:
    """Full rank by construction: ``U [I | 0] V`` with ``U``, ``V`` unimodular."""
    k, n = cod.dim, dom.dim
    U = random_unimodular(k, rng)
    V = random_unimodular(n, rng)
    core = LinearMap(dom, cod, [[int(i == j) for j in range(n)] for i in range(k)])
    return LinearMap(cod, cod, U) @ core @ LinearMap(dom, dom, V)


def random_cover(rng: random.Random, coalgebras, max_dim: int = 6, name: str = "rand") -> Cover:
    H = rng.choice(coalgebras)
    Y = random_comodule(H, rng, max_dim)
    k = rng.randint(1, Y.dim)
    X = VectorSpace(k, tuple(f"x{i}" for i in range(k)))
    return Cover(Y, X, random_epi(Y.space, X, rng), name)


def random_colinear(X: Comodule, Y: Comodule, rng: random.Random) -> LinearMap:
    F = LinearMap.zero(X.space, Y.space)
    for B in colinear_maps(X, Y):
        F = F + B.scale(rng.randint(-2, 2))
    return F


def random_cover_morphism_into(target: Cover, rng: random.Random, max_dim: int = 6, name: str = "src"):
    """A cover ``source`` and a morphism ``(F, f): source -> target``.

    The source comodule is ``target.Y (+) Z`` in a random basis, with ``F`` the
    identity on the first summand plus a random colinear ``Z -> target.Y``, so
    ``p' F`` is onto.  The source cover map is ``(p' F ; r)`` onto ``X' (+) Q^k``
    for random ``r``, and ``f`` is the projection onto ``X'``.  ``Z`` has
    dimension at most ``max_dim``.
    """
    T0 = target.Y
    H = T0.coalgebra
    Z = random_comodule(H, rng, max_dim, f"{name}.Z")
    Y0 = direct_sum_comodule(T0, Z)
    F0 = hstack(identity(T0.space), random_colinear(Z, T0, rng)).with_spaces(Y0.space, T0.space)
    V = VectorSpace(Y0.dim, tuple(f"{name}.y{i}" for i in range(Y0.dim)))
    T = LinearMap(Y0.space, V, random_unimodular(Y0.dim, rng))
    Y = transport(Y0, T, name)
    F = F0 @ inverse(T)
    pf = target.p @ F
    for _ in range(100):
        extra = rng.randint(0, Y.dim - pf.cod.dim)
        E = VectorSpace(extra, tuple(f"{name}.q{i}" for i in range(extra)))
        r = LinearMap(Y.space, E, [[rng.randint(-2, 2) for _ in range(Y.dim)] for _ in range(extra)])
        p = vstack(pf, r) if extra else pf
        if is_epi(p):
            break
    else:
        raise RuntimeError("could not build a cover morphism")
    X = VectorSpace(target.X.dim + extra, tuple(target.X.labels) + E.labels)
    p = p.with_spaces(Y.space, X)
    f = LinearMap(X, target.X, [[int(i == j) for j in range(X.dim)] for i in range(target.X.dim)])
    return Cover(Y, X, p, name), F, f
