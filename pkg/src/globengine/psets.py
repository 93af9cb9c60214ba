"""
Partial actions of finite groups and monoids on finite sets.

Elements and points are arbitrary hashable labels.  A partial action is a
partial map ``alpha: G•X -> X`` with domain ``G•X ⊆ G×X``.  Its globalization
is built twice, independently:

* as the quotient ``(G×X)/~`` with ``(g,x) ~ (h,y)`` iff ``(h⁻¹g, x) ∈ G•X``
  and ``alpha(h⁻¹g, x) = y``;
* as the set coequalizer of ``G×alpha`` and ``(μ×X)∘(G×ι)`` on
  ``G×(G•X) ⇉ G×X``.

Both must produce the same partition of ``G×X``.  Class representatives are
the least pair in the (element order, point order) ordering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .verdicts import InternalConsistencyError, Verdict

Label = Hashable


class UnionFind:
    def __init__(self, items: Iterable[Label] = ()):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


# ---------------------------------------------------------------------------
# monoids and groups

class FiniteMonoid:
    def __init__(self, elements, mult: dict, unit, name: str = "G"):
        self.elements = tuple(elements)
        self.mult = dict(mult)
        self.unit = unit
        self.name = name
        self._index = {g: i for i, g in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("monoid elements must be distinct")
        self._validate()
        self.inverse = self._inverses()

    def _validate(self):
        E = self.elements
        if self.unit not in self._index:
            raise ValueError("unit is not an element")
        for g, h in itertools.product(E, E):
            if self.mult.get((g, h)) not in self._index:
                raise ValueError(f"product {g}·{h} missing or outside the monoid")
        for g in E:
            if self.mult[(self.unit, g)] != g or self.mult[(g, self.unit)] != g:
                raise ValueError(f"unit law fails at {g}")
        for g, h, k in itertools.product(E, E, E):
            if self.mult[(self.mult[(g, h)], k)] != self.mult[(g, self.mult[(h, k)])]:
                raise ValueError(f"associativity fails at ({g}, {h}, {k})")

    def _inverses(self) -> dict | None:
        inv = {}
        for g in self.elements:
            for h in self.elements:
                if self.mult[(g, h)] == self.unit and self.mult[(h, g)] == self.unit:
                    inv[g] = h
                    break
            else:
                return None
        return inv

    @property
    def is_group(self) -> bool:
        return self.inverse is not None

    def mul(self, g, h):
        return self.mult[(g, h)]

    def inv(self, g):
        if self.inverse is None:
            raise ValueError(f"{self.name} is not a group")
        return self.inverse[g]

    def index(self, g) -> int:
        return self._index[g]

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteMonoid({self.name}, order {len(self)})"

    @classmethod
    def from_table(cls, elements, table, unit, name: str = "G") -> "FiniteMonoid":
        """``table[i][j]`` is the product ``elements[i]·elements[j]``."""
        elements = tuple(elements)
        mult = {(g, h): table[i][j] for i, g in enumerate(elements) for j, h in enumerate(elements)}
        return cls(elements, mult, unit, name)


def cyclic(n: int) -> FiniteMonoid:
    return FiniteMonoid(range(n), {(a, b): (a + b) % n for a in range(n) for b in range(n)}, 0, f"C{n}")


def klein_four() -> FiniteMonoid:
    E = [(a, b) for a in (0, 1) for b in (0, 1)]
    return FiniteMonoid(E, {(g, h): ((g[0] + h[0]) % 2, (g[1] + h[1]) % 2) for g in E for h in E}, (0, 0), "V4")


def symmetric(n: int) -> FiniteMonoid:
    """Permutations of ``range(n)`` as tuples; ``(g·h)(i) = g(h(i))``."""
    E = sorted(itertools.permutations(range(n)))
    mult = {(g, h): tuple(g[h[i]] for i in range(n)) for g in E for h in E}
    return FiniteMonoid(E, mult, tuple(range(n)), f"S{n}")


def small_groups(max_order: int = 6) -> list[FiniteMonoid]:
    """All groups of order at most 6, up to isomorphism."""
    out = [cyclic(n) for n in range(1, min(max_order, 6) + 1)]
    if max_order >= 4:
        out.insert(4, klein_four())
    if max_order >= 6:
        out.append(symmetric(3))
    return out


def truncation_monoid(n: int) -> FiniteMonoid:
    """``{0..n}`` under ``min(a+b, n)``: a monoid that is not a group for ``n >= 1``."""
    E = range(n + 1)
    return FiniteMonoid(E, {(a, b): min(a + b, n) for a in E for b in E}, 0, f"T{n}")


# ---------------------------------------------------------------------------
# actions

@dataclass(frozen=True, eq=False)
class GlobalGSet:
    monoid: FiniteMonoid
    carrier: tuple
    action: dict = field(repr=False)
    name: str = "Y"

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        G, Y = self.monoid, set(self.carrier)
        for g in G.elements:
            for y in self.carrier:
                if self.action.get((g, y)) not in Y:
                    raise ValueError(f"action of {g} on {y} missing or outside the carrier")
        for y in self.carrier:
            if self.action[(G.unit, y)] != y:
                raise ValueError(f"unit acts nontrivially on {y}")
        for g, h in itertools.product(G.elements, G.elements):
            gh = G.mul(g, h)
            for y in self.carrier:
                if self.action[(g, self.action[(h, y)])] != self.action[(gh, y)]:
                    raise ValueError(f"composition law fails for ({g}, {h}) at {y}")

    def act(self, g, y):
        return self.action[(g, y)]


@dataclass(frozen=True, eq=False)
class PartialGSet:
    monoid: FiniteMonoid
    carrier: tuple
    alpha: dict = field(repr=False)   # (g, x) -> x on the domain G•X
    name: str = "X"

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        X = set(self.carrier)
        idx = set(self.monoid.elements)
        for (g, x), y in self.alpha.items():
            if g not in idx or x not in X or y not in X:
                raise ValueError(f"alpha({g}, {x}) = {y} is outside G×X -> X")

    @property
    def domain(self) -> frozenset:
        return frozenset(self.alpha)

    def X_g(self, g) -> set:
        """Points on which ``g`` is defined."""
        return {x for x in self.carrier if (g, x) in self.alpha}


def check_partial_action(P: PartialGSet) -> Verdict:
    G, D, a = P.monoid, P.alpha, P.alpha
    e = G.unit
    for x in P.carrier:
        if (e, x) not in D or a[(e, x)] != x:
            return Verdict.failed("unit", (e, x), "(e, x) must be in G•X with alpha(e, x) = x")
    for (h, x), hx in a.items():
        for g in G.elements:
            if (g, hx) in D:
                gh = G.mul(g, h)
                if (gh, x) not in D:
                    return Verdict.failed("composition", ((g, hx), (h, x)), f"({gh}, {x}) missing from G•X")
                if a[(g, hx)] != a[(gh, x)]:
                    return Verdict.failed("composition", ((g, hx), (h, x)), "alpha(g, alpha(h, x)) ≠ alpha(gh, x)")
    if G.is_group:
        for (g, x), gx in a.items():
            gi = G.inv(g)
            if (gi, gx) not in D:
                return Verdict.failed("inverse", ((g, x), (gi, gx)), f"({gi}, {gx}) missing from G•X")
            if a[(gi, gx)] != x:
                return Verdict.failed("inverse", ((g, x), (gi, gx)), "alpha(g⁻¹, alpha(g, x)) ≠ x")
    return Verdict.passed("partial action")


def restrict(Y: GlobalGSet, X, name: str = "X") -> PartialGSet:
    """The partial action induced on a subset: ``G•X = {(g,x) : g·x ∈ X}``."""
    X = tuple(X)
    if not X:
        raise ValueError("subset must be nonempty")
    Xs = set(X)
    if not Xs <= set(Y.carrier):
        raise ValueError("not a subset of the carrier")
    X = tuple(y for y in Y.carrier if y in Xs)
    alpha = {(g, x): Y.act(g, x) for g in Y.monoid.elements for x in X if Y.act(g, x) in Xs}
    return PartialGSet(Y.monoid, X, alpha, name)


# ---------------------------------------------------------------------------
# globalization

@dataclass(frozen=True, eq=False)
class PSetGlobalization:
    partial: PartialGSet = field(repr=False)
    carrier: tuple                 # class representatives (g, x)
    action: dict = field(repr=False)
    embed: dict = field(repr=False)     # x -> [e, x]
    project: dict = field(repr=False)   # (g, x) -> [g, x]

    def as_gset(self, name: str = "Y") -> GlobalGSet:
        return GlobalGSet(self.partial.monoid, self.carrier, self.action, name)

    def __len__(self):
        return len(self.carrier)


def _pairs(P: PartialGSet) -> list:
    return [(g, x) for g in P.monoid.elements for x in P.carrier]


def _pair_key(P: PartialGSet):
    G = P.monoid
    xi = {x: i for i, x in enumerate(P.carrier)}
    return lambda gx: (G.index(gx[0]), xi[gx[1]])


def _require_group(P: PartialGSet):
    if not P.monoid.is_group:
        raise ValueError(f"globalization needs a group; {P.monoid.name} is only a monoid")


def _install(P: PartialGSet, classes: dict) -> PSetGlobalization:
    key = _pair_key(P)
    project = {}
    members_of = {}
    for members in classes.values():
        rep = min(members, key=key)
        members_of[rep] = members
        for m in members:
            project[m] = rep
    reps = sorted(members_of, key=key)
    G = P.monoid
    action = {}
    for rep in reps:
        for h in G.elements:
            targets = {project[(G.mul(h, g), x)] for (g, x) in members_of[rep]}
            if len(targets) != 1:
                raise InternalConsistencyError(f"h·[g,x] = [hg,x] is not well defined on {rep} for h = {h}")
            action[(h, rep)] = targets.pop()
    embed = {x: project[(G.unit, x)] for x in P.carrier}
    return PSetGlobalization(P, tuple(reps), action, embed, project)


def equivalence_relation(P: PartialGSet) -> set:
    """``R``: pairs ``((g,x),(h,y))`` with ``(h⁻¹g, x) ∈ G•X`` and ``alpha(h⁻¹g, x) = y``."""
    _require_group(P)
    G, a = P.monoid, P.alpha
    R = set()
    for g, x in _pairs(P):
        for h in G.elements:
            k = G.mul(G.inv(h), g)
            if (k, x) in a:
                R.add(((g, x), (h, a[(k, x)])))
    return R


def globalize_quotient(P: PartialGSet) -> PSetGlobalization:
    """``(G×X)/~`` with ``h·[g,x] = [hg,x]``."""
    _require_group(P)
    R = equivalence_relation(P)
    uf = UnionFind(_pairs(P))
    for s, t in R:
        uf.union(s, t)
    classes = uf.classes()
    # R is already an equivalence relation for a partial group action
    for members in classes.values():
        for s in members:
            for t in members:
                if (s, t) not in R:
                    raise InternalConsistencyError(f"~ is not an equivalence relation: {s} ~ {t} only by closure")
    return _install(P, classes)


def coequalizer_pair(P: PartialGSet):
    """``G×(G•X) ⇉ G×X``: ``(m,(n,z)) -> (m, alpha(n,z))`` and ``(m,(n,z)) -> (mn, z)``."""
    G = P.monoid
    source = [(m, d) for m in G.elements for d in sorted(P.alpha, key=_pair_key(P))]
    left = {(m, (n, z)): (m, P.alpha[(n, z)]) for m, (n, z) in source}
    right = {(m, (n, z)): (G.mul(m, n), z) for m, (n, z) in source}
    return source, left, right


def verify_phi_psi(P: PartialGSet, R: set | None = None) -> Verdict:
    """``phi: R -> G×(G•X)`` and ``psi`` back are mutual inverses intertwining the projections."""
    G, a = P.monoid, P.alpha
    R = equivalence_relation(P) if R is None else R
    source, left, right = coequalizer_pair(P)
    source_set = set(source)

    def phi(r):
        (g, x), (h, y) = r
        return (h, (G.mul(G.inv(h), g), x))

    def psi(t):
        m, (n, z) = t
        return ((G.mul(m, n), z), (m, a[(n, z)]))

    for r in R:
        t = phi(r)
        if t not in source_set:
            return Verdict.failed("phi", r, "phi leaves G×(G•X)")
        if psi(t) != r:
            return Verdict.failed("psi∘phi", r, "psi(phi(r)) ≠ r")
        if right[t] != r[0] or left[t] != r[1]:
            return Verdict.failed("projections", r, "projections do not commute with phi")
    for t in source:
        r = psi(t)
        if r not in R:
            return Verdict.failed("psi", t, "psi leaves R")
        if phi(r) != t:
            return Verdict.failed("phi∘psi", t, "phi(psi(t)) ≠ t")
    return Verdict.passed("phi/psi", size=len(R))


def coequalizer_globalize(P: PartialGSet, check: bool = True) -> PSetGlobalization:
    """Set coequalizer of the pair, cross-checked against :func:`globalize_quotient`."""
    _require_group(P)
    source, left, right = coequalizer_pair(P)
    uf = UnionFind(_pairs(P))
    for t in source:
        uf.union(left[t], right[t])
    result = _install(P, uf.classes())
    if check:
        other = globalize_quotient(P)
        bijection = canonical_bijection(result, other)
        if bijection is None:
            raise InternalConsistencyError("coequalizer and quotient constructions disagree")
        v = verify_phi_psi(P)
        if not v:
            raise InternalConsistencyError(f"phi/psi witness failed: {v.law} at {v.witness}")
    return result


def canonical_bijection(A: PSetGlobalization, B: PSetGlobalization) -> dict | None:
    """``[g,x]_A -> [g,x]_B`` when it is a well-defined, action-preserving bijection."""
    m = {}
    for gx, ra in A.project.items():
        rb = B.project[gx]
        if m.setdefault(ra, rb) != rb:
            return None
    if len(set(m.values())) != len(m) or len(m) != len(B.carrier):
        return None
    for (h, r), s in A.action.items():
        if B.action[(h, m[r])] != m[s]:
            return None
    return m


def restrict_globalize_roundtrip(P: PartialGSet) -> Verdict:
    """Restricting the globalization to the embedded copy of ``X`` gives back ``P``."""
    Y = globalize_quotient(P)
    gset = Y.as_gset()
    image = [Y.embed[x] for x in P.carrier]
    if len(set(image)) != len(image):
        return Verdict.failed("embed injective", P.name, "embed is not injective")
    Q = restrict(gset, image)
    for g in P.monoid.elements:
        for x in P.carrier:
            ex = Y.embed[x]
            inP, inQ = (g, x) in P.alpha, (g, ex) in Q.alpha
            if inP != inQ:
                return Verdict.failed("domain", (g, x), "G•X and the restricted domain differ")
            if inP and Q.alpha[(g, ex)] != Y.embed[P.alpha[(g, x)]]:
                return Verdict.failed("alpha", (g, x), "restricted action differs from alpha")
    return Verdict.passed("restrict∘globalize", bijection={x: Y.embed[x] for x in P.carrier})


def orbit(gset: GlobalGSet, points) -> set:
    return {gset.act(g, y) for g in gset.monoid.elements for y in points}


def pset_minimality(P: PartialGSet, Y) -> bool:
    """Whether the global set is exactly the orbit of the embedded ``X``."""
    gset = Y.as_gset() if isinstance(Y, PSetGlobalization) else Y
    embed = Y.embed if isinstance(Y, PSetGlobalization) else {x: x for x in P.carrier}
    return orbit(gset, [embed[x] for x in P.carrier]) == set(gset.carrier)


def with_fixed_point(Y: PSetGlobalization, point="*") -> PSetGlobalization:
    """``Y ⊔ {point}`` with ``point`` fixed by every element."""
    action = dict(Y.action)
    for g in Y.partial.monoid.elements:
        action[(g, point)] = point
    return PSetGlobalization(Y.partial, Y.carrier + (point,), action, Y.embed, Y.project)


# ---------------------------------------------------------------------------
# enumeration

def actions_on(G: FiniteMonoid, n: int):
    """Every action of the group ``G`` on ``range(n)``, as :class:`GlobalGSet`."""
    points = tuple(range(n))
    gens = _generators(G)
    perms = list(itertools.permutations(points))
    for images in itertools.product(perms, repeat=len(gens)):
        hom = _extend(G, gens, images, n)
        if hom is not None:
            action = {(g, y): hom[g][y] for g in G.elements for y in points}
            yield GlobalGSet(G, points, action, f"{G.name}↷{n}")


def _generators(G: FiniteMonoid) -> list:
    gens: list = []
    span = {G.unit}
    for g in G.elements:
        if g not in span:
            gens.append(g)
            span = _closure(G, gens)
    return gens


def _closure(G, gens) -> set:
    span = {G.unit}
    frontier = [G.unit]
    while frontier:
        k = frontier.pop()
        for s in gens:
            sk = G.mul(s, k)
            if sk not in span:
                span.add(sk)
                frontier.append(sk)
    return span


def _extend(G, gens, images, n):
    ident = tuple(range(n))
    hom = {G.unit: ident}
    frontier = [G.unit]
    while frontier:
        k = frontier.pop()
        for s, ps in zip(gens, images):
            sk = G.mul(s, k)
            img = tuple(ps[hom[k][i]] for i in range(n))
            if sk in hom:
                if hom[sk] != img:
                    return None
            else:
                hom[sk] = img
                frontier.append(sk)
    for g, h in itertools.product(G.elements, G.elements):
        if hom[G.mul(g, h)] != tuple(hom[g][hom[h][i]] for i in range(n)):
            return None
    return hom


def nonempty_subsets(points) -> Iterable[tuple]:
    points = tuple(points)
    for r in range(1, len(points) + 1):
        yield from itertools.combinations(points, r)
