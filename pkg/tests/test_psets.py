import random

import pytest
from hypothesis import given, settings, strategies as st

from globengine.psets import (
    FiniteMonoid,
    GlobalGSet,
    PartialGSet,
    UnionFind,
    actions_on,
    canonical_bijection,
    check_partial_action,
    coequalizer_globalize,
    coequalizer_pair,
    cyclic,
    equivalence_relation,
    globalize_quotient,
    klein_four,
    orbit,
    pset_minimality,
    restrict,
    restrict_globalize_roundtrip,
    small_groups,
    symmetric,
    truncation_monoid,
    verify_phi_psi,
    with_fixed_point,
)


def swap_C2():
    G = cyclic(2)
    return GlobalGSet(G, (1, 2), {(0, 1): 1, (0, 2): 2, (1, 1): 2, (1, 2): 1}, "swap")


def translate_C4():
    G = cyclic(4)
    return GlobalGSet(G, tuple(range(4)), {(g, y): (g + y) % 4 for g in range(4) for y in range(4)}, "C4")


# ---- monoids ---------------------------------------------------------------

def test_small_groups_are_groups():
    gs = small_groups(6)
    assert [len(G) for G in gs] == [1, 2, 3, 4, 4, 5, 6, 6]
    assert all(G.is_group for G in gs)
    assert not truncation_monoid(2).is_group


def test_monoid_validation():
    with pytest.raises(ValueError):
        FiniteMonoid([0, 1], {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1}, 1)


def test_action_counts():
    # actions of C2 on 2 points: trivial and swap; of S3 on 3 points: hom(S3, S3) has 10 elements
    assert len(list(actions_on(cyclic(2), 2))) == 2
    assert len(list(actions_on(symmetric(3), 3))) == 10
    assert len(list(actions_on(klein_four(), 2))) == 4


def test_union_find():
    uf = UnionFind(range(5))
    uf.union(0, 3)
    uf.union(3, 4)
    assert sorted(map(sorted, uf.classes().values())) == [[0, 3, 4], [1], [2]]


# ---- partial action laws ---------------------------------------------------

def test_restriction_passes():
    P = restrict(translate_C4(), [0, 1])
    assert check_partial_action(P)


def test_unit_law_violation():
    P = restrict(swap_C2(), [1, 2])
    alpha = dict(P.alpha)
    alpha[(0, 1)] = 2
    v = check_partial_action(PartialGSet(P.monoid, P.carrier, alpha))
    assert not v and v.law == "unit" and v.witness == (0, 1)


def test_inverse_law_violation():
    P = restrict(translate_C4(), [0, 1])
    alpha = dict(P.alpha)
    del alpha[(3, 1)]          # keeps (1, 0) -> 1 but drops its inverse
    v = check_partial_action(PartialGSet(P.monoid, P.carrier, alpha))
    assert not v and v.law == "inverse" and v.witness == ((1, 0), (3, 1))


# ---- restriction -----------------------------------------------------------

def test_full_restriction_is_global():
    Y = translate_C4()
    P = restrict(Y, Y.carrier)
    assert P.domain == {(g, y) for g in range(4) for y in range(4)}


def test_swap_restricted_to_a_point():
    P = restrict(swap_C2(), [1])
    assert P.domain == {(0, 1)}


def test_C4_restricted_to_01():
    P = restrict(translate_C4(), [0, 1])
    assert P.domain == {(0, 0), (0, 1), (1, 0), (3, 1)}
    assert P.alpha[(1, 0)] == 1 and P.alpha[(3, 1)] == 0


def test_restrict_rejects_non_subsets():
    with pytest.raises(ValueError):
        restrict(swap_C2(), [7])
    with pytest.raises(ValueError):
        restrict(swap_C2(), [])


# ---- globalization ---------------------------------------------------------

def test_swap_point_globalizes_to_two_points():
    P = restrict(swap_C2(), [1])
    Y = globalize_quotient(P)
    assert len(Y) == 2
    assert Y.embed[1] == (0, 1)
    assert set(Y.carrier) == {(0, 1), (1, 1)}
    assert Y.action[(1, (0, 1))] == (1, 1)
    Z = coequalizer_globalize(P)
    assert len(Z) == 2 and canonical_bijection(Z, Y) is not None


def test_C4_globalizes_to_regular_action():
    P = restrict(translate_C4(), [0, 1])
    Y = globalize_quotient(P)
    assert len(Y) == 4
    # (g,x) ~ (g',x') iff g + x = g' + x' (mod 4)
    for gx, rep in Y.project.items():
        assert (gx[0] + gx[1]) % 4 == (rep[0] + rep[1]) % 4
    # Y ≅ C4 acting on itself
    iso = {r: (r[0] + r[1]) % 4 for r in Y.carrier}
    assert sorted(iso.values()) == [0, 1, 2, 3]
    for (h, r), s in Y.action.items():
        assert iso[s] == (h + iso[r]) % 4
    assert len(coequalizer_globalize(P)) == 4
    assert pset_minimality(P, Y)


def test_full_carrier_globalizes_to_itself():
    Y = translate_C4()
    P = restrict(Y, Y.carrier)
    G = globalize_quotient(P)
    assert len(G) == 4
    assert len(set(G.embed.values())) == 4


def test_monoid_globalization_is_refused():
    T = truncation_monoid(2)
    P = PartialGSet(T, ("x",), {(0, "x"): "x"})
    assert check_partial_action(P)
    with pytest.raises(ValueError):
        globalize_quotient(P)
    with pytest.raises(ValueError):
        coequalizer_globalize(P)


def test_extra_fixed_point_is_not_minimal():
    P = restrict(translate_C4(), [0, 1])
    Y = globalize_quotient(P)
    assert not pset_minimality(P, with_fixed_point(Y))


def test_round_trips_on_examples():
    assert restrict_globalize_roundtrip(restrict(swap_C2(), [1]))
    assert restrict_globalize_roundtrip(restrict(translate_C4(), [0, 1]))


def test_coequalizer_pair_shapes():
    P = restrict(translate_C4(), [0, 1])
    source, left, right = coequalizer_pair(P)
    assert len(source) == 4 * 4
    assert left[(2, (1, 0))] == (2, 1) and right[(2, (1, 0))] == (3, 0)
    assert verify_phi_psi(P, equivalence_relation(P))


# ---- randomized ------------------------------------------------------------

def random_cyclic_action(k: int, n: int, rng: random.Random) -> GlobalGSet:
    """The generator acts by a permutation whose cycle lengths divide ``k``."""
    pts = list(range(n))
    rng.shuffle(pts)
    sigma = {}
    while pts:
        length = rng.choice([d for d in range(1, k + 1) if k % d == 0 and d <= len(pts)])
        cyc, pts = pts[:length], pts[length:]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            sigma[a] = b
    action = {}
    for y in range(n):
        z = y
        for g in range(k):
            action[(g, y)] = z
            z = sigma[z]
    return GlobalGSet(cyclic(k), tuple(range(n)), action)


def random_action(G, n: int, rng: random.Random) -> GlobalGSet:
    """Disjoint union of enumerated actions on blocks of at most 3 points."""
    action, start = {}, 0
    while start < n:
        b = min(n - start, rng.randint(1, 3))
        Y = rng.choice(list(actions_on(G, b)))
        for (g, y), z in Y.action.items():
            action[(g, start + y)] = start + z
        start += b
    return GlobalGSet(G, tuple(range(n)), action)


@st.composite
def restricted_actions(draw, max_points=6):
    """Restrictions of actions of groups of order at most 8 on at most 6 points."""
    G = draw(st.sampled_from(small_groups(6) + [cyclic(7), cyclic(8)]))
    n = draw(st.integers(1, max_points))
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    Y = random_cyclic_action(len(G), n, rng) if G.name.startswith("C") else random_action(G, n, rng)
    X = [y for y in Y.carrier if rng.random() < 0.5] or [Y.carrier[0]]
    return Y, restrict(Y, X)


@settings(max_examples=60)
@given(restricted_actions())
def test_globalization_is_the_orbit(data):
    Y, P = data
    Q = globalize_quotient(P)
    O = orbit(Y, P.carrier)
    assert len(Q) == len(O)
    # [g, x] -> g·x is a well-defined equivariant bijection onto the orbit
    m = {}
    for (g, x), r in Q.project.items():
        assert m.setdefault(r, Y.act(g, x)) == Y.act(g, x)
    assert set(m.values()) == O
    for (h, r), s in Q.action.items():
        assert m[s] == Y.act(h, m[r])


@settings(max_examples=60)
@given(restricted_actions())
def test_invariants(data):
    Y, P = data
    Q = globalize_quotient(P)
    G = P.monoid
    assert len(Q) <= len(G) * len(P.carrier)
    trivial_domain = P.domain == {(G.unit, x) for x in P.carrier}
    assert (len(Q) == len(G) * len(P.carrier)) == trivial_domain
    Q.as_gset()                                        # unit and composition laws
    assert len(set(Q.embed.values())) == len(P.carrier)
    for (g, x), y in P.alpha.items():
        assert Q.action[(g, Q.embed[x])] == Q.embed[y]
    Z = coequalizer_globalize(P)
    assert canonical_bijection(Z, Q) is not None
    assert restrict_globalize_roundtrip(P)
    assert pset_minimality(P, Q)
