import random

import pytest

from globengine.comod import (
    Coalgebra,
    Comodule,
    ComoduleMorphism,
    check_coalgebra,
    check_comodule,
    colinear_maps,
    comodule_equalizer,
    direct_sum_comodule,
    find_comodule_iso,
    free_comodule,
    graded_comodule,
    group_like,
    gx_coalgebra,
    is_colinear,
    matrix_coalgebra,
    regular_comodule,
    transport,
)
from globengine.exactla import (
    LinearMap,
    VectorSpace,
    factor_through_mono,
    identity,
    is_iso,
    is_mono,
    tensor_map,
    tensor_space,
    zero_map,
)
from globengine import fixtures
from globengine.randomdata import random_colinear, random_comodule


def test_group_like_passes():
    assert check_coalgebra(group_like(["a", "b"]))


def test_broken_counit_is_located():
    H = group_like(["a", "b"])
    eps = LinearMap(H.space, VectorSpace.named("1"), ((1, 0),))
    v = check_coalgebra(Coalgebra(H.space, H.delta, eps, "bad"))
    assert not v and "counit" in v.law and v.witness == (1, "b")


def test_gx_coalgebra_by_hand():
    H = gx_coalgebra()
    assert H.space.labels == ("g", "x")
    # Δx = g⊗x + x⊗g in the basis g⊗g, g⊗x, x⊗g, x⊗x
    assert H.delta.column(1) == (0, 1, 1, 0)
    assert H.eps.matrix == ((1, 0),)
    assert check_coalgebra(H)


def test_every_fixture_coalgebra_passes():
    for H in fixtures.coalgebras():
        assert check_coalgebra(H), H.name
        assert H.dim <= 4


def test_matrix_coalgebra_dimension():
    assert matrix_coalgebra(2).dim == 4


def test_zero_coaction_fails_counitality():
    H = fixtures.QC2()
    X = VectorSpace(2)
    v = check_comodule(Comodule(X, H, zero_map(X, tensor_space(X, H.space)), "zero"))
    assert not v and v.law == "counitality"


def test_graded_comodule_by_hand():
    Y = fixtures.graded2()
    assert check_comodule(Y)
    # y_a -> y_a⊗a, y_b -> y_b⊗b; basis y_a⊗a, y_a⊗b, y_b⊗a, y_b⊗b
    assert Y.coaction.column(0) == (1, 0, 0, 0)
    assert Y.coaction.column(1) == (0, 0, 0, 1)


def test_free_comodule_on_unit_is_regular():
    H = fixtures.QC3()
    F = free_comodule(VectorSpace.named("1"), H)
    assert F.coaction.matrix == H.delta.matrix


def test_free_comodule_coaction_is_id_tensor_delta():
    for H in fixtures.coalgebras():
        V = VectorSpace(2)
        F = free_comodule(V, H)
        assert F.dim == 2 * H.dim and check_comodule(F)
        assert F.coaction == tensor_map(identity(V), H.delta)


def test_colinearity_examples():
    Y = fixtures.graded2()
    assert is_colinear(identity(Y.space), Y, Y)
    swap = LinearMap(Y.space, Y.space, ((0, 1), (1, 0)))
    assert not is_colinear(swap, Y, Y)
    assert len(colinear_maps(Y, Y)) == 2
    H = fixtures.QC2()
    V = VectorSpace(2)
    F = free_comodule(V, H)
    FF = free_comodule(tensor_space(V, H.space), H)
    assert is_colinear(tensor_map(identity(V), H.delta).with_spaces(F.space, FF.space), F, FF)
    # V⊗ε is not colinear onto V with everything in degree a
    Va = graded_comodule(H, ["a", "a"])
    Fa = free_comodule(Va.space, H)
    proj = tensor_map(identity(Va.space), H.eps).with_spaces(Fa.space, Va.space)
    assert not is_colinear(proj, Fa, Va)


def test_equalizer_of_equal_maps_is_source():
    Y = fixtures.graded3()
    f = ComoduleMorphism(Y, Y, identity(Y.space))
    E, k = comodule_equalizer(f, f)
    assert E.dim == Y.dim and is_iso(k.map)


@pytest.mark.parametrize("Y", fixtures.global_comodules(), ids=lambda Y: Y.name)
def test_absolute_equalizer_of_global_comodule(Y):
    H = Y.coalgebra
    F = free_comodule(Y.space, H)
    FF = free_comodule(tensor_space(Y.space, H.space), H)
    a = ComoduleMorphism(F, FF, tensor_map(Y.coaction, H.id))
    b = ComoduleMorphism(F, FF, tensor_map(identity(Y.space), H.delta))
    E, k = comodule_equalizer(a, b)
    assert E.dim == Y.dim
    # the image of δ_Y is exactly the equalizer, and Y⊗ε inverts δ_Y onto it
    assert factor_through_mono(Y.coaction, k.map) is not None
    assert is_iso(factor_through_mono(Y.coaction, k.map))
    assert tensor_map(identity(Y.space), H.eps).with_spaces(F.space, Y.space) @ Y.coaction == identity(Y.space)


@pytest.mark.parametrize("seed", range(15))
def test_equalizer_factors_colinear_maps(seed):
    rng = random.Random(seed)
    H = rng.choice(fixtures.coalgebras())
    X, Y, Z = (random_comodule(H, rng, 4, n) for n in "XYZ")
    f, g = random_colinear(X, Y, rng), random_colinear(X, Y, rng)
    E, k = comodule_equalizer(ComoduleMorphism(X, Y, f), ComoduleMorphism(X, Y, g))
    assert is_mono(k.map) and is_colinear(k.map, E, X) and check_comodule(E)
    # any colinear h with f h = g h factors uniquely through k
    h = k.map @ random_colinear(Z, E, rng)
    u = factor_through_mono(h, k.map)
    assert u is not None and is_colinear(u, Z, E)


def test_transport_and_iso_search():
    rng = random.Random(3)
    Y = random_comodule(fixtures.QC3(), rng, 5)
    # upper unitriangular, so invertible
    T = LinearMap(Y.space, Y.space, [[int(i == j) + int(j == i + 1) for j in range(Y.dim)] for i in range(Y.dim)])
    Z = transport(Y, T, "Z")
    assert check_comodule(Z) and is_colinear(T, Y, Z)
    iso = find_comodule_iso(Y, Z)
    assert iso is not None and is_iso(iso) and is_colinear(iso, Y, Z)


def test_non_isomorphic_comodules():
    H = fixtures.QC2()
    A = graded_comodule(H, ["a", "a"])
    B = graded_comodule(H, ["a", "b"])
    assert find_comodule_iso(A, B) is None


def test_direct_sum_and_regular():
    Y = direct_sum_comodule(fixtures.graded2(), regular_comodule(fixtures.QC2()))
    assert Y.dim == 4 and check_comodule(Y)
