from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.physics.quantum import TensorProduct

from globengine.exactla import (
    LinearMap,
    ShapeError,
    VectorSpace,
    equalizer,
    factor_through_epi,
    factor_through_mono,
    format_rational,
    hstack,
    identity,
    image,
    inverse,
    is_epi,
    is_iso,
    is_mono,
    kernel,
    map_from_json,
    matrix_to_json,
    pushout,
    rank,
    solve_matrix_system,
    space_from_json,
    space_to_json,
    tensor_map,
    tensor_space,
    to_rational,
    vstack,
    zero_map,
)

from conftest import maps, sym, sym_rank

V1, V2, V3 = VectorSpace(1), VectorSpace(2), VectorSpace(3)


def M(dom, cod, rows):
    return LinearMap(dom, cod, rows)


# ---- scalars and spaces ---------------------------------------------------

def test_floats_are_rejected():
    with pytest.raises(TypeError):
        to_rational(0.5)
    assert to_rational("3/6") == Fraction(1, 2)
    assert format_rational(Fraction(-4, 2)) == "-2"
    assert format_rational(Fraction(2, 6)) == "1/3"


def test_labels_must_be_distinct():
    with pytest.raises(ShapeError):
        VectorSpace.named("a", "a")


def test_shape_mismatch_raises():
    with pytest.raises(ShapeError):
        M(V2, V1, ((1,),))
    with pytest.raises(ShapeError):
        identity(V2) @ identity(V3)


def test_tensor_labels_are_lexicographic():
    T = tensor_space(VectorSpace.named("x", "y"), VectorSpace.named("a", "b"))
    assert T.labels == ("x⊗a", "x⊗b", "y⊗a", "y⊗b")


# ---- kernel ----------------------------------------------------------------

def test_kernel_of_zero_map_is_everything():
    k = kernel(zero_map(V3, V2))
    assert k.dom.dim == 3 and is_iso(k)


def test_kernel_of_identity_is_zero():
    assert kernel(identity(V2)).dom.dim == 0


def test_kernel_of_sum_functional():
    k = kernel(M(V2, V1, ((1, 1),)))
    assert k.dom.dim == 1
    a, b = k.column(0)
    assert a == -b != 0


@given(maps())
def test_rank_nullity(f):
    assert kernel(f).dom.dim + rank(f) == f.dom.dim


@given(maps())
def test_rank_matches_independent_oracle(f):
    assert rank(f) == sym_rank(f)


@given(maps())
def test_kernel_is_killed_and_injective(f):
    k = kernel(f)
    assert (f @ k).is_zero() and is_mono(k)


@given(maps())
def test_image_spans_the_image(f):
    i = image(f)
    assert is_mono(i) and i.dom.dim == rank(f)
    assert factor_through_mono(f, i) is not None


# ---- epi / mono / iso ------------------------------------------------------

def test_epi_mono_examples():
    assert is_epi(identity(V2)) and is_mono(identity(V2)) and is_iso(identity(V2))
    s = M(V2, V1, ((1, 1),))
    assert is_epi(s) and not is_mono(s)
    j = M(V1, V2, ((1,), (0,)))
    assert is_mono(j) and not is_epi(j)


@given(maps(rows=3, cols=3))
def test_inverse_when_iso(f):
    if is_iso(f):
        assert inverse(f) @ f == identity(f.dom)
        assert sym(inverse(f)) == sym(f).inv()
    else:
        with pytest.raises(ValueError):
            inverse(f)


# ---- pushout ---------------------------------------------------------------

def test_pushout_of_identities():
    po = pushout(identity(V2), identity(V2))
    assert po.apex.dim == 2
    assert is_iso(po.leg_left) and po.leg_left == po.leg_right


def test_pushout_kills_into_other_leg():
    po = pushout(identity(V1), zero_map(V1, V1))
    assert po.apex.dim == 1
    assert po.leg_left.is_zero()


def test_pushout_of_graded3_span():
    # p and (p⊗H)δ for y_a -> e1, y_b -> e2, z_b -> e1 over the group-like {a, b}
    f = M(V3, V2, ((1, 0, 1), (0, 1, 0)))
    g = M(V3, VectorSpace(4), ((1, 0, 0), (0, 0, 1), (0, 0, 0), (0, 1, 0)))
    assert rank(vstack(f, g)) == 3
    assert pushout(f, g).apex.dim == 2 + 4 - 3


@given(st.integers(0, 3).flatmap(lambda a: st.tuples(maps(cols=a), maps(cols=a))))
def test_pushout_square_and_dimension(fg):
    f, g = fg
    po = pushout(f, g)
    assert po.leg_left @ f == po.leg_right @ g
    assert rank(po.copairing) == po.apex.dim
    assert po.apex.dim == f.cod.dim + g.cod.dim - sym_rank(vstack(f, g.scale(-1)))


@given(st.integers(0, 3).flatmap(lambda a: st.tuples(maps(cols=a), maps(cols=a), maps(rows=2, max_dim=6))))
def test_pushout_universal_property(data):
    f, g, t0 = data
    po = pushout(f, g)
    if t0.dom.dim != po.apex.dim:
        t0 = zero_map(po.apex, t0.cod)
    t0 = t0.with_spaces(po.apex)
    u, v = t0 @ po.leg_left, t0 @ po.leg_right      # a cocone by construction
    t = po.induced(u, v)
    assert t == t0                                   # existence and uniqueness
    if f.dom.dim and not (u @ f).is_zero():
        assert po.induced(u.scale(2), v) is None     # not a cocone


# ---- equalizer, factorizations --------------------------------------------

def test_equalizer_examples():
    assert is_iso(equalizer(identity(V2), identity(V2)))
    assert equalizer(identity(V2), zero_map(V2, V2)).dom.dim == 0


@given(st.integers(0, 4).flatmap(lambda n: st.tuples(maps(cols=n, rows=2), maps(cols=n, rows=2))))
def test_equalizer_equalizes(fg):
    f, g = fg
    e = equalizer(f, g)
    assert f @ e == g @ e and is_mono(e)
    assert e.dom.dim == f.dom.dim - sym_rank(f - g)


def test_factor_through_epi_examples():
    e = M(V2, V1, ((1, 1),))
    assert factor_through_epi(e, e) == identity(V1)
    assert factor_through_epi(M(V2, V1, ((1, 0),)), e) is None
    assert factor_through_epi(M(V2, V1, ((2, 2),)), e) == M(V1, V1, ((2,),))


def test_factor_through_non_epi_raises():
    with pytest.raises(ValueError):
        factor_through_epi(identity(V1), zero_map(V1, V1))


@given(maps(rows=2, cols=4), maps(rows=3, cols=2))
def test_factor_through_epi_solves(e, u0):
    if not is_epi(e):
        return
    h = u0 @ e
    u = factor_through_epi(h, e)
    assert u == u0 and u @ e == h


# ---- tensor ----------------------------------------------------------------

def test_tensor_examples():
    assert tensor_map(identity(V2), identity(V3)) == identity(VectorSpace(6))
    a, b = Fraction(2, 3), Fraction(-5, 7)
    assert tensor_map(M(V1, V1, ((a,),)), M(V1, V1, ((b,),))).matrix == ((a * b,),)


@given(maps(rows=2, cols=2), maps(rows=2, cols=2), maps(rows=2, cols=2), maps(rows=2, cols=2))
def test_tensor_interchange(f, g, f2, g2):
    assert tensor_map(f, g) @ tensor_map(f2, g2) == tensor_map(f @ f2, g @ g2)


@given(maps(max_dim=3), maps(max_dim=3))
def test_tensor_matches_kronecker(f, g):
    if 0 in f.shape or 0 in g.shape:
        assert 0 in tensor_map(f, g).shape or tensor_map(f, g).is_zero()
        return
    assert sym(tensor_map(f, g)) == sympy.Matrix(TensorProduct(sym(f), sym(g)))


# ---- stacking, systems, serialization -------------------------------------

def test_hstack_vstack_blocks():
    a, b = identity(V1), M(V1, V1, ((3,),))
    assert hstack(a, b).matrix == ((1, 3),)
    assert vstack(a, b).matrix == ((1,), (3,))


def test_solve_matrix_system_commutant():
    # maps T: Q^2 -> Q^2 commuting with diag(1, 2) are the diagonal ones
    D = M(V2, V2, ((1, 0), (0, 2)))
    part, basis = solve_matrix_system(V2, V2, [(lambda T: T @ D - D @ T, None)])
    assert part is not None and part.is_zero()
    assert len(basis) == 2
    assert all(B.matrix[0][1] == 0 == B.matrix[1][0] for B in basis)


def test_solve_matrix_system_inconsistent():
    part, _ = solve_matrix_system(V1, V1, [(lambda T: T, identity(V1)), (lambda T: T, zero_map(V1, V1))])
    assert part is None


def test_json_roundtrip():
    f = M(V2, V3, ((Fraction(1, 2), 0), (-3, 1), (0, Fraction(7, 3))))
    assert matrix_to_json(f) == [["1/2", "0"], ["-3", "1"], ["0", "7/3"]]
    g = map_from_json(space_from_json(space_to_json(f.dom)), space_from_json(3), matrix_to_json(f))
    assert g == f
