from fractions import Fraction

import hypothesis.strategies as st
import sympy
from hypothesis import settings

from globengine.exactla import LinearMap, VectorSpace

settings.register_profile("ci", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("ci")

rationals = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def maps(draw, rows=None, cols=None, max_dim=4):
    m = draw(st.integers(0, max_dim)) if rows is None else rows
    n = draw(st.integers(0, max_dim)) if cols is None else cols
    entries = draw(st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=m, max_size=m))
    return LinearMap(VectorSpace(n), VectorSpace(m), entries)


def sym(f: LinearMap) -> sympy.Matrix:
    """Independent oracle representation."""
    return sympy.Matrix(f.cod.dim, f.dom.dim, lambda i, j: sympy.Rational(f.matrix[i][j].numerator,
                                                                           f.matrix[i][j].denominator))


def sym_rank(f: LinearMap) -> int:
    if f.cod.dim == 0 or f.dom.dim == 0:
        return 0
    return sym(f).rank()
