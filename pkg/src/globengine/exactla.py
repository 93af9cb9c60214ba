"""
Exact linear algebra over the rationals.

Spaces carry a dimension and reporting labels; maps carry their declared
domain and codomain together with a ``cod.dim x dom.dim`` matrix of
``Fraction`` entries.  Everything here is immutable and exact: there are no
tolerances anywhere.

Tensor products use one fixed basis convention: the basis of ``V (x) W`` is
ordered lexicographically on ``(V-index, W-index)``, i.e. the Kronecker
product.  With this convention ``(U (x) V) (x) W`` and ``U (x) (V (x) W)`` have
literally the same matrix presentation, and ``V (x) Q`` has the same
coordinates as ``V``.  Composition therefore only checks dimensions, never
labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class ShapeError(ValueError):
    """Raised when declared spaces and matrix shapes do not fit together."""


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use integers, strings or Fractions")
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# spaces

@dataclass(frozen=True)
class VectorSpace:
    dim: int
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.dim < 0:
            raise ShapeError("negative dimension")
        labels = tuple(self.labels) if self.labels else tuple(f"e{i}" for i in range(self.dim))
        if len(labels) != self.dim:
            raise ShapeError(f"{len(labels)} labels for a space of dim {self.dim}")
        if len(set(labels)) != len(labels):
            raise ShapeError("basis labels must be pairwise distinct")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def named(cls, *labels: str) -> "VectorSpace":
        return cls(len(labels), tuple(labels))

    def __repr__(self):
        return f"VectorSpace({self.dim}, {list(self.labels)})"


UNIT = VectorSpace(1, ("1",))


def tensor_space(V: VectorSpace, W: VectorSpace) -> VectorSpace:
    labels = tuple(f"{a}⊗{b}" for a in V.labels for b in W.labels)
    return VectorSpace(V.dim * W.dim, labels)


def direct_sum(V: VectorSpace, W: VectorSpace) -> VectorSpace:
    left = [f"L.{a}" for a in V.labels]
    right = [f"R.{b}" for b in W.labels]
    return VectorSpace(V.dim + W.dim, tuple(left + right))


# ---------------------------------------------------------------------------
# row reduction on sparse rows (dicts column -> nonzero Fraction)

def _sparse(row: Sequence[Fraction]) -> dict[int, Fraction]:
    return {j: v for j, v in enumerate(row) if v}


def _rref_sparse(rows: Iterable[dict[int, Fraction]], ncols: int):
    """Gauss-Jordan elimination.  Returns ``(pivot_cols, reduced_rows)``."""
    pending = [dict(r) for r in rows if r]
    done: list[tuple[int, dict[int, Fraction]]] = []
    for col in range(ncols):
        if not pending:
            break
        best = None
        for i, r in enumerate(pending):
            if col in r and (best is None or len(r) < len(pending[best])):
                best = i
        if best is None:
            continue
        prow = pending.pop(best)
        inv = 1 / prow[col]
        if inv != 1:
            prow = {c: v * inv for c, v in prow.items()}
        for other in (r for _, r in done):
            _eliminate(other, prow, col)
        keep = []
        for other in pending:
            _eliminate(other, prow, col)
            if other:
                keep.append(other)
        pending = keep
        done.append((col, prow))
    pivots = [c for c, _ in done]
    return pivots, [r for _, r in done]


def _eliminate(target: dict, prow: dict, col: int):
    f = target.get(col)
    if not f:
        return
    for c, v in prow.items():
        nv = target.get(c, ZERO) - f * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None):
    """Reduced row echelon form of a dense matrix: ``(R, pivots)``."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots, reduced = _rref_sparse((_sparse(r) for r in rows), ncols)
    R = tuple(tuple(r.get(j, ZERO) for j in range(ncols)) for r in reduced)
    return R, pivots


def _nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    pivots, reduced = _rref_sparse((_sparse(r) for r in rows), ncols)
    pset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for p, r in zip(pivots, reduced):
            c = r.get(free)
            if c:
                v[p] = -c
        basis.append(tuple(v))
    return basis


def _solve(rows: Sequence[Sequence[Fraction]], ncols: int, rhs: Sequence[Sequence[Fraction]], k: int):
    """One solution ``X`` (ncols x k) of ``A X = B`` or ``None``; free variables set to 0."""
    aug = []
    for a, b in zip(rows, rhs):
        r = _sparse(a)
        for j, v in enumerate(b):
            if v:
                r[ncols + j] = v
        aug.append(r)
    pivots, reduced = _rref_sparse(aug, ncols + k)
    if pivots and pivots[-1] >= ncols:
        return None
    X = [[ZERO] * k for _ in range(ncols)]
    for p, r in zip(pivots, reduced):
        for j in range(k):
            X[p][j] = r.get(ncols + j, ZERO)
    return X


# ---------------------------------------------------------------------------
# maps

def _freeze(matrix) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(to_rational(x) for x in row) for row in matrix)


@dataclass(frozen=True, eq=False)
class LinearMap:
    dom: VectorSpace
    cod: VectorSpace
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = _freeze(self.matrix)
        if len(m) != self.cod.dim or any(len(r) != self.dom.dim for r in m):
            shape = (len(m), len(m[0]) if m else 0)
            raise ShapeError(
                f"matrix of shape {shape} does not fit {self.cod.dim}x{self.dom.dim}"
            )
        object.__setattr__(self, "matrix", m)

    # constructors
    @classmethod
    def identity(cls, V: VectorSpace) -> "LinearMap":
        return cls(V, V, tuple(tuple(ONE if i == j else ZERO for j in range(V.dim)) for i in range(V.dim)))

    @classmethod
    def zero(cls, dom: VectorSpace, cod: VectorSpace) -> "LinearMap":
        return cls(dom, cod, tuple((ZERO,) * dom.dim for _ in range(cod.dim)))

    @classmethod
    def from_columns(cls, dom: VectorSpace, cod: VectorSpace, columns) -> "LinearMap":
        columns = [tuple(c) for c in columns]
        if len(columns) != dom.dim:
            raise ShapeError(f"{len(columns)} columns for a domain of dim {dom.dim}")
        return cls(dom, cod, tuple(tuple(c[i] for c in columns) for i in range(cod.dim)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.cod.dim, self.dom.dim)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.matrix)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.dom.dim)]

    def __call__(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.dom.dim:
            raise ShapeError("vector length does not match domain")
        v = [to_rational(x) for x in v]
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self.matrix)

    # algebra
    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        """Composition ``self o other``."""
        if other.cod.dim != self.dom.dim:
            raise ShapeError(f"cannot compose {self.shape} after {other.shape}")
        B = other.matrix
        width = other.dom.dim
        out = []
        for row in self.matrix:
            acc = [ZERO] * width
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(B[k]):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return LinearMap(other.dom, self.cod, tuple(out))

    def _check_parallel(self, other: "LinearMap"):
        if self.shape != other.shape:
            raise ShapeError(f"maps of shapes {self.shape} and {other.shape} are not parallel")

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._check_parallel(other)
        m = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix))
        return LinearMap(self.dom, self.cod, m)

    def __neg__(self) -> "LinearMap":
        return LinearMap(self.dom, self.cod, tuple(tuple(-a for a in r) for r in self.matrix))

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + (-other)

    def scale(self, c) -> "LinearMap":
        c = to_rational(c)
        return LinearMap(self.dom, self.cod, tuple(tuple(c * a for a in r) for r in self.matrix))

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.shape == other.shape and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.shape, self.matrix))

    def transpose(self) -> "LinearMap":
        return LinearMap(self.cod, self.dom, tuple(zip(*self.matrix)) if self.matrix else
                         tuple(() for _ in range(self.dom.dim)))

    def with_spaces(self, dom: VectorSpace | None = None, cod: VectorSpace | None = None) -> "LinearMap":
        """Same matrix, relabelled spaces (dimensions must agree)."""
        return LinearMap(dom or self.dom, cod or self.cod, self.matrix)

    def rank(self) -> int:
        return rank(self)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)

    def __repr__(self):
        rows = "; ".join(" ".join(format_rational(x) for x in r) for r in self.matrix)
        return f"LinearMap({self.dom.dim}->{self.cod.dim}: [{rows}])"


def identity(V: VectorSpace) -> LinearMap:
    return LinearMap.identity(V)


def zero_map(dom: VectorSpace, cod: VectorSpace) -> LinearMap:
    return LinearMap.zero(dom, cod)


def rank(f: LinearMap) -> int:
    pivots, _ = _rref_sparse((_sparse(r) for r in f.matrix), f.dom.dim)
    return len(pivots)


def is_epi(f: LinearMap) -> bool:
    return rank(f) == f.cod.dim


def is_mono(f: LinearMap) -> bool:
    return rank(f) == f.dom.dim


def is_iso(f: LinearMap) -> bool:
    return f.dom.dim == f.cod.dim and is_mono(f)


def kernel(f: LinearMap) -> LinearMap:
    """Injective map ``K -> dom f`` whose image is exactly ``ker f``."""
    basis = _nullspace(f.matrix, f.dom.dim)
    K = VectorSpace(len(basis), tuple(f"k{i}" for i in range(len(basis))))
    return LinearMap.from_columns(K, f.dom, basis)


def image(f: LinearMap) -> LinearMap:
    """Injective map ``I -> cod f`` onto the image, spanned by the pivot columns of ``f``."""
    pivots, _ = _rref_sparse((_sparse(r) for r in f.matrix), f.dom.dim)
    cols = [f.column(j) for j in pivots]
    I = VectorSpace(len(cols), tuple(f"i{i}" for i in range(len(cols))))
    return LinearMap.from_columns(I, f.cod, cols)


def inverse(f: LinearMap) -> LinearMap:
    if not is_iso(f):
        raise ValueError("map is not invertible")
    X = _solve(f.matrix, f.dom.dim, LinearMap.identity(f.cod).matrix, f.cod.dim)
    return LinearMap(f.cod, f.dom, tuple(tuple(r) for r in X))


def hstack(*maps: LinearMap) -> LinearMap:
    """Copairing ``[f | g | ...]`` out of the direct sum of the domains."""
    cod = maps[0].cod
    if any(m.cod.dim != cod.dim for m in maps):
        raise ShapeError("hstack needs a common codomain")
    dom = maps[0].dom
    for m in maps[1:]:
        dom = direct_sum(dom, m.dom)
    rows = tuple(tuple(x for m in maps for x in m.matrix[i]) for i in range(cod.dim))
    return LinearMap(dom, cod, rows)


def vstack(*maps: LinearMap) -> LinearMap:
    """Pairing ``(f, g, ...)`` into the direct sum of the codomains."""
    dom = maps[0].dom
    if any(m.dom.dim != dom.dim for m in maps):
        raise ShapeError("vstack needs a common domain")
    cod = maps[0].cod
    for m in maps[1:]:
        cod = direct_sum(cod, m.cod)
    return LinearMap(dom, cod, tuple(r for m in maps for r in m.matrix))


def tensor_map(f: LinearMap, g: LinearMap) -> LinearMap:
    """Kronecker product in the fixed lexicographic basis convention."""
    rows = []
    for fr in f.matrix:
        for gr in g.matrix:
            rows.append(tuple(a * b if a and b else ZERO for a in fr for b in gr))
    return LinearMap(tensor_space(f.dom, g.dom), tensor_space(f.cod, g.cod), tuple(rows))


# ---------------------------------------------------------------------------
# limits, colimits, factorizations

@dataclass(frozen=True)
class PushoutResult:
    apex: VectorSpace
    leg_left: LinearMap
    leg_right: LinearMap

    @property
    def copairing(self) -> LinearMap:
        """The jointly-epi map ``B (+) C -> apex``."""
        return hstack(self.leg_left, self.leg_right)

    def induced(self, u: LinearMap, v: LinearMap) -> LinearMap | None:
        """Unique ``t`` with ``t o leg_left = u`` and ``t o leg_right = v``, if (u, v) is a cocone."""
        return factor_through_epi(hstack(u, v), self.copairing)


def pushout(f: LinearMap, g: LinearMap) -> PushoutResult:
    """Pushout of the span ``B <-f- A -g-> C`` as ``(B (+) C) / {(f a, -g a)}``.

    The apex basis consists of the coordinates of ``B (+) C`` that are not
    pivots of the reduced row echelon form of the relation space, so the
    result is deterministic.
    """
    if f.dom.dim != g.dom.dim:
        raise ShapeError("pushout needs a common domain")
    nb, nc = f.cod.dim, g.cod.dim
    total = nb + nc
    relations = []
    for j in range(f.dom.dim):
        r = {i: x for i, x in enumerate(f.column(j)) if x}
        r.update({nb + i: -x for i, x in enumerate(g.column(j)) if x})
        relations.append(r)
    pivots, reduced = _rref_sparse(relations, total)
    pset = set(pivots)
    keep = [c for c in range(total) if c not in pset]
    pos = {c: k for k, c in enumerate(keep)}
    labels = [f"L.{x}" for x in f.cod.labels] + [f"R.{x}" for x in g.cod.labels]
    apex = VectorSpace(len(keep), tuple(labels[c] for c in keep))
    # quotient map: e_c -> e_c for kept c; e_p -> -(row p restricted to kept columns)
    q = [[ZERO] * total for _ in keep]
    for c in keep:
        q[pos[c]][c] = ONE
    for p, r in zip(pivots, reduced):
        for c, v in r.items():
            if c != p:
                q[pos[c]][p] = -v
    left = LinearMap(f.cod, apex, tuple(tuple(row[:nb]) for row in q))
    right = LinearMap(g.cod, apex, tuple(tuple(row[nb:]) for row in q))
    return PushoutResult(apex, left, right)


def equalizer(f: LinearMap, g: LinearMap) -> LinearMap:
    """Inclusion ``E -> A`` of the subspace where ``f`` and ``g`` agree."""
    if f.shape != g.shape:
        raise ShapeError("equalizer needs parallel maps")
    return kernel(f - g)


def factor_through_epi(h: LinearMap, e: LinearMap) -> LinearMap | None:
    """The unique ``u`` with ``u o e = h``, or ``None`` when ``ker e`` is not inside ``ker h``."""
    if h.dom.dim != e.dom.dim:
        raise ShapeError("factor_through_epi needs a common domain")
    if not is_epi(e):
        raise ValueError("factor_through_epi: e is not an epimorphism")
    # u e = h  <=>  e^T u^T = h^T
    X = _solve(e.transpose().matrix, e.cod.dim, h.transpose().matrix, h.cod.dim)
    if X is None:
        return None
    return LinearMap(e.cod, h.cod, tuple(zip(*X)) if X else tuple(() for _ in range(h.cod.dim)))


def factor_through_mono(h: LinearMap, m: LinearMap) -> LinearMap | None:
    """The unique ``u`` with ``m o u = h``, or ``None`` when ``im h`` is not inside ``im m``."""
    if h.cod.dim != m.cod.dim:
        raise ShapeError("factor_through_mono needs a common codomain")
    if not is_mono(m):
        raise ValueError("factor_through_mono: m is not a monomorphism")
    X = _solve(m.matrix, m.dom.dim, h.matrix, h.dom.dim)
    if X is None:
        return None
    return LinearMap(h.dom, m.dom, tuple(tuple(r) for r in X))


def kernel_witness(e: LinearMap, h: LinearMap) -> tuple[Fraction, ...] | None:
    """A basis vector of ``ker e`` not killed by ``h``, or ``None`` if ``ker e`` is in ``ker h``."""
    for v in kernel(e).columns():
        if any(h(v)):
            return v
    return None


def first_difference(f: LinearMap, g: LinearMap) -> int | None:
    """Index of the first domain basis vector on which ``f`` and ``g`` differ."""
    f._check_parallel(g)
    for j in range(f.dom.dim):
        if f.column(j) != g.column(j):
            return j
    return None


# ---------------------------------------------------------------------------
# linear systems in an unknown matrix

def solve_matrix_system(
    dom: VectorSpace,
    cod: VectorSpace,
    equations: Sequence[tuple[Callable[[LinearMap], LinearMap], LinearMap | None]],
):
    """Solve ``L_i(T) = B_i`` for an unknown map ``T: dom -> cod``.

    Every ``L_i`` must be linear in ``T``.  A ``None`` right-hand side means
    zero.  Returns ``(particular, homogeneous_basis)``, where ``particular`` is
    ``None`` when the system is inconsistent.
    """
    m, n = cod.dim, dom.dim
    nvars = m * n
    images = []  # for each unknown, the concatenated flattened outputs
    for idx in range(nvars):
        a, b = divmod(idx, n)
        E = LinearMap(dom, cod, tuple(tuple(ONE if (i, j) == (a, b) else ZERO for j in range(n)) for i in range(m)))
        flat = []
        for L, _ in equations:
            out = L(E)
            for r in out.matrix:
                flat.extend(r)
        images.append(flat)
    rhs = []
    for L, B in equations:
        if B is None:
            out = L(LinearMap.zero(dom, cod))
            rhs.extend([ZERO] * (out.shape[0] * out.shape[1]))
        else:
            for r in B.matrix:
                rhs.extend(r)
    nrows = len(rhs)
    rows = [tuple(images[v][i] for v in range(nvars)) for i in range(nrows)]

    def as_map(vec):
        return LinearMap(dom, cod, tuple(tuple(vec[i * n + j] for j in range(n)) for i in range(m)))

    homogeneous = [as_map(v) for v in _nullspace(rows, nvars)]
    X = _solve(rows, nvars, [(b,) for b in rhs], 1)
    particular = None if X is None else as_map([x[0] for x in X])
    return particular, homogeneous


# ---------------------------------------------------------------------------
# serialization: matrices as arrays of arrays of "p/q" strings

def matrix_to_json(f: LinearMap) -> list[list[str]]:
    return [[format_rational(x) for x in r] for r in f.matrix]


def space_to_json(V: VectorSpace) -> dict:
    return {"dim": V.dim, "labels": list(V.labels)}


def space_from_json(obj) -> VectorSpace:
    if isinstance(obj, int):
        return VectorSpace(obj)
    return VectorSpace(int(obj["dim"]), tuple(obj.get("labels") or ()))


def map_from_json(dom: VectorSpace, cod: VectorSpace, rows) -> LinearMap:
    if cod.dim == 0:
        rows = rows or []
    return LinearMap(dom, cod, tuple(tuple(to_rational(x) for x in r) for r in rows))
