"""Exact linear algebra over Q.

Everything here works with :class:`fractions.Fraction` scalars and sparse rows
(``dict`` column -> value).  Elimination runs on primitive integer rows and
only converts back to fractions when the reduced row echelon form is emitted,
which keeps the cost of a rank computation close to that of integer Gaussian
elimination.

Subspaces are stored in reduced row echelon form, so two subspaces of the same
ambient space are equal exactly when their stored bases are identical.
"""

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

from .errors import AmbientMismatch, NotContained

__all__ = [
    "as_rational",
    "Matrix",
    "Subspace",
    "rref",
    "rank",
    "kernel",
    "image",
    "subspace_sum",
    "intersect",
    "contains",
    "quotient_dim",
]


def as_rational(x):
    """Coerce ``x`` to a Fraction, refusing floats and other inexact values."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


def _sparse(values):
    """Dense sequence or mapping -> sparse dict with exact nonzero values."""
    if isinstance(values, dict):
        items = values.items()
    else:
        items = enumerate(values)
    out = {}
    for c, v in items:
        v = as_rational(v)
        if v:
            out[c] = v
    return out


# ---------------------------------------------------------------------------
# integer row elimination


def _primitive(row):
    """Scale a sparse rational row to a primitive integer row.

    The content is divided out so that entries stay small during elimination.
    The sign is left alone; only the row space matters.
    """
    dens = [v.denominator for v in row.values() if isinstance(v, Fraction)]
    scale = lcm(*dens) if dens else 1
    ints = {c: int(v * scale) for c, v in row.items()}
    g = gcd(*ints.values())
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


def _combine(a, r, b, p):
    """Return the primitive form of ``a*r - b*p`` for integer rows ``r``, ``p``."""
    out = {c: a * v for c, v in r.items()} if a != 1 else dict(r)
    for c, v in p.items():
        nv = out.get(c, 0) - b * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    if out:
        g = gcd(*out.values())
        if g > 1:
            out = {c: v // g for c, v in out.items()}
    return out


def _echelon(rows):
    """Reduced row echelon form of a list of sparse rows.

    Returns a list of ``(pivot, row)`` pairs sorted by pivot column, each row a
    dict with ``row[pivot] == 1`` and zeros in every other pivot column.
    """
    pivots = {}
    for row in rows:
        if not row:
            continue
        r = _primitive(row)
        while r:
            lead = min(r)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = r
                break
            a, b = p[lead], r[lead]
            g = gcd(a, b)
            r = _combine(a // g, r, b // g, p)

    # back substitution, highest pivot first so that every row used for
    # elimination is already fully reduced
    order = sorted(pivots, reverse=True)
    for c in order:
        r = pivots[c]
        targets = [c2 for c2 in r if c2 != c and c2 in pivots]
        for c2 in targets:
            p = pivots[c2]
            a, b = p[c2], r[c2]
            g = gcd(a, b)
            r = _combine(a // g, r, b // g, p)
        pivots[c] = r

    out = []
    for c in sorted(pivots):
        r = pivots[c]
        lead = r[c]
        out.append((c, {k: Fraction(v, lead) for k, v in sorted(r.items())}))
    return out


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable sparse matrix with exact rational entries."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows, ncols, rows=None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix shape must be non-negative")
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self._rows = tuple({} for _ in range(nrows))
            return
        rows = [_sparse(r) for r in rows]
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        for i, r in enumerate(rows):
            for c in r:
                if not 0 <= c < ncols:
                    raise IndexError(f"column {c} out of range in row {i}")
        self._rows = tuple(rows)

    @classmethod
    def _trusted(cls, nrows, ncols, rows):
        m = cls.__new__(cls)
        m.nrows, m.ncols, m._rows = nrows, ncols, tuple(rows)
        return m

    @classmethod
    def from_dense(cls, data, ncols=None):
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix")
        return cls(len(data), ncols, data)

    @classmethod
    def from_columns(cls, nrows, columns):
        """Build a matrix from sparse column dicts (trusted: exact, in range)."""
        rows = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls._trusted(nrows, len(columns), rows)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls._trusted(n, n, [{i: Fraction(1)} for i in range(n)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry {idx} outside a {self.nrows}x{self.ncols} matrix")
        return self._rows[i].get(j, Fraction(0))

    def row(self, i):
        """Sparse copy of row ``i``."""
        return dict(self._rows[i])

    def rows(self):
        return [dict(r) for r in self._rows]

    def nonzero(self):
        """Iterate ``(i, j, value)`` over nonzero entries in row-major order."""
        for i, r in enumerate(self._rows):
            for j in sorted(r):
                yield i, j, r[j]

    def to_dense(self):
        return [[r.get(j, Fraction(0)) for j in range(self.ncols)] for r in self._rows]

    def transpose(self):
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return Matrix._trusted(self.ncols, self.nrows, cols)

    T = property(transpose)

    def apply(self, vec):
        """Matrix-vector product with a sparse dict vector; returns a sparse dict."""
        out = {}
        for i, r in enumerate(self._rows):
            s = 0
            for j, v in r.items():
                x = vec.get(j)
                if x:
                    s += v * x
            if s:
                out[i] = Fraction(s)
        return out

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        rows = []
        for r in self._rows:
            acc = {}
            for k, v in r.items():
                for j, w in other._rows[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            rows.append({j: x for j, x in acc.items() if x})
        return Matrix._trusted(self.nrows, other.ncols, rows)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        rows = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            for j, v in b.items():
                x = r.get(j, 0) + v
                if x:
                    r[j] = x
                else:
                    r.pop(j, None)
            rows.append(r)
        return Matrix._trusted(self.nrows, self.ncols, rows)

    def __neg__(self):
        return Matrix._trusted(self.nrows, self.ncols, [{j: -v for j, v in r.items()} for r in self._rows])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def submatrix(self, rows, cols):
        """Restrict to the given row and column index lists (in that order)."""
        cpos = {c: k for k, c in enumerate(cols)}
        out = []
        for i in rows:
            r = self._rows[i]
            out.append({cpos[j]: v for j, v in r.items() if j in cpos})
        return Matrix._trusted(len(rows), len(cols), out)

    def rank(self):
        return len(_echelon(self._rows))

    def is_zero(self):
        return not any(self._rows)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={sum(len(r) for r in self._rows)})"


def rref(m):
    """Reduced row echelon form, zero rows dropped."""
    ech = _echelon(m._rows)
    return Matrix._trusted(len(ech), m.ncols, [r for _, r in ech])


def rank(m):
    return m.rank()


def kernel(m):
    """Null space ``{x : m x = 0}`` as a canonical Subspace of Q^cols."""
    ech = _echelon(m._rows)
    pivot_cols = {c for c, _ in ech}
    vectors = []
    for f in range(m.ncols):
        if f in pivot_cols:
            continue
        v = {f: Fraction(1)}
        for c, r in ech:
            x = r.get(f)
            if x:
                v[c] = -x
        vectors.append(v)
    return Subspace.span(m.ncols, vectors)


def image(m):
    """Column space of ``m`` as a canonical Subspace of Q^rows."""
    return Subspace.span(m.nrows, m.transpose()._rows)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of Q^n held as a reduced row echelon basis.

    ``basis`` is a tuple of rows, each row a tuple of ``(column, value)`` pairs
    sorted by column.  Equality is equality of these tuples.
    """

    __slots__ = ("ambient_dim", "basis", "_rows", "_pivots")

    def __init__(self, ambient_dim, echelon_rows):
        # trusted constructor: echelon_rows are (pivot, dict) pairs from _echelon
        self.ambient_dim = ambient_dim
        self._pivots = tuple(c for c, _ in echelon_rows)
        self._rows = tuple(r for _, r in echelon_rows)
        self.basis = tuple(tuple(sorted(r.items())) for r in self._rows)

    @classmethod
    def span(cls, ambient_dim, vectors):
        rows = []
        for v in vectors:
            s = _sparse(v)
            for c in s:
                if not 0 <= c < ambient_dim:
                    raise IndexError(f"coordinate {c} outside Q^{ambient_dim}")
            rows.append(s)
        return cls(ambient_dim, _echelon(rows))

    @classmethod
    def zero(cls, n):
        return cls(n, [])

    @classmethod
    def full(cls, n):
        return cls(n, [(i, {i: Fraction(1)}) for i in range(n)])

    @classmethod
    def coordinate(cls, n, indices):
        """Span of the standard basis vectors with the given indices."""
        idx = sorted(set(indices))
        for i in idx:
            if not 0 <= i < n:
                raise IndexError(f"coordinate {i} outside Q^{n}")
        return cls(n, [(i, {i: Fraction(1)}) for i in idx])

    @property
    def dim(self):
        return len(self._rows)

    @property
    def pivots(self):
        return self._pivots

    def vectors(self):
        """Basis rows as sparse dict copies."""
        return [dict(r) for r in self._rows]

    def matrix(self):
        return Matrix._trusted(self.dim, self.ambient_dim, [dict(r) for r in self._rows])

    def reduce(self, vec):
        """Residue of ``vec`` modulo the subspace.

        The residue is zero on every pivot column, so it doubles as the
        coordinates of ``vec`` in the quotient by this subspace with respect to
        the non-pivot coordinates.
        """
        v = dict(vec) if isinstance(vec, dict) else _sparse(vec)
        coeffs = [(v[c], r) for c, r in zip(self._pivots, self._rows) if c in v]
        for a, r in coeffs:
            for j, x in r.items():
                nv = v.get(j, 0) - a * x
                if nv:
                    v[j] = nv
                else:
                    v.pop(j, None)
        return v

    def contains_vector(self, vec):
        return not self.reduce(vec)

    def perp(self):
        """Orthogonal complement under the standard dot product."""
        return kernel(self.matrix())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __le__(self, other):
        return contains(other, self)

    def __ge__(self, other):
        return contains(self, other)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _same_ambient(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def subspace_sum(a, b):
    _same_ambient(a, b)
    return Subspace(a.ambient_dim, _echelon(list(a._rows) + list(b._rows)))


def intersect(a, b):
    _same_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    # (A ∩ B)^⊥ = A^⊥ + B^⊥ for the standard (nondegenerate) form over Q
    return subspace_sum(a.perp(), b.perp()).perp()


def contains(a, b):
    """True iff ``b`` is a subspace of ``a``."""
    _same_ambient(a, b)
    if b.dim > a.dim:
        return False
    return all(not a.reduce(r) for r in b._rows)


def quotient_dim(a, b):
    """dim(a / b); requires ``b ⊆ a``."""
    if not contains(a, b):
        raise NotContained("quotient requires the second subspace to lie in the first")
    return a.dim - b.dim
