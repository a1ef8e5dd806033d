"""Bigraded rational algebras with a split mixed Hodge structure.

A ring is described by its Deligne splitting, i.e. the dimensions of the
pieces ``I^{p,q;l}``, and by sparse structure constants on a global basis.
The basis is ordered lexicographically by ``(l, p, q, intra-piece index)``,
so the unit (the single basis vector of ``I^{0,0;0}``) is basis vector 0.

Structure constants are stored for pairs ``i <= j`` only; the remaining
products follow from graded commutativity ``x*y = (-1)^(|x||y|) y*x``.
"""

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import DimensionMismatch
from .exactla import Matrix, as_rational

__all__ = [
    "PieceKey",
    "DeligneSplitting",
    "Element",
    "HodgeRing",
    "Violation",
    "ValidationReport",
    "validate",
    "multiply",
    "power",
    "hodge_numbers",
    "weight_numbers",
]


class PieceKey(NamedTuple):
    p: int
    q: int
    l: int

    def in_bounds(self, d):
        lo, hi = max(0, self.l - 2 * d), min(self.l, 2 * d)
        return 0 <= self.l <= 4 * d and lo <= self.p <= hi and lo <= self.q <= hi

    @property
    def weight(self):
        return self.p + self.q


def _order(key):
    return (key.l, key.p, key.q)


class DeligneSplitting:
    """Dimensions of the pieces ``I^{p,q;l}`` and the induced global basis."""

    def __init__(self, d, pieces):
        if int(d) != d:
            raise ValueError("d must be an integer")
        self.d = int(d)
        dims = {}
        for key, dim in dict(pieces).items():
            key = PieceKey(*key)
            if dim < 0:
                raise ValueError(f"negative dimension for piece {tuple(key)}")
            if dim:
                dims[key] = dims.get(key, 0) + int(dim)
        self.pieces = {k: dims[k] for k in sorted(dims, key=_order)}
        self.offsets = {}
        self._key_of = []
        n = 0
        for k, dim in self.pieces.items():
            self.offsets[k] = n
            self._key_of.extend([k] * dim)
            n += dim
        self.dim = n

    def __eq__(self, other):
        return isinstance(other, DeligneSplitting) and (self.d, self.pieces) == (other.d, other.pieces)

    def __repr__(self):
        return f"DeligneSplitting(d={self.d}, N={self.dim}, pieces={len(self.pieces)})"

    def piece_dim(self, p, q, l):
        return self.pieces.get(PieceKey(p, q, l), 0)

    def key(self, i):
        """Piece containing basis vector ``i``."""
        return self._key_of[i]

    def degree(self, i):
        return self._key_of[i].l

    def indices(self, p, q, l):
        key = PieceKey(p, q, l)
        start = self.offsets.get(key)
        if start is None:
            return range(0)
        return range(start, start + self.pieces[key])

    def indices_where(self, pred):
        """Global indices of basis vectors whose piece satisfies ``pred(key)``."""
        out = []
        for k, dim in self.pieces.items():
            if pred(k):
                start = self.offsets[k]
                out.extend(range(start, start + dim))
        return out

    def degrees(self):
        return sorted({k.l for k in self.pieces})

    def degree_dim(self, l):
        return sum(dim for k, dim in self.pieces.items() if k.l == l)


@dataclass(frozen=True)
class Element:
    """A rational coefficient vector over the global basis of a ring."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(as_rational(c) for c in self.coefficients))

    @classmethod
    def zero(cls, n):
        return cls((Fraction(0),) * n)

    @classmethod
    def basis(cls, n, i):
        c = [Fraction(0)] * n
        c[i] = Fraction(1)
        return cls(c)

    @classmethod
    def from_sparse(cls, n, entries):
        c = [Fraction(0)] * n
        for i, v in dict(entries).items():
            if not 0 <= i < n:
                raise IndexError(f"basis index {i} out of range for dimension {n}")
            c[i] += as_rational(v)
        return cls(c)

    def __len__(self):
        return len(self.coefficients)

    def sparse(self):
        return {i: c for i, c in enumerate(self.coefficients) if c}

    def support(self):
        return [i for i, c in enumerate(self.coefficients) if c]

    def is_zero(self):
        return not any(self.coefficients)

    def _check(self, other):
        if len(self) != len(other):
            raise DimensionMismatch(f"elements of length {len(self)} and {len(other)}")

    def __add__(self, other):
        self._check(other)
        return Element(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        self._check(other)
        return Element(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return Element(tuple(-a for a in self.coefficients))

    def __rmul__(self, scalar):
        s = as_rational(scalar)
        return Element(tuple(s * a for a in self.coefficients))

    def __repr__(self):
        terms = ", ".join(f"{i}: {c}" for i, c in self.sparse().items())
        return f"Element({{{terms}}}, N={len(self)})"


class HodgeRing:
    """Split model of a Hodge ring.

    ``mult`` maps ``(i, j)`` with ``i <= j`` to a sparse dict ``{k: coeff}``
    holding ``e_i * e_j``.  ``conjugation``, when given, is an ``N x N``
    :class:`Matrix` whose column ``j`` is the image of ``e_j``.
    """

    def __init__(self, splitting, mult, unit=None, conjugation=None, geometric=False):
        self.splitting = splitting
        n = splitting.dim
        table = {}
        for (i, j), coeffs in dict(mult).items():
            if i > j:
                raise ValueError(f"structure constants must have i <= j, got ({i}, {j})")
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"basis pair ({i}, {j}) out of range for dimension {n}")
            row = {}
            for k, v in dict(coeffs).items():
                if not 0 <= k < n:
                    raise IndexError(f"product e_{i}*e_{j} has coordinate {k} out of range")
                v = as_rational(v)
                if v:
                    row[k] = row.get(k, 0) + v
            row = {k: v for k, v in row.items() if v}
            if row:
                table[(i, j)] = row
        self.mult = table
        if unit is None:
            unit = Element.basis(n, 0) if splitting.piece_dim(0, 0, 0) and n else Element.zero(n)
        if len(unit) != n:
            raise DimensionMismatch("unit has the wrong length")
        self.unit = unit
        if conjugation is not None and conjugation.shape != (n, n):
            raise DimensionMismatch(f"conjugation must be {n}x{n}, got {conjugation.shape}")
        self.conjugation = conjugation
        self.geometric = bool(geometric)

        # full (both orders) left-multiplication table: left[i][j] = e_i * e_j
        deg = [splitting.degree(i) for i in range(n)]
        left = defaultdict(dict)
        for (i, j), row in table.items():
            left[i][j] = row
            if i != j:
                if (deg[i] * deg[j]) % 2:
                    left[j][i] = {k: -v for k, v in row.items()}
                else:
                    left[j][i] = row
        self._left = dict(left)
        self._deg = deg

    @property
    def d(self):
        return self.splitting.d

    @property
    def dim(self):
        return self.splitting.dim

    def __repr__(self):
        return f"HodgeRing(d={self.d}, N={self.dim}, products={len(self.mult)})"

    def product(self, i, j):
        """Sparse dict for ``e_i * e_j`` (either order)."""
        return self._left.get(i, {}).get(j, {})

    def nonzero_products(self):
        """Iterate ``(i, j, {k: c})`` over every nonzero basis product, both orders."""
        for i, row in self._left.items():
            for j, prod in row.items():
                yield i, j, prod

    def element(self, entries):
        return Element.from_sparse(self.dim, entries)

    def basis_element(self, i):
        return Element.basis(self.dim, i)

    def _check(self, *xs):
        for x in xs:
            if len(x) != self.dim:
                raise DimensionMismatch(f"element of length {len(x)} in a ring of dimension {self.dim}")

    def sparse_multiply(self, x, y):
        """Product of two sparse dict vectors, returned as a sparse dict."""
        out = {}
        left = self._left
        for i, a in x.items():
            row = left.get(i)
            if not row:
                continue
            for j, b in y.items():
                prod = row.get(j)
                if not prod:
                    continue
                ab = a * b
                for k, c in prod.items():
                    out[k] = out.get(k, 0) + ab * c
        return {k: v for k, v in out.items() if v}

    def operator(self, x):
        """Matrix of left multiplication by ``x`` (column ``j`` is ``x * e_j``)."""
        self._check(x)
        xs = x.sparse()
        cols = [{} for _ in range(self.dim)]
        left = self._left
        for i, a in xs.items():
            row = left.get(i)
            if not row:
                continue
            for j, prod in row.items():
                col = cols[j]
                for k, c in prod.items():
                    col[k] = col.get(k, 0) + a * c
        cols = [{k: v for k, v in col.items() if v} for col in cols]
        return Matrix.from_columns(self.dim, cols)

    def conjugate(self, x):
        if self.conjugation is None:
            return None
        self._check(x)
        return Element.from_sparse(self.dim, self.conjugation.apply(x.sparse()))

    def degree_of(self, x):
        """The single degree ``l`` carrying ``x``, or None if mixed or zero."""
        degs = {self._deg[i] for i in x.support()}
        return degs.pop() if len(degs) == 1 else None


def multiply(r, x, y):
    r._check(x, y)
    return Element.from_sparse(r.dim, r.sparse_multiply(x.sparse(), y.sparse()))


def power(r, x, k):
    if k < 0:
        raise ValueError("power must be non-negative")
    r._check(x)
    acc = r.unit.sparse()
    xs = x.sparse()
    for _ in range(k):
        acc = r.sparse_multiply(acc, xs)
    return Element.from_sparse(r.dim, acc)


def powers(r, x, k):
    """``[x^0, x^1, ..., x^k]`` computed incrementally."""
    r._check(x)
    out = [r.unit]
    acc, xs = r.unit.sparse(), x.sparse()
    for _ in range(k):
        acc = r.sparse_multiply(acc, xs)
        out.append(Element.from_sparse(r.dim, acc))
    return out


def hodge_numbers(r):
    """``{(p, l): dim Gr_F^p H^l}``; missing keys are zero."""
    out = Counter()
    for k, dim in r.splitting.pieces.items():
        out[(k.p, k.l)] += dim
    return out


def weight_numbers(r):
    """``{(k, l): dim Gr^W_k H^l}``; missing keys are zero."""
    out = Counter()
    for key, dim in r.splitting.pieces.items():
        out[(key.weight, key.l)] += dim
    return out


# ---------------------------------------------------------------------------
# validation


class Violation(NamedTuple):
    check: str
    witness: tuple
    message: str


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def names(self):
        return {v.check for v in self.violations}

    def add(self, check, witness, message):
        self.violations.append(Violation(check, tuple(witness), message))


def _product_support_pieces(r, prod):
    return {r.splitting.key(k) for k in prod}


def _associativity(r, report, limit):
    """Compare (e_i e_j) e_k with e_i (e_j e_k) over all triples with a nonzero side.

    Triples are grouped by ``i`` so only one slice is held in memory at a time.
    """
    left = r._left
    producers = defaultdict(list)  # m -> [(j, k, coeff of e_m in e_j e_k)]
    for j, row in left.items():
        for k, prod in row.items():
            for m, c in prod.items():
                producers[m].append((j, k, c))
    bad = 0
    for i in sorted(left):
        row = left[i]
        lhs = defaultdict(dict)
        for j, prod in row.items():
            for m, c in prod.items():
                for k, prod2 in left.get(m, {}).items():
                    acc = lhs[(j, k)]
                    for t, c2 in prod2.items():
                        acc[t] = acc.get(t, 0) + c * c2
        rhs = defaultdict(dict)
        for m, prod2 in row.items():
            for j, k, c in producers.get(m, ()):
                acc = rhs[(j, k)]
                for t, c2 in prod2.items():
                    acc[t] = acc.get(t, 0) + c * c2
        for jk in sorted(set(lhs) | set(rhs)):
            a = {t: v for t, v in lhs.get(jk, {}).items() if v}
            b = {t: v for t, v in rhs.get(jk, {}).items() if v}
            if a != b:
                j, k = jk
                report.add("associativity", (i, j, k), f"(e_{i} e_{j}) e_{k} != e_{i} (e_{j} e_{k})")
                bad += 1
                if bad >= limit:
                    return


def _conjugation_checks(r, report, limit):
    c = r.conjugation
    n = r.dim
    sp = r.splitting
    cols = c.transpose()  # row j of cols is the image of e_j
    for j in range(n):
        key = sp.key(j)
        target = PieceKey(key.q, key.p, key.l)
        for i in cols.row(j):
            if sp.key(i) != target:
                report.add("conjugation pieces", (j, i), f"conjugate of e_{j} in {tuple(key)} has a component in {tuple(sp.key(i))}")
                break
    if c @ c != Matrix.identity(n):
        report.add("conjugation involution", (), "conjugation does not square to the identity")
    # c(e_i e_j) == c(e_i) c(e_j)
    img = [cols.row(j) for j in range(n)]
    lhs = {}
    for i, j, prod in r.nonzero_products():
        acc = {}
        for k, v in prod.items():
            for t, w in img[k].items():
                acc[t] = acc.get(t, 0) + v * w
        lhs[(i, j)] = {t: x for t, x in acc.items() if x}
    # preimage lists: rows of c, i.e. which e_i have a component along e_a
    rows = [c.row(a) for a in range(n)]
    rhs = defaultdict(dict)
    for a, b, prod in r.nonzero_products():
        for i, cai in rows[a].items():
            for j, cbj in rows[b].items():
                acc = rhs[(i, j)]
                s = cai * cbj
                for t, v in prod.items():
                    acc[t] = acc.get(t, 0) + s * v
    bad = 0
    for key in sorted(set(lhs) | set(rhs)):
        a = {t: v for t, v in lhs.get(key, {}).items() if v}
        b = {t: v for t, v in rhs.get(key, {}).items() if v}
        if a != b:
            report.add("conjugation multiplicative", key, f"conj(e_{key[0]} e_{key[1]}) != conj(e_{key[0]}) conj(e_{key[1]})")
            bad += 1
            if bad >= limit:
                break
    if r.unit.sparse() and r.conjugate(r.unit) != r.unit:
        report.add("conjugation unit", (0,), "conjugation does not fix the unit")


def validate(r, limit=20):
    """Check every Hodge ring axiom the split model can express.

    Violations are collected rather than raised; at most ``limit`` witnesses
    are recorded per check.
    """
    report = ValidationReport()
    sp = r.splitting
    d, n = sp.d, sp.dim

    if d < 1:
        report.add("d", (d,), "d must be at least 1")
    for key in sp.pieces:
        if not key.in_bounds(d):
            report.add("bounds", tuple(key), f"piece I^{{{key.p},{key.q};{key.l}}} violates the degree/Hodge-index bounds for d={d}")
    if sp.piece_dim(0, 0, 0) != 1:
        report.add("unit piece", (0, 0, 0), f"dim I^{{0,0;0}} = {sp.piece_dim(0, 0, 0)}, expected 1")
    else:
        e0 = Element.basis(n, sp.offsets[PieceKey(0, 0, 0)])
        if r.unit != e0:
            report.add("unit", tuple(r.unit.support()), "unit is not the basis vector of I^{0,0;0}")
    if n and not report.names() & {"unit piece", "unit"}:
        u = r.unit.sparse()
        bad = 0
        for j in range(n):
            ej = {j: Fraction(1)}
            if r.sparse_multiply(u, ej) != ej:
                report.add("unit law", (j,), f"1 * e_{j} != e_{j}")
                bad += 1
                if bad >= limit:
                    break

    bad = 0
    for (i, j), prod in sorted(r.mult.items()):
        ki, kj = sp.key(i), sp.key(j)
        target = PieceKey(ki.p + kj.p, ki.q + kj.q, ki.l + kj.l)
        pieces = _product_support_pieces(r, prod)
        if pieces != {target}:
            report.add("bidegree", (i, j), f"e_{i} * e_{j} should lie in {tuple(target)}, found {sorted(tuple(p) for p in pieces)}")
            bad += 1
            if bad >= limit:
                break

    bad = 0
    for (i, j) in sorted(r.mult):
        if i == j and sp.degree(i) % 2:
            report.add("graded commutativity", (i, i), f"e_{i} has odd degree but e_{i}^2 != 0")
            bad += 1
            if bad >= limit:
                break

    _associativity(r, report, limit)

    if r.conjugation is not None:
        _conjugation_checks(r, report, limit)
        for key, dim in sp.pieces.items():
            if sp.piece_dim(key.q, key.p, key.l) != dim:
                report.add("hodge symmetry", tuple(key), "dim I^{p,q;l} != dim I^{q,p;l}")
    return report
