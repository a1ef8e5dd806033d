"""Example rings: torus (cluster) rings, curve blocks and Kunneth products."""

from fractions import Fraction
from itertools import combinations

from .errors import InvalidFactor, NotAlternating, OddSize
from .exactla import Matrix, as_rational
from .ring import DeligneSplitting, Element, HodgeRing, PieceKey, validate

__all__ = [
    "shuffle_sign",
    "torus_ring",
    "standard_form",
    "elliptic_block",
    "punctured_line_block",
    "point_ring",
    "kunneth",
    "tensor_element",
    "elliptic_weight1_ring",
]


def shuffle_sign(s, t):
    """Sign of the shuffle sorting the concatenation of sorted tuples ``s``, ``t``.

    Zero when they overlap.
    """
    if set(s) & set(t):
        return 0
    inversions = sum(1 for a in s for b in t if a > b)
    return -1 if inversions % 2 else 1


def _as_square(A):
    if isinstance(A, Matrix):
        rows = A.to_dense()
    else:
        rows = [[as_rational(x) for x in row] for row in A]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotAlternating("matrix is not square")
    return rows


def standard_form(d):
    """The block-diagonal alternating matrix with ``d`` copies of [[0,1],[-1,0]]."""
    A = [[0] * (2 * d) for _ in range(2 * d)]
    for k in range(d):
        A[2 * k][2 * k + 1] = 1
        A[2 * k + 1][2 * k] = -1
    return A


def torus_ring(A, geometric=True):
    """Cohomology ring of a 2d-dimensional torus with the 2-form given by ``A``.

    Returns ``(ring, sigma)``.  ``H^l`` is the exterior power on generators
    ``e_1..e_2d``, each of type ``(1,1)``; the basis of ``H^l`` is the size-l
    subsets in lexicographic order and ``sigma = sum_{i<j} a_ij e_i e_j``.
    """
    rows = _as_square(A)
    n = len(rows)
    if n == 0 or n % 2:
        raise OddSize(f"alternating matrix must have positive even size, got {n}")
    for i in range(n):
        if rows[i][i]:
            raise NotAlternating(f"nonzero diagonal entry at {i}")
        for j in range(i + 1, n):
            if rows[i][j] != -rows[j][i]:
                raise NotAlternating(f"entries ({i},{j}) and ({j},{i}) are not negatives")
    d = n // 2

    subsets = []
    index = {}
    pieces = {}
    for l in range(n + 1):
        combos = list(combinations(range(n), l))
        pieces[(l, l, l)] = len(combos)
        for s in combos:
            index[s] = len(subsets)
            subsets.append(s)
    splitting = DeligneSplitting(d, pieces)
    assert [splitting.key(i) for i in range(len(subsets))] == [PieceKey(len(s), len(s), len(s)) for s in subsets]

    mult = {}
    for i, s in enumerate(subsets):
        rest = [x for x in range(n) if x not in s]
        for l in range(len(rest) + 1):
            for t in combinations(rest, l):
                j = index[t]
                if i <= j:
                    mult[(i, j)] = {index[tuple(sorted(s + t))]: shuffle_sign(s, t)}
    N = len(subsets)
    ring = HodgeRing(splitting, mult, conjugation=Matrix.identity(N), geometric=geometric)
    sigma = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j]:
                sigma[index[(i, j)]] = rows[i][j]
    return ring, Element.from_sparse(N, sigma)


def elliptic_block(geometric=True):
    """``H^*(E)`` split over Q with a symplectic basis ``a`` (1,0), ``b`` (0,1).

    Basis order: 1, b, a, p (lexicographic in (l, p, q)).  ``a*b = p``;
    conjugation swaps a and b and therefore sends p to -p.
    """
    sp = DeligneSplitting(1, {(0, 0, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1, (1, 1, 2): 1})
    one, b, a, p = 0, 1, 2, 3
    mult = {(one, j): {j: 1} for j in range(4)}
    mult[(b, a)] = {p: -1}  # b*a = -a*b = -p
    conj = Matrix.from_columns(4, [{one: 1}, {a: 1}, {b: 1}, {p: -1}])
    return HodgeRing(sp, mult, conjugation=conj, geometric=geometric)


def punctured_line_block(geometric=True):
    """``H^*(C^*)``: basis 1, t with t of type (1,1) and t*t = 0."""
    sp = DeligneSplitting(1, {(0, 0, 0): 1, (1, 1, 1): 1})
    mult = {(0, 0): {0: 1}, (0, 1): {1: 1}}
    return HodgeRing(sp, mult, conjugation=Matrix.identity(2), geometric=geometric)


def point_ring(d=1):
    """The ring Q in degree 0."""
    sp = DeligneSplitting(d, {(0, 0, 0): 1})
    return HodgeRing(sp, {(0, 0): {0: 1}}, conjugation=Matrix.identity(1), geometric=True)


def _pair_layout(r1, r2):
    """Product pieces and the index of each factor pair ``(i1, i2)``.

    Inside a product piece, pairs are ordered lexicographically by ``(i1, i2)``.
    """
    s1, s2 = r1.splitting, r2.splitting
    by_piece = {}
    for i1 in range(s1.dim):
        k1 = s1.key(i1)
        for i2 in range(s2.dim):
            k2 = s2.key(i2)
            key = PieceKey(k1.p + k2.p, k1.q + k2.q, k1.l + k2.l)
            by_piece.setdefault(key, []).append((i1, i2))
    return by_piece


def kunneth(r1, r2, d=None, check=True):
    """Tensor product ring with the Koszul sign rule.

    ``(x1 ⊗ y1)(x2 ⊗ y2) = (-1)^(|y1||x2|) x1 x2 ⊗ y1 y2``.  ``d`` defaults to
    ``d1 + d2``; pass it explicitly when a factor stands for half of a
    symplectic pair (the curve blocks).
    """
    for r in (r1, r2):
        if r.d < 1:
            raise InvalidFactor("factor has no declared d >= 1")
        if check:
            rep = validate(r)
            if not rep.passed:
                raise InvalidFactor(f"factor fails validation: {rep.violations[0].message}")
    if d is None:
        d = r1.d + r2.d
    by_piece = _pair_layout(r1, r2)
    splitting = DeligneSplitting(d, {k: len(v) for k, v in by_piece.items()})
    index = {}
    for key in splitting.pieces:
        start = splitting.offsets[key]
        for n, pair in enumerate(by_piece[key]):
            index[pair] = start + n

    deg1 = [r1.splitting.degree(i) for i in range(r1.dim)]
    deg2 = [r2.splitting.degree(i) for i in range(r2.dim)]
    mult = {}
    prods2 = list(r2.nonzero_products())
    for i1, j1, p1 in r1.nonzero_products():
        for i2, j2, p2 in prods2:
            I, J = index[(i1, i2)], index[(j1, j2)]
            if I > J:
                continue
            sign = -1 if (deg2[i2] * deg1[j1]) % 2 else 1
            out = {}
            for k1, c1 in p1.items():
                for k2, c2 in p2.items():
                    out[index[(k1, k2)]] = sign * c1 * c2
            mult[(I, J)] = out

    conj = None
    if r1.conjugation is not None and r2.conjugation is not None:
        c1, c2 = r1.conjugation.transpose(), r2.conjugation.transpose()
        cols = [None] * splitting.dim
        for (i1, i2), I in index.items():
            col = {}
            for k1, a in c1.row(i1).items():
                for k2, b in c2.row(i2).items():
                    col[index[(k1, k2)]] = a * b
            cols[I] = col
        conj = Matrix.from_columns(splitting.dim, cols)

    return HodgeRing(splitting, mult, conjugation=conj, geometric=r1.geometric and r2.geometric)


def tensor_element(r1, r2, x, y):
    """``x ⊗ y`` expressed in the basis of ``kunneth(r1, r2)``."""
    by_piece = _pair_layout(r1, r2)
    index = {}
    n = 0
    for key in sorted(by_piece, key=lambda k: (k.l, k.p, k.q)):
        for pair in by_piece[key]:
            index[pair] = n
            n += 1
    out = {}
    for i1, a in x.sparse().items():
        for i2, b in y.sparse().items():
            out[index[(i1, i2)]] = a * b
    return Element.from_sparse(n, out)


def elliptic_weight1_ring(n):
    """n-fold power of ``E x C^*`` with ``sigma`` the sum of ``a ⊗ t`` over factors.

    Returns ``(ring, sigma)`` with ``d = n``; ``sigma`` lies in ``I^{2,1;2}``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    E, C = elliptic_block(), punctured_line_block()
    base = kunneth(E, C, d=1)
    a = E.basis_element(2)
    t = C.basis_element(1)
    sigma1 = tensor_element(E, C, a, t)
    ring, sigma = base, sigma1
    for _ in range(n - 1):
        new = kunneth(ring, base, check=False)
        sigma = tensor_element(ring, base, sigma, base.unit) + tensor_element(ring, base, ring.unit, sigma1)
        ring = new
    return ring, sigma
