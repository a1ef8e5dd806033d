"""Hodge, weight and sigma-reconstructed filtrations on the total space of a ring."""

from dataclasses import dataclass

from .errors import NotDegreeTwo, NotInF2H2, ShapeMismatch
from .exactla import Matrix, Subspace, kernel
from .ring import powers

__all__ = [
    "Filtration",
    "hodge_filtration",
    "weight_filtration",
    "g_sigma",
    "filtrations_equal",
    "reconstruct_check",
]

DESCENDING = "descending"
ASCENDING = "ascending"


@dataclass(frozen=True)
class Filtration:
    """Chain of subspaces indexed by consecutive integers.

    Outside the stored index range a filtration is extended by its first and
    last steps.  ``nested`` records whether the chain actually is monotone;
    Hodge and weight filtrations always are, a filtration built from a
    degenerate element may not be.
    """

    direction: str
    steps: tuple  # ((index, Subspace), ...), indices strictly increasing

    def __post_init__(self):
        if self.direction not in (DESCENDING, ASCENDING):
            raise ValueError(f"unknown direction {self.direction!r}")
        idx = [i for i, _ in self.steps]
        if not idx or any(b != a + 1 for a, b in zip(idx, idx[1:])):
            raise ValueError("filtration indices must be consecutive integers")
        dims = {s.ambient_dim for _, s in self.steps}
        if len(dims) != 1:
            raise ValueError("filtration steps live in different ambient spaces")

    @property
    def ambient_dim(self):
        return self.steps[0][1].ambient_dim

    @property
    def indices(self):
        return [i for i, _ in self.steps]

    def at(self, index):
        lo, hi = self.steps[0][0], self.steps[-1][0]
        index = min(max(index, lo), hi)
        return self.steps[index - lo][1]

    __getitem__ = at

    @property
    def nested(self):
        pairs = zip(self.steps, self.steps[1:])
        if self.direction == DESCENDING:
            return all(b <= a for (_, a), (_, b) in pairs)
        return all(a <= b for (_, a), (_, b) in pairs)

    def dims(self):
        return {i: s.dim for i, s in self.steps}


def hodge_filtration(r):
    """``F^m`` = span of basis vectors with Hodge index ``p >= m``, for m = 0..2d+1."""
    sp, n = r.splitting, r.dim
    top = max([2 * r.d] + [k.p for k in sp.pieces])
    steps = []
    for m in range(0, top + 2):
        steps.append((m, Subspace.coordinate(n, sp.indices_where(lambda k: k.p >= m))))
    return Filtration(DESCENDING, tuple(steps))


def weight_filtration(r):
    """``W_k`` = span of basis vectors with ``p + q <= k``, for k = -1..max weight."""
    sp, n = r.splitting, r.dim
    top = max([0] + [k.weight for k in sp.pieces])
    steps = []
    for k in range(-1, top + 1):
        steps.append((k, Subspace.coordinate(n, sp.indices_where(lambda key: key.weight <= k))))
    return Filtration(ASCENDING, tuple(steps))


def _check_degree_two(r, sigma):
    r._check(sigma)
    sp = r.splitting
    bad = [i for i in sigma.support() if sp.degree(i) != 2]
    if bad:
        raise NotDegreeTwo(f"element has support outside degree 2 (basis indices {bad[:5]})")


def _images(op_t, vectors):
    """Apply an operator, given by its transpose (row j = image of e_j), to sparse vectors."""
    out = []
    for v in vectors:
        acc = {}
        for j, a in v.items():
            for i, c in op_t.row(j).items():
                acc[i] = acc.get(i, 0) + a * c
        out.append({i: x for i, x in acc.items() if x})
    return out


def g_sigma(r, sigma):
    """The filtration reconstructed from kernels and images of powers of ``sigma``.

    ``G^1 = ker sigma^d``, ``G^{2d} = im sigma^d`` and for ``m = 1..d-1``

    * ``G^{m+1} = {v in G^m : sigma^(d-m) v in G^{2d-m+1}}``
    * ``G^{2d-m} = sigma^(d-m) G^m + G^{2d-m+1}``

    (at ``m = d`` the recursion would define ``G^{d+1}`` and ``G^d`` in terms of
    each other, so it stops at ``d - 1``).  Boundary steps ``G^0 = H`` and
    ``G^{2d+1} = 0`` are added.  The quotient by ``G^{2d-m+1}`` is taken in the
    coordinates that are not pivots of its echelon basis.
    """
    _check_degree_two(r, sigma)
    d, n = r.d, r.dim
    pw = powers(r, sigma, d)
    ops_t = {k: r.operator(pw[k]).transpose() for k in range(1, d + 1)}

    G = {0: Subspace.full(n), 2 * d + 1: Subspace.zero(n)}
    top = r.operator(pw[d])
    G[1] = kernel(top)
    G[2 * d] = Subspace.span(n, _images(ops_t[d], [{j: 1} for j in range(n)]))
    for m in range(1, d):
        k = d - m
        basis = G[m].vectors()
        imgs = _images(ops_t[k], basis)
        upper = G[2 * d - m + 1]
        residues = [upper.reduce(y) for y in imgs]
        coeff_space = kernel(Matrix.from_columns(n, residues))
        combos = []
        for alpha in coeff_space.vectors():
            v = {}
            for b, a in alpha.items():
                for c, x in basis[b].items():
                    v[c] = v.get(c, 0) + a * x
            combos.append(v)
        G[m + 1] = Subspace.span(n, combos)
        G[2 * d - m] = Subspace.span(n, imgs + upper.vectors())
    steps = tuple((i, G[i]) for i in range(0, 2 * d + 2))
    return Filtration(DESCENDING, steps)


def filtrations_equal(f1, f2):
    """Stepwise equality of canonical subspaces over the union of index ranges."""
    if f1.direction != f2.direction or f1.ambient_dim != f2.ambient_dim:
        raise ShapeMismatch(
            f"cannot compare a {f1.direction} filtration on Q^{f1.ambient_dim} "
            f"with a {f2.direction} filtration on Q^{f2.ambient_dim}"
        )
    lo = min(f1.indices[0], f2.indices[0])
    hi = max(f1.indices[-1], f2.indices[-1])
    return all(f1.at(i) == f2.at(i) for i in range(lo, hi + 1))


def check_f2h2(r, sigma):
    r._check(sigma)
    sp = r.splitting
    bad = [i for i in sigma.support() if sp.key(i).l != 2 or sp.key(i).p != 2]
    if bad:
        raise NotInF2H2(f"element has support outside the pieces (2, q, 2) (basis indices {bad[:5]})")


def reconstruct_check(r, sigma):
    """True iff the sigma-reconstructed filtration equals the Hodge filtration."""
    check_f2h2(r, sigma)
    return filtrations_equal(g_sigma(r, sigma), hodge_filtration(r))
