"""Symplectic elements, pure weight, and the Lefschetz-type theorems they imply.

Every check reduces to ranks of blocks of a multiplication operator between
spans of basis vectors, so the verdicts are exact.
"""

import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    NoConjugation,
    NotGeometric,
    NotPureWeight,
    NotPureWeight1,
    NotSymplectic,
    TheoremContradiction,
)
from .exactla import Matrix
from .filt import check_f2h2
from .ring import Element, hodge_numbers, multiply, power, powers, weight_numbers

__all__ = [
    "SymplecticVerdict",
    "ChlWitness",
    "NilpotencyTable",
    "CheckReport",
    "is_symplectic",
    "pure_weight",
    "weight_invariance_check",
    "mixedis_check",
    "mixedis_triples",
    "mixedis_failures",
    "is_hodge_tate",
    "curious_hl",
    "chl_maps_bijective",
    "chl_agreement",
    "chl_iff_pure_weight2_check",
    "weight_vanishing_check_w1",
    "lower_bounds_check",
    "nilpotency_indices",
    "nagai_pattern_check",
    "geometric_vanishing_check",
    "power_law_check",
    "hodge_symmetry_check",
]


@dataclass(frozen=True)
class SymplecticVerdict:
    symplectic: bool
    first_failure: Optional[tuple] = None  # (m, l)

    def __bool__(self):
        return self.symplectic


@dataclass(frozen=True)
class ChlWitness:
    alpha: Element
    trials_used: int
    seed: int


@dataclass(frozen=True)
class NilpotencyTable:
    nu: dict  # degree -> top weight minus degree, only for nonzero H^l

    def __getitem__(self, l):
        return self.nu[l]

    def get(self, l, default=None):
        return self.nu.get(l, default)


@dataclass
class CheckReport:
    name: str
    ok: Optional[bool]
    details: dict = field(default_factory=dict)
    skipped_reason: Optional[str] = None

    @classmethod
    def skipped(cls, name, reason):
        return cls(name, None, {}, reason)


def _bijective(op, src, tgt):
    """Is the block of ``op`` from span(src) to span(tgt) an isomorphism?"""
    if len(src) != len(tgt):
        return False
    if not src:
        return True
    return op.submatrix(tgt, src).rank() == len(src)


def _degree_blocks(r, pred):
    """{l: [indices in degree l whose piece satisfies pred(key)]}"""
    out = {}
    for i in range(r.dim):
        key = r.splitting.key(i)
        if pred(key):
            out.setdefault(key.l, []).append(i)
    return out


# ---------------------------------------------------------------------------
# symplectic elements


def is_symplectic(r, sigma):
    """Does ``sigma^(d-m)`` map ``Gr_F^m H^l`` isomorphically onto ``Gr_F^(2d-m) H^(2d-2m+l)``
    for every ``0 <= m <= d`` and every ``l``?"""
    check_f2h2(r, sigma)
    if sigma.is_zero():
        return SymplecticVerdict(False, None)
    d = r.d
    sp = r.splitting
    pw = powers(r, sigma, d)
    for m in range(0, d + 1):
        op = r.operator(pw[d - m])
        for l in range(0, 4 * d + 1):
            src = sp.indices_where(lambda k: k.l == l and k.p == m)
            tgt = sp.indices_where(lambda k: k.l == l + 2 * (d - m) and k.p == 2 * d - m)
            if not _bijective(op, src, tgt):
                return SymplecticVerdict(False, (m, l))
    return SymplecticVerdict(True, None)


def pure_weight(r, sigma):
    """``w`` if ``sigma`` is a nonzero element of the single piece ``(2, w, 2)``, else None."""
    r._check(sigma)
    keys = {r.splitting.key(i) for i in sigma.support()}
    if len(keys) != 1:
        return None
    (key,) = keys
    if key.l != 2 or key.p != 2:
        return None
    return key.q


def _require_symplectic_pure(r, sigma, weights=None, exc=NotPureWeight):
    if not is_symplectic(r, sigma):
        raise NotSymplectic("element is not symplectic")
    w = pure_weight(r, sigma)
    if w is None or (weights is not None and w not in weights):
        want = "" if weights is None else f" {sorted(weights)}"
        raise exc(f"element is not of pure weight{want} (pure_weight={w})")
    return w


def weight_invariance_check(r, sigma1, sigma2):
    """Two symplectic elements of pure weight must have the same weight."""
    w1 = _require_symplectic_pure(r, sigma1)
    w2 = _require_symplectic_pure(r, sigma2)
    if w1 != w2:
        raise TheoremContradiction(f"symplectic elements of pure weights {w1} and {w2} in one ring")
    return True


def mixedis_triples(r):
    """All ``(m, s, l)`` with ``0 <= m <= d`` for which ``I^{m,s;l}`` is an admissible piece."""
    d = r.d
    out = []
    for l in range(0, 4 * d + 1):
        lo, hi = max(0, l - 2 * d), min(l, 2 * d)
        for m in range(max(lo, 0), min(hi, d) + 1):
            for s in range(lo, hi + 1):
                out.append((m, s, l))
    return out


def _mixedis(r, ops, w, m, s, l):
    d = r.d
    sp = r.splitting
    src = list(sp.indices(m, s, l))
    tgt = list(sp.indices(2 * d - m, s + w * (d - m), l + 2 * (d - m)))
    return _bijective(ops[d - m], src, tgt)


def mixedis_check(r, sigma, m, s, l):
    """``sigma^(d-m)`` maps ``I^{m,s;l}`` isomorphically onto ``I^{2d-m, s+w(d-m); l+2(d-m)}``."""
    w = _require_symplectic_pure(r, sigma)
    if not 0 <= m <= r.d:
        raise ValueError(f"m must lie in [0, d], got {m}")
    k = r.d - m
    ops = {k: r.operator(power(r, sigma, k))}
    return _mixedis(r, ops, w, m, s, l)


def mixedis_failures(r, sigma, triples=None):
    """Every ``(m, s, l)`` (default: all admissible) for which the piecewise map is not bijective."""
    w = _require_symplectic_pure(r, sigma)
    pw = powers(r, sigma, r.d)
    ops = {k: r.operator(pw[k]) for k in range(r.d + 1)}
    if triples is None:
        triples = mixedis_triples(r)
    return [t for t in triples if not _mixedis(r, ops, w, *t)]


# ---------------------------------------------------------------------------
# Hodge-Tate rings and curious hard Lefschetz


def is_hodge_tate(r):
    return all(k.p == k.q for k in r.splitting.pieces)


def chl_maps_bijective(r, alpha):
    """Does ``alpha^(d-m)`` map ``Gr^W_2m H^l`` onto ``Gr^W_(4d-2m) H^(l+2(d-m))`` for all m, l?"""
    d = r.d
    sp = r.splitting
    pw = powers(r, alpha, d)
    for m in range(0, d + 1):
        op = r.operator(pw[d - m])
        for l in range(0, 4 * d + 1):
            src = sp.indices_where(lambda k: k.l == l and k.weight == 2 * m)
            tgt = sp.indices_where(lambda k: k.l == l + 2 * (d - m) and k.weight == 4 * d - 2 * m)
            if not _bijective(op, src, tgt):
                return False
    return True


def curious_hl(r, trials=32, seed=0, coeff_bound=10, sigma=None):
    """Search for a class in ``I^{2,2;2}`` with the curious hard Lefschetz property.

    Returns None straight away for rings that are not Hodge-Tate.  If ``sigma``
    lies in ``I^{2,2;2}`` it is tried first and counts as one of the
    ``trials``; the remaining candidates have integer coefficients drawn
    uniformly from ``[-coeff_bound, coeff_bound]`` by ``random.Random(seed)``.
    """
    if not is_hodge_tate(r):
        return None
    sp = r.splitting
    slots = list(sp.indices(2, 2, 2))
    rng = random.Random(seed)
    candidates = []
    if sigma is not None and pure_weight(r, sigma) == 2:
        candidates.append(sigma)
    used = 0
    while used < trials:
        if candidates:
            alpha = candidates.pop()
        else:
            alpha = r.element({i: rng.randint(-coeff_bound, coeff_bound) for i in slots})
        used += 1
        if alpha.is_zero():
            continue
        if chl_maps_bijective(r, alpha):
            return ChlWitness(alpha, used, seed)
    return None


def chl_agreement(pure_weight2, hodge_tate, witness_found):
    """Agreement of the three predicates on a symplectic ring; raise if they differ."""
    chl = hodge_tate and witness_found
    if pure_weight2 != chl or pure_weight2 != hodge_tate:
        raise TheoremContradiction(
            f"pure weight 2: {pure_weight2}, Hodge-Tate: {hodge_tate}, "
            f"curious Lefschetz witness found: {witness_found}"
        )
    return True


def chl_iff_pure_weight2_check(r, sigma, trials=32, seed=0, coeff_bound=10):
    """Pure weight 2 holds exactly when the ring is Hodge-Tate with a curious Lefschetz class.

    Raises TheoremContradiction if the two sides disagree.
    """
    if not is_symplectic(r, sigma):
        raise NotSymplectic("element is not symplectic")
    witness = curious_hl(r, trials, seed, coeff_bound, sigma=sigma)
    return chl_agreement(pure_weight(r, sigma) == 2, is_hodge_tate(r), witness is not None)


# ---------------------------------------------------------------------------
# pure weight 1


def weight_vanishing_check_w1(r, sigma):
    """Top-weight vanishing for pure weight 1.

    Part (1) is checked in the strict form ``Gr^W_j H^l = 0`` for ``j > d + l``
    and ``d <= l <= 2d``; whether the boundary ``j = d + l`` is occupied is
    reported separately.  Part (2), ``Gr^W_j H^l = 0`` for ``d <= l < 2d`` and
    ``j >= d + l - 1``, is checked only when ``dim Gr_F^l H^l`` is 1 for even
    and 0 for odd ``l <= 2d``.
    """
    _require_symplectic_pure(r, sigma, {1}, NotPureWeight1)
    d = r.d
    W = weight_numbers(r)
    F = hodge_numbers(r)
    nu = nilpotency_indices(r)
    top = {l: nu[l] + l for l in range(d, 2 * d + 1) if l in nu.nu}
    strict_bad = [(j, l) for (j, l), n in W.items() if n and d <= l <= 2 * d and j > d + l]
    boundary = {l: W[(d + l, l)] for l in range(d, 2 * d + 1)}
    profile = all(F[(l, l)] == (1 if l % 2 == 0 else 0) for l in range(0, 2 * d + 1))
    details = {
        "strict_violations": sorted(strict_bad),
        "boundary_dims": boundary,
        "top_weights": top,
        "part2_hypothesis": profile,
    }
    ok = not strict_bad
    if profile:
        bad2 = sorted((j, l) for (j, l), n in W.items() if n and d <= l < 2 * d and j >= d + l - 1)
        details["part2_violations"] = bad2
        ok = ok and not bad2
    return CheckReport("weight_vanishing_w1", ok, details)


def lower_bounds_check(r, sigma):
    """Lower bounds on the pieces reached by monomials in ``sigma`` and its conjugate.

    For ``0 <= i <= d`` and ``j + k = 3i`` with ``j, k >= i``, the monomial
    ``sigma^(j-i) conj(sigma)^(k-i)`` must be a nonzero element of
    ``I^{j,k;2i}``.  The ``i + 1`` monomials of degree ``2i`` are also checked
    for linear independence; that gives ``dim Gr^W_3i H^2i >= i + 1`` and is
    part of the verdict when ``dim Gr^W_3 H^2 = 2``.
    """
    _require_symplectic_pure(r, sigma, {1}, NotPureWeight1)
    if r.conjugation is None:
        raise NoConjugation("ring carries no conjugation, cannot form conj(sigma)")
    d = r.d
    sp = r.splitting
    sbar = r.conjugate(sigma)
    if {sp.key(i) for i in sbar.support()} != {(1, 2, 2)}:
        return CheckReport("lower_bounds", False, {"failures": [("conjugate", "not in I^{1,2;2}")]})
    sp_pows = powers(r, sigma, d)
    sb_pows = powers(r, sbar, d)
    W = weight_numbers(r)
    injell_applicable = W[(3, 2)] == 2
    pieces = {}
    ranks = {}
    failures = []
    for i in range(0, d + 1):
        monomials = []
        for j in range(i, 2 * i + 1):
            k = 3 * i - j
            mono = multiply(r, sp_pows[j - i], sb_pows[k - i])
            in_piece = {sp.key(t) for t in mono.support()} == {(j, k, 2 * i)}
            dim = sp.piece_dim(j, k, 2 * i)
            pieces[(j, k, 2 * i)] = dim
            if mono.is_zero() or not in_piece or dim < 1:
                failures.append(("piece", (j, k, 2 * i)))
            monomials.append(mono.sparse())
        rank = Matrix(len(monomials), r.dim, monomials).rank()
        ranks[i] = {"monomial_rank": rank, "gr_w_dim": W[(3 * i, 2 * i)]}
        if injell_applicable and (rank < i + 1 or W[(3 * i, 2 * i)] < i + 1):
            failures.append(("injell", i))
    details = {"piece_dims": pieces, "monomials": ranks, "injell_applicable": injell_applicable, "failures": failures}
    return CheckReport("lower_bounds", not failures, details)


# ---------------------------------------------------------------------------
# nilpotency indices and vanishing


def nilpotency_indices(r):
    """``nu_l`` = highest weight ``k`` with ``Gr^W_k H^l != 0``, minus ``l``."""
    top = {}
    for key, dim in r.splitting.pieces.items():
        if dim:
            top[key.l] = max(top.get(key.l, key.weight), key.weight)
    return NilpotencyTable({l: top[l] - l for l in sorted(top)})


def nagai_pattern_check(r, sigma):
    """Compare observed ``nu`` with the patterns expected for pure weight 2 and 1.

    Weight 2 expects ``nu_2i = 2i`` for ``i <= d``.  Weight 1 expects
    ``nu_2(d-1) = d-1``, ``nu_2d = d`` and ``nu_4 = 2``; those equalities are
    only asserted for rings with ``nu_2 = 1`` and the even/odd profile
    ``dim Gr_F^l H^l = 1, 0``, and the bound ``nu_2k <= min(d-1, k-1)`` is
    reported alongside without entering the verdict.
    """
    w = _require_symplectic_pure(r, sigma, {1, 2})
    d = r.d
    nu = nilpotency_indices(r)
    if w == 2:
        expected = {2 * i: 2 * i for i in range(0, d + 1)}
        hypotheses = True
    else:
        expected = {2 * (d - 1): d - 1, 2 * d: d}
        if d >= 2:
            expected[4] = 2
        F = hodge_numbers(r)
        profile = all(F[(l, l)] == (1 if l % 2 == 0 else 0) for l in range(0, 2 * d + 1))
        hypotheses = nu.get(2) == 1 and profile
    observed = {l: nu.get(l) for l in expected}
    matches = all(observed[l] == v for l, v in expected.items())
    details = {"weight": w, "expected": expected, "observed": observed, "matches": matches, "hypotheses_met": hypotheses}
    if w == 1:
        details["bound"] = {
            2 * k: {"observed": nu.get(2 * k), "bound": min(d - 1, k - 1)} for k in range(0, 2 * d + 1) if 2 * k in nu.nu
        }
    return CheckReport("nagai_pattern", matches or not hypotheses, details)


def geometric_vanishing_check(r, sigma):
    """Vanishing of Hodge numbers for rings flagged as cohomology of a smooth variety."""
    if not r.geometric:
        raise NotGeometric("ring is not flagged geometric")
    W = weight_numbers(r)
    low = sorted((j, l) for (j, l), n in W.items() if n and j < l)
    if low:
        raise NotGeometric(f"ring is flagged geometric but Gr^W_j H^l != 0 for j < l at {low[:5]}")
    w = _require_symplectic_pure(r, sigma, {1, 2})
    d = r.d
    F = hodge_numbers(r)
    if w == 2:
        bad_f = sorted((m, l) for (m, l), n in F.items() if n and 2 * m < l)
        bad_h = sorted({l for (_, l), n in F.items() if n and l > 2 * d})
        details = {"weight": 2, "hodge_below_half": bad_f, "nonzero_above_2d": bad_h}
        bad = bad_f or bad_h
    else:
        bad_f = sorted((p, l) for (p, l), n in F.items() if n and p < l - d)
        details = {"weight": 1, "hodge_below_l_minus_d": bad_f}
        bad = bad_f
    return CheckReport("geometric_vanishing", not bad, details)


def power_law_check(r, sigma):
    """``sigma^d != 0`` and ``sigma^(d+1) = 0``."""
    pw = powers(r, sigma, r.d + 1)
    top_nonzero = not pw[r.d].is_zero()
    next_zero = pw[r.d + 1].is_zero()
    return CheckReport("sigma_powers", top_nonzero and next_zero,
                       {"sigma^d_nonzero": top_nonzero, "sigma^(d+1)_zero": next_zero})


def hodge_symmetry_check(r):
    """``dim Gr_F^m H^l == dim Gr_F^(2d-m) H^(2d-2m+l)`` for ``0 <= m <= d`` and all ``l``."""
    d = r.d
    F = hodge_numbers(r)
    bad = []
    for m in range(0, d + 1):
        for l in range(0, 4 * d + 1):
            if F[(m, l)] != F[(2 * d - m, l + 2 * (d - m))]:
                bad.append((m, l))
    return CheckReport("hodge_symmetry", not bad, {"mismatches": bad})
