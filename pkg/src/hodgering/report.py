"""Verification reports and text rendering of Hodge diamonds and weight tables."""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import NoConjugation, NotGeometric, NotInF2H2
from .filt import reconstruct_check
from .lefschetz import (
    chl_agreement,
    curious_hl,
    geometric_vanishing_check,
    hodge_symmetry_check,
    is_hodge_tate,
    is_symplectic,
    lower_bounds_check,
    nagai_pattern_check,
    nilpotency_indices,
    power_law_check,
    pure_weight,
    weight_vanishing_check_w1,
)
from .ring import hodge_numbers, validate, weight_numbers

__all__ = ["Check", "Report", "verify", "hodge_table", "weight_table", "render_diamond", "render_weights"]


@dataclass
class Check:
    name: str
    ok: Optional[bool]  # None when skipped
    witness: object = None
    skipped_reason: Optional[str] = None

    def to_json(self):
        return {"name": self.name, "ok": self.ok, "witness": _jsonable(self.witness), "skipped_reason": self.skipped_reason}


@dataclass
class Report:
    checks: list = field(default_factory=list)
    hodge_table: list = field(default_factory=list)
    weight_table: list = field(default_factory=list)
    nu: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.ok is not False for c in self.checks)

    def add(self, name, ok, witness=None):
        self.checks.append(Check(name, ok, witness))

    def skip(self, name, reason):
        self.checks.append(Check(name, None, None, reason))

    def to_json(self):
        return {
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "hodge_table": self.hodge_table,
            "weight_table": self.weight_table,
            "nu": {str(l): v for l, v in self.nu.items()},
            **_jsonable(self.info),
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def render(self, d=None):
        lines = []
        for c in self.checks:
            if c.ok is None:
                lines.append(f"SKIP  {c.name}: {c.skipped_reason}")
            else:
                tag = "PASS" if c.ok else "FAIL"
                extra = f"  {_short(c.witness)}" if c.witness not in (None, {}, []) else ""
                lines.append(f"{tag}  {c.name}{extra}")
        for k, v in self.info.items():
            lines.append(f"{k}: {_short(v)}")
        if self.hodge_table and d is not None:
            lines += ["", "Hodge numbers dim Gr_F^p H^l:", render_diamond(self.hodge_table, d)]
        if self.nu:
            lines += ["", "nu: " + ", ".join(f"nu_{l}={v}" for l, v in self.nu.items())]
        lines.append("")
        lines.append("PASSED" if self.passed else "FAILED")
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set)):
        return [_jsonable(v) for v in x]
    return x


def _short(x):
    s = json.dumps(_jsonable(x), sort_keys=True)
    return s if len(s) <= 160 else s[:157] + "..."


def hodge_table(r):
    return [{"l": l, "p": p, "dim": n} for (p, l), n in sorted(hodge_numbers(r).items(), key=lambda t: (t[0][1], t[0][0])) if n]


def weight_table(r):
    return [{"l": l, "k": k, "dim": n} for (k, l), n in sorted(weight_numbers(r).items(), key=lambda t: (t[0][1], t[0][0])) if n]


def render_diamond(table, d):
    """Rows ``l = 0..top``; row ``l`` lists ``p`` from high to low so the rows form a rhombus.

    The entry with ``p = l/2`` sits on the vertical axis and is bracketed.
    """
    dims = {(e["p"], e["l"]): e["dim"] for e in table}
    top = max([l for (_, l) in dims] or [0])
    rows = []
    for l in range(0, top + 1):
        cells = []
        for p in range(min(l, 2 * d), max(0, l - 2 * d) - 1, -1):
            n = str(dims.get((p, l), 0))
            cells.append(f"[{n}]" if 2 * p == l else n)
        rows.append((l, cells))
    width = max(len(c) for _, cells in rows for c in cells) + 2
    width += width % 2
    widest = max(len(cells) for _, cells in rows)
    out = []
    for l, cells in rows:
        pad = (widest - len(cells)) * width // 2
        out.append(f"H^{l:<3}" + " " * pad + "".join(c.center(width) for c in cells).rstrip())
    return "\n".join(out)


def render_weights(table):
    """Grid of ``dim Gr^W_k H^l`` with degrees down and weights across."""
    dims = {(e["k"], e["l"]): e["dim"] for e in table}
    if not dims:
        return "(empty)"
    top_l = max(l for _, l in dims)
    top_k = max(k for k, _ in dims)
    width = max(len(str(n)) for n in dims.values()) + 2
    head = "      " + "".join(f"W{k}".rjust(width) for k in range(top_k + 1))
    out = [head]
    for l in range(top_l + 1):
        out.append(f"H^{l:<3} " + "".join(str(dims.get((k, l), 0) or ".").rjust(width) for k in range(top_k + 1)))
    return "\n".join(out)


def verify(r, sigma, trials=32, seed=0, coeff_bound=10):
    """Run every applicable check on ``(r, sigma)`` and collect a Report.

    TheoremContradiction propagates to the caller.
    """
    rep = Report()
    rep.hodge_table = hodge_table(r)
    rep.weight_table = weight_table(r)
    rep.nu = dict(nilpotency_indices(r).nu)
    rep.info = {"d": r.d, "dim": r.dim}

    val = validate(r)
    rep.add("validate", val.passed, [v._asdict() for v in val.violations[:5]])
    names = [
        "symplectic", "pure_weight", "reconstruct", "hodge_symmetry", "sigma_powers", "chl",
        "weight_vanishing_w1", "lower_bounds", "nagai_pattern", "geometric_vanishing",
    ]
    if not val.passed:
        for n in names:
            rep.skip(n, "ring failed validation")
        return rep

    try:
        verdict = is_symplectic(r, sigma)
    except NotInF2H2 as e:
        rep.add("symplectic", False, str(e))
        verdict = None
    else:
        rep.add("symplectic", verdict.symplectic,
                {} if verdict.symplectic else {"first_failure": verdict.first_failure, "message": "not symplectic"})
    if not verdict:
        for n in names[1:]:
            rep.skip(n, "element is not symplectic")
        return rep

    w = pure_weight(r, sigma)
    rep.info["pure_weight"] = w
    rep.add("pure_weight", True, {"weight": w})
    rep.add("reconstruct", reconstruct_check(r, sigma))
    sym = hodge_symmetry_check(r)
    rep.add("hodge_symmetry", sym.ok, sym.details["mismatches"])
    pw = power_law_check(r, sigma)
    rep.add("sigma_powers", pw.ok, pw.details)

    ht = is_hodge_tate(r)
    witness = curious_hl(r, trials, seed, coeff_bound, sigma=sigma) if ht else None
    chl_agreement(w == 2, ht, witness is not None)
    if w == 2:
        rep.add("chl", witness is not None,
                {"alpha": witness.alpha.sparse(), "trials_used": witness.trials_used, "seed": seed}
                if witness else {"trials": trials, "seed": seed})
    else:
        rep.skip("chl", f"pure weight is {w}, not 2 (Hodge-Tate: {ht})")

    if w == 1:
        wv = weight_vanishing_check_w1(r, sigma)
        rep.add("weight_vanishing_w1", wv.ok, wv.details)
        try:
            lb = lower_bounds_check(r, sigma)
        except NoConjugation as e:
            rep.skip("lower_bounds", f"NoConjugation: {e}")
        else:
            rep.add("lower_bounds", lb.ok, lb.details)
    else:
        rep.skip("weight_vanishing_w1", f"pure weight is {w}, not 1")
        rep.skip("lower_bounds", f"pure weight is {w}, not 1")

    if w in (1, 2):
        ng = nagai_pattern_check(r, sigma)
        rep.add("nagai_pattern", ng.ok, ng.details)
        if r.geometric:
            try:
                gv = geometric_vanishing_check(r, sigma)
            except NotGeometric as e:
                rep.add("geometric_vanishing", False, str(e))
            else:
                rep.add("geometric_vanishing", gv.ok, gv.details)
        else:
            rep.skip("geometric_vanishing", "ring is not flagged geometric")
    else:
        rep.skip("nagai_pattern", f"pure weight is {w}")
        rep.skip("geometric_vanishing", f"pure weight is {w}")
    return rep
