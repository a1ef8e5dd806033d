"""``hodgering`` command line.

Exit codes: 0 pass, 1 a check failed, 2 a theorem-level contradiction
(a bug in data or code), 3 I/O or parse error.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .constructors import kunneth, tensor_element, torus_ring
from .document import dumps, load, save
from .errors import HodgeRingError, InvalidFactor, ParseError, TheoremContradiction, ValidationFailed
from .lefschetz import curious_hl, nilpotency_indices, pure_weight
from .report import hodge_table, render_diamond, render_weights, verify, weight_table

EXIT_PASS, EXIT_FAIL, EXIT_CONTRADICTION, EXIT_IO = 0, 1, 2, 3


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _seed(args):
    env = os.environ.get("HODGERING_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"HODGERING_SEED must be an integer, got {env!r}") from None
    return args.seed


def _element(elements, name, path):
    if name not in elements:
        known = ", ".join(sorted(elements)) or "none"
        raise ParseError(f"{path} has no element {name!r} (elements: {known})", field="elements")
    return elements[name]


def cmd_verify(args):
    ring, elements = load(args.path, check=False)
    sigma = _element(elements, args.element, args.path)
    rep = verify(ring, sigma, trials=args.trials, seed=_seed(args), coeff_bound=args.bound)
    rep.info["element"] = args.element
    _emit(args, rep.to_json(), rep.render(ring.d))
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_diamond(args):
    ring, _ = load(args.path)
    ht, wt = hodge_table(ring), weight_table(ring)
    text = render_diamond(ht, ring.d) + "\n\nweights dim Gr^W_k H^l:\n" + render_weights(wt)
    _emit(args, {"d": ring.d, "hodge_table": ht, "weight_table": wt}, text)
    return EXIT_PASS


def _parse_entry(x, where):
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError("entries must be integers, 'a/b' strings or {num, den} objects", field=where)
    try:
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, dict) and set(x) == {"num", "den"}:
            if x["den"] <= 0:
                raise ParseError("denominator must be positive", field=where)
            return Fraction(int(x["num"]), int(x["den"]))
    except (ValueError, TypeError, ZeroDivisionError):
        pass
    raise ParseError(f"not an exact rational: {x!r}", field=where)


def cmd_build_torus(args):
    try:
        with open(args.matrix) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from None
    except OSError as e:
        raise ParseError(f"cannot read {args.matrix}: {e.strerror}") from None
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise ParseError("matrix must be a JSON array of rows")
    A = [[_parse_entry(x, f"[{i}][{j}]") for j, x in enumerate(row)] for i, row in enumerate(data)]
    ring, sigma = torus_ring(A, geometric=not args.not_geometric)
    save(ring, args.out, {"sigma": sigma})
    print(f"wrote {args.out}: d={ring.d}, dim={ring.dim}")
    return EXIT_PASS


def cmd_product(args):
    r1, e1 = load(args.path1)
    r2, e2 = load(args.path2)
    ring = kunneth(r1, r2, d=args.d, check=False)
    elements = {}
    if args.element in e1 and args.element in e2:
        elements[args.element] = tensor_element(r1, r2, e1[args.element], r2.unit) + tensor_element(
            r1, r2, r1.unit, e2[args.element]
        )
    save(ring, args.out, elements)
    print(f"wrote {args.out}: d={ring.d}, dim={ring.dim}")
    return EXIT_PASS


def cmd_chl(args):
    ring, elements = load(args.path)
    seed = _seed(args)
    sigma = elements.get(args.element)
    if sigma is not None and pure_weight(ring, sigma) != 2:
        sigma = None
    w = curious_hl(ring, trials=args.trials, seed=seed, coeff_bound=args.bound, sigma=sigma)
    if w is None:
        payload = {"witness": None, "trials": args.trials, "seed": seed}
        _emit(args, payload, f"NONE after {args.trials} trials (seed {seed})")
        return EXIT_FAIL
    coeffs = {k: v for k, v in w.alpha.sparse().items()}
    payload = {
        "witness": [{"k": k, "num": v.numerator, "den": v.denominator} for k, v in sorted(coeffs.items())],
        "trials_used": w.trials_used,
        "seed": w.seed,
    }
    text = "alpha = " + " + ".join(f"({v})*e_{k}" for k, v in sorted(coeffs.items()))
    _emit(args, payload, f"{text}\nfound after {w.trials_used} trial(s), seed {w.seed}")
    return EXIT_PASS


def cmd_indices(args):
    ring, _ = load(args.path)
    nu = nilpotency_indices(ring).nu
    _emit(args, {"nu": {str(l): v for l, v in nu.items()}}, "\n".join(f"nu_{l} = {v}" for l, v in nu.items()))
    return EXIT_PASS


def build_parser():
    ap = argparse.ArgumentParser(prog="hodgering", description="Build and check symplectic Hodge rings.")
    ap.add_argument("--format", choices=["text", "json"], default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
        return p

    p = add("verify", cmd_verify, "run every applicable check on a ring document")
    p.add_argument("path")
    p.add_argument("--element", default="sigma")
    p.add_argument("--trials", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=10)

    p = add("diamond", cmd_diamond, "print Hodge numbers as a diamond and the weight table")
    p.add_argument("path")

    p = add("build-torus", cmd_build_torus, "write the torus ring of an alternating matrix")
    p.add_argument("matrix")
    p.add_argument("out")
    p.add_argument("--not-geometric", action="store_true")

    p = add("product", cmd_product, "write the Kunneth product of two ring documents")
    p.add_argument("path1")
    p.add_argument("path2")
    p.add_argument("out")
    p.add_argument("--d", type=int, default=None, help="declared d of the product (default d1 + d2)")
    p.add_argument("--element", default="sigma")

    p = add("chl", cmd_chl, "search for a curious hard Lefschetz class")
    p.add_argument("path")
    p.add_argument("--element", default="sigma")
    p.add_argument("--trials", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=10)

    p = add("indices", cmd_indices, "print nilpotency indices nu_l")
    p.add_argument("path")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except TheoremContradiction as e:
        print(f"contradiction: {e}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except (ValidationFailed, InvalidFactor) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except HodgeRingError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
