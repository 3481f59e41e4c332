"""Command-line front end: parse a curve, run the pipeline, emit JSON.

Input encoding: Q's coefficients are listed ascending in x-degree and joined
by commas; each F_q coefficient is its n base-p coordinates joined by `:`
(so `2:1` is 2 + t in F_9).  Missing high coordinates default to 0.  The
result is a single JSON document on stdout; warnings and timings go to
stderr.  Exit codes: 0 success, 2 bad input, 3 violated invariant (including
an oracle mismatch, which still prints the document first).
"""

import argparse
import json
import sys
import time

from .errors import InputError, InvariantError
from .gf import FqPoly, gf_make
from .kedlaya import zeta_lpoly
from .oracle import count_points, lpoly_from_counts


def build_parser():
    ap = argparse.ArgumentParser(
        prog="zetafrob",
        description="Zeta-function numerator of y^2 = Q(x) over F_q, q odd.")
    ap.add_argument("--p", type=int, required=True,
                    help="field characteristic (odd prime)")
    ap.add_argument("--n", type=int, default=1,
                    help="extension degree of F_q over F_p (default 1)")
    ap.add_argument("--modulus",
                    help="degree-n field modulus over F_p: n+1 comma-joined "
                         "integers, ascending, monic; required for n > 1")
    ap.add_argument("--q-poly", required=True,
                    help="coefficients of Q, ascending, comma-joined; each "
                         "one is n integers in [0,p) joined by ':'")
    ap.add_argument("--basis", choices=("auto", "b1", "b2"), default="auto",
                    help="differential basis: dx/y (b1), dx/y^3 (b2), or "
                         "pick by degree and characteristic (auto)")
    ap.add_argument("--precision", type=int, metavar="N",
                    help="work with at least N p-adic digits")
    ap.add_argument("--oracle", action="store_true",
                    help="also count points directly (small q^g only) and "
                         "compare L-polynomials")
    ap.add_argument("--json-out", metavar="PATH",
                    help="write the result document to PATH too")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for the oracle's extension-modulus search")
    ap.add_argument("--timing", action="store_true",
                    help="report stage wall-clock times on stderr")
    return ap


def _parse_ints(text, what):
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise InputError("%s: expected comma-joined integers, got %r"
                         % (what, text))


def _parse_coeff(token, field):
    parts = token.split(":")
    if len(parts) > field.n:
        raise InputError("coefficient %r has %d coordinates; the field only "
                         "has %d" % (token, len(parts), field.n))
    try:
        coords = [int(s) for s in parts]
    except ValueError:
        raise InputError("coefficient %r is not a ':'-joined integer list"
                         % token)
    coords += [0] * (field.n - len(coords))
    return field.elem(coords)


def _parse_qpoly(text, field):
    tokens = [tok.strip() for tok in text.split(",")]
    if not any(tokens):
        raise InputError("empty Q polynomial")
    return [_parse_coeff(tok, field) for tok in tokens]


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        modulus = _parse_ints(args.modulus, "--modulus") \
            if args.modulus else None
        field = gf_make(args.p, args.n, modulus)
        coeffs = _parse_qpoly(args.q_poly, field)
        force = None if args.basis == "auto" else args.basis
        result = zeta_lpoly(field, coeffs, basis=force,
                            min_digits=args.precision)
        doc = result.as_dict()
        doc["oracle"] = None
        doc["match"] = None
        if args.oracle:
            t0 = time.perf_counter()
            Q = FqPoly(field, coeffs)
            counts = [count_points(Q, r, seed=args.seed)
                      for r in range(1, result.g + 1)]
            doc["oracle"] = lpoly_from_counts(counts, field.q, result.g)
            doc["match"] = doc["oracle"] == doc["L"]
            doc["timings"]["oracle"] = round(time.perf_counter() - t0, 6)
    except InputError as e:
        print("input error: %s" % e, file=sys.stderr)
        return 2
    except InvariantError as e:
        print("invariant violated: %s" % e, file=sys.stderr)
        return 3

    for w in doc["warnings"]:
        print("warning: %s" % w, file=sys.stderr)
    if args.timing:
        for stage, dt in doc["timings"].items():
            print("timing: %s %.4fs" % (stage, dt), file=sys.stderr)
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    if doc["match"] is False:
        print("invariant violated: pipeline L does not match the oracle",
              file=sys.stderr)
        return 3
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
