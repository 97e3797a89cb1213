"""Command-line front end.

Subcommands: pairs, cert, verify, classify, selftest.  Exit codes follow the
scripting contract: 0 success, 1 internal error, 2 usage or parse error,
3 failed precondition, 4 verification mismatch.  All output is deterministic
for fixed flags; --seed is accepted for interface stability but unused.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import certs
from .arith import is_prime, search_pairs
from .chars import TameCharacter
from .errors import (
    BadBounds,
    BadCharacter,
    BadInput,
    BadResidueChar,
    BadType,
    CertificateFormatError,
    NotSimilitude,
    PromiseUnverifiable,
    ToolkitError,
)
from .ff import make_field
from .linalg import Matrix
from .ortho import QuadraticSpace, classify_subgroup

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_MISMATCH = 4


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        certs.atomic_write(path, text)


def cmd_pairs(args) -> int:
    if args.n % 2 != 0 or args.n < 2:
        print(f"error: --n must be even and >= 2, got {args.n}", file=sys.stderr)
        return EXIT_USAGE
    if args.ell % 2 == 0 or not is_prime(args.ell):
        print(f"error: --ell must be an odd prime, got {args.ell}", file=sys.stderr)
        return EXIT_USAGE
    try:
        found = search_pairs(args.n, args.ell, args.p_max, args.t_max, jobs=args.jobs)
    except BadBounds as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    doc = [cand.to_json() for cand in found]
    _write_output(args.output, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def cmd_cert(args) -> int:
    if args.sign not in (1, -1):
        print(f"error: --sign must be +1 or -1, got {args.sign}", file=sys.stderr)
        return EXIT_USAGE
    try:
        doc = certs.build_certificate(args.n, args.p, args.t, args.sign, args.ell)
    except (BadType, BadCharacter, BadResidueChar) as exc:
        print(f"error: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (BadInput, BadBounds) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write_output(args.output, certs.canonical_dump(doc))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.certificate) as fh:
            doc = json.load(fh)
    except OSError as exc:
        print(f"error: cannot read certificate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"error: certificate is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        diffs = certs.verify_certificate(doc)
    except CertificateFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if diffs:
        print(f"MISMATCH: {len(diffs)} field(s) differ", file=sys.stderr)
        for d in diffs:
            print(f"  {d}", file=sys.stderr)
        return EXIT_MISMATCH
    print("certificate verified: all derivable fields match")
    return EXIT_OK


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def cmd_classify(args) -> int:
    if not is_prime(args.p):
        print(f"error: --p must be prime, got {args.p}", file=sys.stderr)
        return EXIT_USAGE
    try:
        gens_doc = _load_json(args.generators)
        gram_doc = _load_json(args.gram)
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"error: input is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        field = make_field(args.p, args.k)
        gens = [certs.json_to_matrix(field, m) for m in gens_doc]
        gram = certs.json_to_matrix(field, gram_doc)
        space = QuadraticSpace(field, gram)
        placement = classify_subgroup(gens, space, args.promise_contains_omega)
    except NotSimilitude as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PromiseUnverifiable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ToolkitError, ValueError, TypeError) as exc:
        print(f"error: bad input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(placement.label)
    print(f"spinor_norm(-I) trivial: {placement.spinor_minus_trivial}")
    print(f"contains-Omega verified: {placement.omega_verified}")
    print("generator char images (similitude, det_part, spinor):")
    for i, t in enumerate(placement.char_images):
        print(f"  gen[{i}]: {t['similitude']}, {t['det_part']}, {t['spinor']}")
    return EXIT_OK


def _selftest_cases():
    from .ff import make_field as mf
    from .groups import gamma_d, normal_subgroups
    from .induce import build_residual_rep, commutant_dim, form_kind, image_group, invariant_forms
    from .ortho import (
        GroupFlavor,
        SquareClass,
        group_order,
        orthogonal_group,
        spinor_norm,
        standard_space,
    )

    def pairs_case():
        got = [(c.p, c.t) for c in search_pairs(8, 3, 60, 20)]
        brute = []
        for t in range(2, 21):
            if not is_prime(t) or t % 8 != 1 or t <= 3:
                continue
            for p in range(9, 61):
                if not is_prime(p) or p <= 3 or p == t:
                    continue
                e = 1
                x = p % t
                while x != 1:
                    x = x * p % t
                    e += 1
                if e == 8:
                    brute.append((p, t))
        return sorted(got) == sorted(brute)

    def cert_case():
        doc = certs.build_certificate(8, 19, 17, 1, 13)
        if certs.verify_certificate(doc):
            return False
        doc_bad = json.loads(certs.canonical_dump(doc))
        doc_bad["image_order"] = 137
        return bool(certs.verify_certificate(doc_bad))

    def order_case():
        f3 = mf(3, 1)
        for eps in ("+", "-"):
            v = standard_space(4, eps, f3)
            if orthogonal_group(v, 2000).order != group_order(4, eps, 3, GroupFlavor.O):
                return False
        return True

    def spinor_case():
        f3 = mf(3, 1)
        h = standard_space(2, "+", f3)
        minus = Matrix.scalar(f3, -f3.one, 2)
        return spinor_norm(minus, h) is SquareClass.NONSQUARE

    def gamma_case():
        rep = build_residual_rep(TameCharacter(8, 19, 17, 1), 13)
        img = image_group(rep, 300)
        normals = normal_subgroups(img)
        orders = sorted(h.order for h in normals)
        return orders == [1, 17, 34, 68, 136] and gamma_d(img, 8, normals).order == 17

    def dichotomy_case():
        rep_o = build_residual_rep(TameCharacter(8, 19, 17, 1), 13)
        rep_s = build_residual_rep(TameCharacter(8, 19, 17, -1), 13)
        fo = invariant_forms(rep_o)
        fs = invariant_forms(rep_s)
        return (
            len(fo) == 1
            and len(fs) == 1
            and form_kind(fo[0]).value == "symmetric"
            and form_kind(fs[0]).value == "alternating"
            and commutant_dim(rep_o) == 1
        )

    return [
        ("pair search vs brute force", pairs_case),
        ("certificate round-trip and tamper detection", cert_case),
        ("orthogonal group orders vs closure", order_case),
        ("spinor norm of -I on the F_3 hyperbolic plane", spinor_case),
        ("normal subgroup lattice and gamma_d of the order-136 image", gamma_case),
        ("orthogonal/symplectic dichotomy at (8,19,17)", dichotomy_case),
    ]


def cmd_selftest(_args) -> int:
    failures = 0
    for name, fn in _selftest_cases():
        try:
            ok = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok = False
            print(f"FAIL {name}: {exc}")
            failures += 1
            continue
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        if not ok:
            failures += 1
    return EXIT_OK if failures == 0 else EXIT_INTERNAL


def _add_common(sp):
    sp.add_argument("--output", default=None, help="output path (default: stdout)")
    sp.add_argument("--seed", type=int, default=None, help="accepted, unused (deterministic)")
    sp.add_argument("--jobs", type=int, default=1, help="worker count for searches")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tamerep",
        description="Tame self-dual local Galois representations: search, build, classify, certify.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pairs", help="search admissible prime pairs (p, t)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--p-max", type=int, required=True)
    sp.add_argument("--t-max", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_pairs)

    sp = sub.add_parser("cert", help="build a certificate for one (n, p, t, sign, ell)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--sign", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_cert)

    sp = sub.add_parser("verify", help="recompute and compare a certificate")
    sp.add_argument("certificate")
    _add_common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("classify", help="place generated similitude group in the four quotients")
    sp.add_argument("generators", help="JSON array of matrices")
    sp.add_argument("gram", help="JSON matrix")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument(
        "--promise-contains-omega",
        action="store_true",
        help="caller asserts the generated group contains Omega(V)",
    )
    _add_common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("selftest", help="run the built-in sanity battery")
    _add_common(sp)
    sp.set_defaults(func=cmd_selftest)

    return ap


def main(argv=None) -> None:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code = args.func(args)
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_PRECONDITION
    except Exception as exc:  # internal
        print(f"internal error: {exc}", file=sys.stderr)
        code = EXIT_INTERNAL
    sys.exit(code)


if __name__ == "__main__":
    main()
