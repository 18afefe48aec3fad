"""Command-line front end.  JSON goes to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 invalid input, 2 a requested property failed.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import endos, polyring, twisted, universal
from .algebra import algebra_from_dict, map_from_dict
from .errors import TwistDerivError
from .quadring import make_ring, rat_to_dict, to_dict

EXIT_OK, EXIT_INPUT, EXIT_PROPERTY = 0, 1, 2


class InputError(TwistDerivError):
    code = "invalid_input"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _pair(args):
    R = make_ring(args.d)
    return R, endos.endo_from_kind(R, args.sigma), endos.endo_from_kind(R, args.tau)


def cmd_classify(args):
    R = make_ring(args.d)
    return {"endos": [endos.to_dict(e) for e in endos.classify(R)]}, EXIT_OK


def cmd_leibniz(args):
    R, s, t = _pair(args)
    D = twisted.GenLinearMap(R, s, t, R(args.alpha, args.beta))
    rng = random.Random(args.seed)
    lo, hi = -args.bound, args.bound
    failures = 0
    first = None
    for _ in range(args.samples):
        x = R(rng.randint(lo, hi), rng.randint(lo, hi))
        y = R(rng.randint(lo, hi), rng.randint(lo, hi))
        if not twisted.leibniz_holds(D, x, y):
            failures += 1
            if first is None:
                first = {"x": to_dict(x), "y": to_dict(y)}
    out = twisted.to_dict(D)
    out.update(
        {"samples": args.samples, "seed": args.seed, "holds": failures == 0, "failures": failures, "first_failure": first}
    )
    return out, EXIT_OK if failures == 0 else EXIT_PROPERTY


def cmd_inner(args):
    R, s, t = _pair(args)
    D = twisted.make_derivation(R, s, t, args.alpha, args.beta)
    cand, w = twisted.inner_witness(D)
    if w is not None:
        return {"inner": True, "witness": to_dict(w)}, EXIT_OK
    return {"inner": False, "candidate": rat_to_dict(cand)}, EXIT_OK


def cmd_ufd_delta(args):
    parse = polyring.parse_poly
    sigma = polyring.PolyEndo(parse(args.sigma_image))
    tau = polyring.PolyEndo(parse(args.tau_image))
    delta = polyring.delta_generator(sigma, tau)
    f = parse(args.apply)
    return {
        "sigma_image": str(sigma.image_of_x),
        "tau_image": str(tau.image_of_x),
        "g": str(delta.g),
        "input": str(f),
        "result": str(delta(f)),
    }, EXIT_OK


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def cmd_universal(args):
    A = algebra_from_dict(_read_json(args.algebra))
    sigma = map_from_dict(_read_json(args.sigma))
    tau = map_from_dict(_read_json(args.tau))
    values = map_from_dict(_read_json(args.derivation))
    D = universal.make_general_derivation(A, sigma, tau, values)
    cert = universal.BUILDERS[args.case](D)
    payload = universal.cert_to_dict(cert)
    if args.out:
        Path(args.out).write_text(_dumps(payload) + "\n")
        report = universal.verify_certificate(cert)
        return {"case": args.case, "out": args.out, "all_pass": report.all_pass}, EXIT_OK
    return payload, EXIT_OK


def cmd_verify(args):
    cert = universal.cert_from_dict(_read_json(args.cert))
    report = universal.verify_certificate(cert)
    return report.to_dict(), EXIT_OK if report.all_pass else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twistderiv", description="Twisted (sigma, tau)-derivations, computed exactly.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="ring endomorphisms of O_K")
    c.add_argument("--d", type=int, required=True)
    c.set_defaults(func=cmd_classify)

    def derivation_flags(q):
        q.add_argument("--d", type=int, required=True)
        q.add_argument("--sigma", choices=["id", "conj"], required=True)
        q.add_argument("--tau", choices=["id", "conj"], required=True)
        q.add_argument("--alpha", type=int, required=True)
        q.add_argument("--beta", type=int, required=True)

    lb = sub.add_parser("leibniz-check", help="sample the Leibniz law for D(gen) = alpha + beta*gen")
    derivation_flags(lb)
    lb.add_argument("--samples", type=int, default=1000)
    lb.add_argument("--seed", type=int, default=0)
    lb.add_argument("--bound", type=int, default=100, help="coordinate range of sampled elements")
    lb.set_defaults(func=cmd_leibniz)

    inn = sub.add_parser("inner", help="decide innerness and print the witness")
    derivation_flags(inn)
    inn.set_defaults(func=cmd_inner)

    u = sub.add_parser("ufd-delta", help="apply (tau - sigma)/g on Q[x]")
    u.add_argument("--sigma-image", required=True)
    u.add_argument("--tau-image", required=True)
    u.add_argument("--apply", required=True)
    u.set_defaults(func=cmd_ufd_delta)

    un = sub.add_parser("universal", help="build a factorization certificate")
    un.add_argument("--case", type=int, choices=[1, 2, 3, 4], required=True)
    un.add_argument("--algebra", required=True)
    un.add_argument("--sigma", required=True)
    un.add_argument("--tau", required=True)
    un.add_argument("--derivation", required=True)
    un.add_argument("--out")
    un.set_defaults(func=cmd_universal)

    v = sub.add_parser("verify", help="re-check a certificate file")
    v.add_argument("--cert", required=True)
    v.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "samples", 0) < 0:
            raise InputError("--samples must be non-negative")
        result, code = args.func(args)
    except TwistDerivError as exc:
        print(_dumps({"code": exc.code, "message": str(exc)}))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(_dumps(result))
    if code == EXIT_PROPERTY:
        print("property check failed", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
