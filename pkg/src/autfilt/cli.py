"""Command line entry point.

Subcommands:

* verify <suite>      run a named verification suite, write a JSON report,
                      exit nonzero iff some record FAILs
* depth <file>        filtration depth of an automorphism given in the
                      text format (optional `inverse:` line)
* cert check <file>   verify a certificate JSON file
* cert assemble <file> build a certificate from an assembly description
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import autf, bnscert, magnus, suites


def _suite_params(args):
    params = {}
    if args.n is not None:
        params["n"] = args.n
        params["n_values"] = (args.n,)
    if args.k is not None:
        params["k"] = args.k
        params["k_values"] = (args.k,)
    if args.g is not None:
        params["g_values"] = (args.g,)
    if args.m is not None:
        params["m"] = args.m
    if args.trials is not None:
        params["trials"] = args.trials
    if args.seed is not None:
        params["seed"] = args.seed
    if args.extended_sp_generators:
        params["extended_sp_generators"] = True
    if args.no_full_closure:
        params["full_closure"] = False
    return params


def cmd_verify(args):
    report = suites.run(args.suite, _suite_params(args), out_path=args.out)
    for record in report.records:
        print(f"[{record.status}] {record.claim} ({record.wall_time_s:.2f}s)")
    print(f"suite {report.suite}: {report.status}")
    if args.out:
        print(f"report written to {args.out}")
    return 0 if report.status == "PASS" else 1


def _load_automorphism(path):
    with open(path) as f:
        lines = [l.strip() for l in f if l.strip() and not l.strip().startswith("#")]
    if not lines:
        raise ValueError("empty automorphism file")
    text = lines[0]
    inverse_text = None
    for line in lines[1:]:
        if line.startswith("inverse:"):
            inverse_text = line[len("inverse:"):].strip()
    return autf.parse_automorphism(text, inverse_text=inverse_text)


def cmd_depth(args):
    phi = _load_automorphism(args.file)
    report = magnus.johnson_depth(phi, args.cutoff)
    out = {
        "rank": phi.rank,
        "cutoff": args.cutoff,
        "depth": report.label,
        "is_identity_on_abelianization": autf.is_IA(phi),
        "support": sorted(autf.minimal_support(phi)),
        "complexity": autf.complexity(phi),
    }
    print(json.dumps(out, sort_keys=True, indent=2))
    return 0


def cmd_cert_check(args):
    with open(args.file) as f:
        cert = bnscert.BnsCertificate.from_json(f.read())
    verdict = bnscert.check_certificate(cert)
    print(json.dumps(verdict.to_json_obj(), sort_keys=True, indent=2))
    return 0 if verdict.valid else 1


def _target_from_spec(spec):
    kind = spec["kind"]
    if kind == "C":
        i, j = spec["args"]
        return spec.get("label", f"C{i}{j}"), autf.c_nielsen_word(i, j)
    if kind == "M":
        i, j, k = spec["args"]
        return spec.get("label", f"M{i}{j}{k}"), autf.m_nielsen_word(i, j, k)
    if kind == "word":
        letters = tuple(tuple(l) for l in spec["letters"])
        return spec.get("label", "word"), letters
    raise ValueError(f"unknown target kind {kind!r}")


def cmd_cert_assemble(args):
    with open(args.file) as f:
        spec = json.load(f)
    n, m = spec["n"], spec["m"]
    targets = [_target_from_spec(t) for t in spec.get("targets", [])]
    chi_seed = bnscert.Character.from_dict(spec.get("chi_seed", {}))
    chooser_value = Fraction(spec.get("chooser_value", 1))
    cert, report = bnscert.assemble_certificate(
        n,
        m,
        targets,
        chi_seed=chi_seed,
        element_chooser=bnscert.default_element_chooser(chooser_value),
    )
    verdict = bnscert.check_certificate(cert)
    text = cert.to_json()
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
            f.write("\n")
        print(f"certificate written to {args.out}")
    else:
        print(text)
    print(
        json.dumps(
            {
                "valid": verdict.valid,
                "elements": len(cert.elements),
                "forced_positions": report.forced_positions,
                "vertex_order": report.vertex_order,
            },
            sort_keys=True,
            indent=2,
        )
    )
    return 0 if verdict.valid else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="autfilt",
        description="exact verification suites for free group automorphism computations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("suite", choices=suites.SUITE_NAMES)
    p_verify.add_argument("--n", type=int, default=None)
    p_verify.add_argument("--k", type=int, default=None)
    p_verify.add_argument("--g", type=int, default=None)
    p_verify.add_argument("--m", type=int, default=None)
    p_verify.add_argument("--trials", type=int, default=None)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--out", default=None, help="write the JSON report here")
    p_verify.add_argument(
        "--extended-sp-generators",
        action="store_true",
        help="add extra symplectic transvections to the sp-orbit saturation",
    )
    p_verify.add_argument(
        "--no-full-closure",
        action="store_true",
        help="stop kernel-claim saturation at the kernel dimension "
        "(equality is still certified by containment plus dimension)",
    )
    p_verify.set_defaults(fn=cmd_verify)

    p_depth = sub.add_parser("depth", help="filtration depth of an automorphism file")
    p_depth.add_argument("file")
    p_depth.add_argument("--cutoff", type=int, default=6)
    p_depth.set_defaults(fn=cmd_depth)

    p_cert = sub.add_parser("cert", help="certificate operations")
    cert_sub = p_cert.add_subparsers(dest="cert_command", required=True)
    p_check = cert_sub.add_parser("check", help="verify a certificate JSON file")
    p_check.add_argument("file")
    p_check.set_defaults(fn=cmd_cert_check)
    p_assemble = cert_sub.add_parser(
        "assemble", help="assemble a certificate from a description file"
    )
    p_assemble.add_argument("file")
    p_assemble.add_argument("--out", default=None)
    p_assemble.set_defaults(fn=cmd_cert_assemble)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
