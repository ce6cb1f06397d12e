"""Command-line front end: ``volrig <command> [input] [flags]``.

Complexes are read as JSON ``{"n": int, "d": int, "facets": [[...], ...]}``
from a file path or stdin. Reports are JSON on stdout. Exit codes: 0 on
success, 2 on bad input, 3 when two oracles that must agree do not.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import secrets
import sys
import warnings

from . import bounds, global_rigidity, grassmann, homology, orientations, rigidity, shifting
from .complex import complete_complex, f_vector, from_json, is_pure, lgrc
from .linalg import DEFAULT_PRIME, DEFAULT_SEED, DEFAULT_TRIALS, PrimeField, format_scalar

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DISAGREE = 3

# analyses whose search cost grows factorially are skipped above this n
PHI_ROUTE_MAX_N = 8


class InputError(Exception):
    pass


class Disagreement(Exception):
    def __init__(self, report):
        super().__init__("oracle disagreement")
        self.report = report


def _read_json(path: str | None):
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
        return json.loads(text)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def _load_complex(args):
    try:
        return from_json(_read_json(args.input))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def input_digest(cx) -> str:
    canon = json.dumps(cx.to_json(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def _seed(args):
    if args.seed == "random":
        return secrets.randbits(63)
    try:
        return int(args.seed)
    except ValueError:
        raise InputError(f"--seed must be an integer or 'random' (got {args.seed!r})") from None


def _oracle_kw(args) -> dict:
    return {"seed": args.seed_value, "trials": args.trials, "prime": args.prime}


def _faces(faces):
    return [list(f) for f in faces]


# -- commands -------------------------------------------------------------------


def cmd_rigidity(args):
    cx = _load_complex(args)
    v = rigidity.is_locally_rigid(cx, ignore_impure=args.ignore_impure, **_oracle_kw(args))
    return {"input_digest": input_digest(cx), **v.to_json()}


def cmd_rank(args):
    cx = _load_complex(args)
    rigidity._check_pure(cx, args.ignore_impure)
    v = rigidity.rigidity_verdict(cx.top, cx.n, cx.d, **_oracle_kw(args))
    return {"input_digest": input_digest(cx), "rank": v.rank, "size": len(cx.top), "failure_bound": str(v.failure_bound)}


def cmd_independent(args):
    cx = _load_complex(args)
    rigidity._check_pure(cx, args.ignore_impure)
    v = rigidity.rigidity_verdict(cx.top, cx.n, cx.d, **_oracle_kw(args))
    return {"input_digest": input_digest(cx), "independent": v.rank == len(cx.top), "rank": v.rank, "size": len(cx.top)}


def cmd_basis(args):
    cx = _load_complex(args)
    rigidity._check_pure(cx, args.ignore_impure)
    return {"input_digest": input_digest(cx), "basis": rigidity.is_basis(cx.top, cx.n, cx.d, **_oracle_kw(args))}


def _need_nd(args):
    if args.n is None or args.d is None:
        raise InputError("--n and --d are required")
    return args.n, args.d


def cmd_flexdim(args):
    n, d = _need_nd(args)
    return {"n": n, "d": d, "trivial_flex_dim": rigidity.trivial_flex_dim(n, d, seed=args.seed_value, prime=args.prime)}


def cmd_measure(args):
    cx = _load_complex(args)
    if not args.config:
        raise InputError("measure needs --config with a configuration JSON")
    try:
        p = rigidity.Configuration.from_json(_read_json(args.config))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad configuration: {exc}") from None
    vols = rigidity.volume_measurement(cx, p, ignore_impure=args.ignore_impure)
    out = {
        "input_digest": input_digest(cx),
        "volumes": [{"simplex": list(s), "volume": format_scalar(v)} for s, v in vols.items()],
    }
    if args.matrix:
        out["rigidity_matrix"] = rigidity.rigidity_matrix(cx, p, ignore_impure=args.ignore_impure).to_json()
    return out


def cmd_betti(args):
    cx = _load_complex(args)
    return {"input_digest": input_digest(cx), "f_vector": list(f_vector(cx)), "betti": list(homology.betti(cx))}


def cmd_phi(args):
    cx = _load_complex(args)
    rigidity._check_pure(cx, args.ignore_impure)
    M = grassmann.phi_restricted(cx.top, cx.n, cx.d)
    out = {
        "input_digest": input_digest(cx),
        "phi": M.to_json(),
        "rank": grassmann.phi_rank(cx.top, cx.n, cx.d),
        "column_basis": _faces(grassmann.phi_column_basis(cx.top, cx.n, cx.d)),
    }
    if cx.n <= PHI_ROUTE_MAX_N:
        report = grassmann.cross_check_independence(cx.top, cx.n, cx.d, **_oracle_kw(args))
        out["cross_check"] = report.to_json()
        if not report.agree:
            raise Disagreement(out)
    return out


def _graph_input(args):
    data = _read_json(args.input)
    if not isinstance(data, dict) or "edges" not in data:
        raise InputError("graph JSON needs an 'edges' list")
    try:
        edges = [tuple(int(v) for v in e) for e in data["edges"]]
        if any(len(e) != 2 for e in edges):
            raise ValueError("edges are pairs")
        return data.get("vertices", []), edges
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad edge list: {exc}") from None


def cmd_orient(args):
    vertices, edges = _graph_input(args)
    trails = not args.vertex_distinct
    try:
        if args.find:
            O = orientations.exists_acyclic_act_free(vertices, edges, limit=args.limit_vertices, trails=trails)
            return {"found": O is not None, "orientation": None if O is None else O.to_json()}
        O = orientations.Orientation.build(vertices, edges)
        w = orientations.find_act(O, trails=trails)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return {
        "acyclic": orientations.is_acyclic(O),
        "act": None if w is None else list(w.sequence),
        "act_free": w is None,
    }


def cmd_rigid2_comb(args):
    cx = _load_complex(args)
    try:
        v = orientations.rigid_combinatorial(cx, limit=args.limit_vertices, trails=not args.vertex_distinct)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return {"input_digest": input_digest(cx), **v.to_json()}


def cmd_shift(args):
    cx = _load_complex(args)
    out = {"input_digest": input_digest(cx), "warnings": []}
    if not is_pure(cx):
        out["warnings"].append("input complex is not pure")
    ext = shifting.extension_by_name(args.order, cx.n, cx.d)
    sh = shifting.exterior_shift(cx, ext, seed=args.seed_value, prime=args.prime)
    if not is_pure(sh.complex):
        out["warnings"].append("shifted complex is not pure")
    out["shifted"] = sh.to_json()
    out["maximal_faces"] = _faces(sh.complex.facets())
    out["properties"] = shifting.verify_shift_properties(cx, sh).to_json()
    return out


def cmd_bounds(args):
    cx = _load_complex(args)
    return {"input_digest": input_digest(cx), **bounds.audit_f_vector(cx).to_json()}


def cmd_lgrc(args):
    n, d = _need_nd(args)
    return lgrc(n, d).to_json()


def cmd_complete(args):
    n, d = _need_nd(args)
    return complete_complex(n, d).to_json()


def cmd_global_certify(args):
    cx = _load_complex(args)
    cert = global_rigidity.certify_globally_rigid(cx, depth_limit=args.depth, seed=args.seed_value, prime=args.prime)
    return {"input_digest": input_digest(cx), "certificate": cert.to_json()}


def cmd_global_replay(args):
    cx = _load_complex(args)
    if not args.cert:
        raise InputError("global-replay needs --cert")
    data = _read_json(args.cert)
    if isinstance(data, dict) and "certificate" in data:
        data = data["certificate"]
    try:
        cert = global_rigidity.GlobalCertificate.from_json(data)
        valid = global_rigidity.replay_certificate(cx, cert)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return {"input_digest": input_digest(cx), "valid": valid}


def analyze(cx, args) -> dict:
    kw = _oracle_kw(args)
    n, d = cx.n, cx.d
    pure = is_pure(cx)
    if not pure:
        rigidity._check_pure(cx, args.ignore_impure)
    report = {"input_digest": input_digest(cx), "n": n, "d": d, "pure": pure, "seed": args.seed_value, "prime": args.prime, "trials": args.trials}
    sections = {}
    agreement = {}

    verdict = rigidity.rigidity_verdict(cx.top, n, d, **kw)
    sections["rigidity"] = verdict.to_json()
    independent = verdict.rank == len(cx.top)
    sections["betti"] = list(homology.betti(cx))
    sections["f_vector"] = list(f_vector(cx))

    shift_test = shifting.shift_rigidity_test(cx, seed=args.seed_value, prime=args.prime, ignore_impure=True)
    sections["shift_test"] = shift_test
    agreement["rank_vs_shift"] = shift_test == verdict.rigid
    sh = shifting.exterior_shift(cx, seed=args.seed_value, prime=args.prime)
    props = shifting.verify_shift_properties(cx, sh)
    sections["shift"] = {"facets": _faces(sh.complex.facets()), "properties": props.to_json()}
    agreement["shift_properties"] = props.ok

    agreement["top_betti_implies_dependent"] = not (sections["betti"][-1] > 0 and independent)
    phi_full = grassmann.phi_rank(cx.top, n, d) == len(cx.top)
    agreement["independent_implies_phi_full_rank"] = phi_full or not independent

    if n <= PHI_ROUTE_MAX_N:
        cross = grassmann.cross_check_independence(cx.top, n, d, **kw)
        sections["phi"] = cross.to_json()
        agreement["rank_vs_phi_route"] = cross.agree
    else:
        sections["phi"] = {"skipped": f"n > {PHI_ROUTE_MAX_N}"}

    if d <= 2 and pure and n - 1 <= args.limit_vertices:
        comb = orientations.rigid_combinatorial(cx, limit=args.limit_vertices, trails=not args.vertex_distinct)
        sections["combinatorial"] = comb.to_json()
        agreement["rank_vs_combinatorial"] = comb.rigid == verdict.rigid
    else:
        sections["combinatorial"] = {"skipped": "needs a pure complex with d <= 2 within the vertex limit"}

    if pure:
        audit = bounds.audit_f_vector(cx)
        sections["bounds"] = audit.to_json()
        is_basis = verdict.rigid and independent
        agreement["basis_meets_bounds"] = audit.meets_all or not is_basis
        cert = global_rigidity.certify_globally_rigid(cx, depth_limit=args.depth, seed=args.seed_value, prime=args.prime)
        sections["global"] = cert.to_json()
        agreement["global_implies_local"] = verdict.rigid or not cert.certified
        if cert.certified:
            agreement["certificate_replays"] = global_rigidity.replay_certificate(cx, cert)
    else:
        sections["bounds"] = sections["global"] = {"skipped": "complex is not pure"}

    report["sections"] = sections
    report["agreement"] = agreement
    report["all_agree"] = all(agreement.values())
    return report


def cmd_analyze(args):
    cx = _load_complex(args)
    report = analyze(cx, args)
    if not report["all_agree"]:
        raise Disagreement(report)
    return report


COMMANDS = {
    "rigidity": (cmd_rigidity, "local rigidity verdict"),
    "rank": (cmd_rank, "generic rank of the top simplices"),
    "independent": (cmd_independent, "independence in the rigidity matroid"),
    "basis": (cmd_basis, "whether the top simplices form a basis"),
    "flexdim": (cmd_flexdim, "dimension of trivial flexes (--n, --d)"),
    "measure": (cmd_measure, "signed volumes at a configuration (--config)"),
    "betti": (cmd_betti, "f-vector and reduced Betti numbers"),
    "phi": (cmd_phi, "Phi restricted to the facets, rank and column basis"),
    "orient": (cmd_orient, "check (--check) or find (--find) ACT-free orientations"),
    "rigid2-comb": (cmd_rigid2_comb, "combinatorial rigidity for d <= 2"),
    "shift": (cmd_shift, "exterior algebraic shift"),
    "bounds": (cmd_bounds, "face-number bound audit"),
    "lgrc": (cmd_lgrc, "lexicographically greedy rigid complex (--n, --d)"),
    "complete": (cmd_complete, "complete complex (--n, --d)"),
    "global-certify": (cmd_global_certify, "certify generic global rigidity"),
    "global-replay": (cmd_global_replay, "replay a certificate (--cert)"),
    "analyze": (cmd_analyze, "run every applicable analysis and cross-check"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="JSON input file (default: stdin)")
    common.add_argument("--seed", default=str(DEFAULT_SEED), help="integer seed or 'random'")
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--limit-vertices", type=int, default=orientations.ORDER_VERTEX_LIMIT)
    common.add_argument("--depth", type=int, default=None, help="vertex-removal depth (default n)")
    common.add_argument("--ignore-impure", action="store_true")
    common.add_argument("--vertex-distinct", action="store_true", help="read ACTs as vertex-distinct cycles")
    common.add_argument("--n", type=int)
    common.add_argument("--d", type=int)

    parser = argparse.ArgumentParser(prog="volrig", description="Signed-volume rigidity of simplicial complexes.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "measure":
            p.add_argument("--config", help="configuration JSON {'points': [[...], ...]}")
            p.add_argument("--matrix", action="store_true", help="also emit the rigidity matrix")
        elif name == "orient":
            mode = p.add_mutually_exclusive_group()
            mode.add_argument("--check", action="store_true", help="input edges are directed (default)")
            mode.add_argument("--find", action="store_true", help="input edges are undirected")
        elif name == "shift":
            p.add_argument("--order", choices=("lex", "lgrc-first"), default="lex")
        elif name == "global-replay":
            p.add_argument("--cert", help="certificate JSON from global-certify")
    return parser


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for v in obj:
            lines.extend(_text(v, indent) if isinstance(v, dict) else [f"{pad}- {json.dumps(v)}"])
    else:
        lines.append(f"{pad}{json.dumps(obj)}")
    return lines


def _emit(report, fmt: str, stream):
    if fmt == "text":
        stream.write("\n".join(_text(report)) + "\n")
    else:
        stream.write(json.dumps(report, indent=2) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    handler = COMMANDS[args.command][0]
    try:
        args.seed_value = _seed(args)
        PrimeField(args.prime)
        if args.trials < 1:
            raise InputError("--trials must be positive")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore" if args.format == "json" else "default")
            report = handler(args)
    except Disagreement as exc:
        _emit(exc.report, args.format, sys.stdout)
        sys.stderr.write("theory-violation: oracles disagree; see the agreement section\n")
        return EXIT_DISAGREE
    except (InputError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    _emit(report, args.format, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
