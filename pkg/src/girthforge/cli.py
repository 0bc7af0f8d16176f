"""Command line interface.

Subcommands mirror the library layers: ``gen`` builds graphs and writes
an edge list plus an optional JSON sidecar, ``check`` measures girth or
validates regularity and bipartiteness, ``bound`` prints exact rational
lower bounds, ``certify``/``audit`` produce and re-check sum-bound
certificates, and ``scheme`` realizes and verifies star schemes.

Exit codes: 0 success or verified, 1 verification failure, 2 bad input
or usage, 3 budget or retry exhaustion.  Failures raised by the library
are emitted as one-line JSON objects on stderr.  All stdout payloads
are JSON with sorted keys (or a bare value for ``bound``), so identical
inputs and flags produce byte-identical output.
"""

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass

from . import bounds, certificate, family, graphs, scheme
from .errors import BadSize, GirthforgeError, NotBipartite, NotRegular
from .rational import decimal_str, ratio_str

SEED_ENV = "GIRTHFORGE_SEED"


@dataclass(frozen=True)
class RunConfig:
    """Resolved global options shared by the subcommand handlers."""

    command: str
    seed: object
    jobs: int
    decimal: bool


def _resolve_seed(args) -> object:
    seed = getattr(args, "seed", None)
    if seed is not None:
        return seed
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise BadSize("seed environment variable is not an integer",
                      env=SEED_ENV, got=raw)


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True,
                                separators=(",", ":")) + "\n")


def _fmt(value, cfg: RunConfig) -> str:
    return decimal_str(value) if cfg.decimal else ratio_str(value)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise BadSize("cannot read input file", path=path, reason=str(exc))


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_graph(path: str) -> graphs.Graph:
    return graphs.parse_edge_list(_read(path))


def _load_member(args) -> family.GdGraph:
    g = _load_graph(args.input)
    return family.GdGraph.from_json(_read(args.sidecar), g)


def _write_graph_outputs(args, g: graphs.Graph, sidecar_json=None) -> None:
    _write(args.output, graphs.format_edge_list(g))
    if getattr(args, "sidecar", None):
        if sidecar_json is None:
            raise BadSize("no sidecar is defined for this generator")
        _write(args.sidecar, sidecar_json)


def _parse_parts(text: str):
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise BadSize("part sizes must be comma-separated integers",
                      got=text)
    if not parts:
        raise BadSize("empty part size list")
    return parts


def _parse_vertex_set(text: str):
    out = []
    for tok in text.split(","):
        tok = tok.strip().lstrip("v")
        if not tok:
            raise BadSize("empty vertex token in set", got=text)
        try:
            out.append(int(tok))
        except ValueError:
            raise BadSize("vertex tokens must be integers, optionally "
                          "prefixed with v", got=tok)
    return tuple(out)


# ---------------------------------------------------------------- gen


def _cmd_gen_cycle(args, cfg: RunConfig) -> int:
    member = family.build_cycle(args.n)
    _write_graph_outputs(args, member.graph, member.to_json())
    _emit({"command": "gen cycle", "girth": args.n,
           "m": member.graph.m, "n": member.graph.n})
    return 0


def _cmd_gen_gd(args, cfg: RunConfig) -> int:
    member = family.build_member(_parse_parts(args.parts), seed=cfg.seed)
    _write_graph_outputs(args, member.graph, member.to_json())
    _emit({"command": "gen gd", "d": member.d, "m": member.graph.m,
           "n": member.graph.n, "seed": cfg.seed})
    return 0


def _cmd_gen_h(args, cfg: RunConfig) -> int:
    base = family.GdGraph.from_json(_read(args.base_sidecar),
                                    _load_graph(args.base))
    if args.pi_file:
        raw = json.loads(_read(args.pi_file))
        pi = {int(a): int(b) for a, b in raw.items()}
    else:
        a_side = sorted(base.bipartition.a_side)
        b_side = sorted(base.bipartition.b_side)
        random.Random(cfg.seed).shuffle(b_side)
        pi = dict(zip(a_side, b_side))
    member = family.build_h(args.m, base, pi)
    _write_graph_outputs(args, member.graph, member.to_json())
    _emit({"command": "gen h", "copies": args.m, "d": member.d,
           "m": member.graph.m, "n": member.graph.n, "seed": cfg.seed})
    return 0


def _cmd_gen_pigraph(args, cfg: RunConfig) -> int:
    pg = family.build_pi_graph(args.girth, args.n, seed=cfg.seed,
                               max_retries=args.retries)
    _write_graph_outputs(args, pg.graph, pg.to_json())
    _emit({"command": "gen pigraph", "girth": pg.girth,
           "m": pg.graph.m, "n": pg.graph.n, "seed": cfg.seed,
           "surgery": pg.surgery})
    return 0


def _cmd_gen_large_girth(args, cfg: RunConfig) -> int:
    if args.policy == family.GUARANTEED:
        report = family.build_large_girth(args.d, args.girth,
                                          policy=family.GUARANTEED)
        sys.stdout.write(report.to_json() + "\n")
        return 0
    if not args.output:
        raise BadSize("--output is required for practical builds")
    member, chords = family.build_large_girth(
        args.d, args.girth, policy=family.PRACTICAL, seed=cfg.seed,
        max_retries=args.retries)
    _write_graph_outputs(args, member.graph, member.to_json())
    if args.chords_out:
        doc = {} if chords is None else {str(a): b
                                         for a, b in sorted(chords.items())}
        _write(args.chords_out, json.dumps(doc, sort_keys=True,
                                           separators=(",", ":")) + "\n")
    measured = graphs.girth(member.graph, jobs=cfg.jobs)
    _emit({"command": "gen large-girth", "d": args.d,
           "girth": int(measured), "m": member.graph.m,
           "n": member.graph.n, "seed": cfg.seed})
    return 0


# -------------------------------------------------------------- check


def _cmd_check_girth(args, cfg: RunConfig) -> int:
    g = _load_graph(args.input)
    val = graphs.girth(g, jobs=cfg.jobs)
    doc = {"girth": "infinite" if val == graphs.INFINITE else int(val)}
    if args.min is not None:
        doc["ok"] = val >= args.min
    _emit(doc)
    return 0 if doc.get("ok", True) else 1


def _cmd_check_regular(args, cfg: RunConfig) -> int:
    g = _load_graph(args.input)
    degrees = sorted({g.degree(v) for v in range(g.n)})
    if len(degrees) > 1:
        raise NotRegular("vertex degrees differ", degrees=degrees)
    d = degrees[0] if degrees else 0
    if args.d is not None and d != args.d:
        raise NotRegular("unexpected degree", want=args.d, got=d)
    _emit({"d": d, "regular": True})
    return 0


def _cmd_check_bipartite(args, cfg: RunConfig) -> int:
    g = _load_graph(args.input)
    color = [-1] * g.n
    for src in range(g.n):
        if color[src] >= 0:
            continue
        color[src] = 0
        queue = [src]
        while queue:
            u = queue.pop()
            for w in g.neighbors(u):
                if color[w] < 0:
                    color[w] = color[u] ^ 1
                    queue.append(w)
                elif color[w] == color[u]:
                    raise NotBipartite("adjacent vertices share a side",
                                       edge=[u, w])
    sides = [sum(1 for c in color if c == 0),
             sum(1 for c in color if c == 1)]
    _emit({"bipartite": True, "sides": sides})
    return 0


# -------------------------------------------------------------- bound


def _cmd_bound(args, cfg: RunConfig) -> int:
    g = _load_graph(args.input)
    if args.kind == "star-cover":
        value = bounds.star_cover_bound(g).value
    elif args.kind == "multipartite-cover":
        value = bounds.multipartite_cover_bound(g).value
    elif args.set is not None:
        value = bounds.entropy_set_bound(g, _parse_vertex_set(args.set),
                                         full_families=args.full_families)
    else:
        value = bounds.entropy_bound(g, objective=args.objective,
                                     full_families=args.full_families)
    sys.stdout.write(_fmt(value, cfg) + "\n")
    return 0


# ----------------------------------------------------- certify / audit


def _cmd_certify(args, cfg: RunConfig) -> int:
    member = _load_member(args)
    cert = certificate.certify_sum_bound(member)
    doc = certificate.certificate_to_json(cert)
    if args.output:
        _write(args.output, doc)
        _emit({"command": "certify", "total": ratio_str(cert.total)})
    else:
        sys.stdout.write(doc + "\n")
    return 0


def _cmd_audit(args, cfg: RunConfig) -> int:
    g = _load_graph(args.input)
    cert = certificate.certificate_from_json(_read(args.cert))
    ok, reason = certificate.audit_explain(g, cert, trials=args.trials,
                                           seed=cfg.seed)
    _emit({"ok": ok, "reason": reason, "seed": cfg.seed,
           "total": ratio_str(cert.total), "trials": args.trials})
    return 0 if ok else 1


# -------------------------------------------------------------- scheme


def _realized(args) -> scheme.DecompositionScheme:
    g = _load_graph(args.input)
    return g, scheme.realize_scheme(scheme.make_star_decomposition(g),
                                    args.q)


def _cmd_scheme_realize(args, cfg: RunConfig) -> int:
    _, sch = _realized(args)
    doc = sch.to_json()
    if args.output:
        _write(args.output, doc)
        _emit({"command": "scheme realize", "q": args.q,
               "ratio": ratio_str(scheme.structural_ratio(sch)),
               "stars": len(sch.stars)})
    else:
        sys.stdout.write(doc + "\n")
    return 0


def _cmd_scheme_verify(args, cfg: RunConfig) -> int:
    g, sch = _realized(args)
    if args.structural_only:
        _emit({"mode": "structural", "perfect": None, "q": args.q,
               "ratio": ratio_str(scheme.structural_ratio(sch))})
        return 0
    jd = scheme.JointDistribution(sch)
    report = scheme.verify_perfect(g, jd)
    doc = json.loads(report.to_json())
    doc.update({"mode": "exhaustive", "perfect": report.perfect,
                "q": args.q, "states": jd.states})
    _emit(doc)
    return 0 if report.perfect else 1


# ------------------------------------------------------------- parser


def _add_seed(p) -> None:
    p.add_argument("--seed", type=int, default=None,
                   help=f"RNG seed (falls back to ${SEED_ENV})")


def _add_gen_io(p, sidecar=True) -> None:
    p.add_argument("-o", "--output", required=True,
                   help="edge list output path")
    if sidecar:
        p.add_argument("--sidecar", default=None,
                       help="structure metadata output path (JSON)")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="girthforge",
        description="Bipartite graph families with large girth, exact "
                    "rational bounds on secret-sharing ratios, and "
                    "machine-checked certificates.")
    top.add_argument("--jobs", type=int, default=1,
                     help="threads for parallel inner loops; never "
                          "affects results")
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="build graphs")
    gsub = gen.add_subparsers(dest="generator", required=True)

    p = gsub.add_parser("cycle", help="even cycle, the degree-2 family "
                                      "member")
    p.add_argument("--n", type=int, required=True)
    _add_gen_io(p)
    p.set_defaults(func=_cmd_gen_cycle)

    p = gsub.add_parser("gd", help="regular bipartite family member "
                                   "from junction counts")
    p.add_argument("--parts", required=True,
                   help="comma-separated copy counts, innermost first "
                        "(e.g. 6,5)")
    _add_gen_io(p)
    _add_seed(p)
    p.set_defaults(func=_cmd_gen_gd)

    p = gsub.add_parser("h", help="join m copies of a member along "
                                  "matchings")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--base", required=True, help="base member edge list")
    p.add_argument("--base-sidecar", required=True,
                   help="base member metadata JSON")
    p.add_argument("--pi-file", default=None,
                   help="JSON map from base A-side onto B-side used "
                        "for the final junction")
    _add_gen_io(p)
    _add_seed(p)
    p.set_defaults(func=_cmd_gen_h)

    p = gsub.add_parser("pigraph", help="cubic chord graph with girth "
                                        "above a target")
    p.add_argument("--girth", type=int, required=True,
                   help="build stops once girth exceeds this")
    p.add_argument("--n", type=int, required=True,
                   help="number of chord positions (half the vertices)")
    p.add_argument("--retries", type=int, default=10)
    _add_gen_io(p)
    _add_seed(p)
    p.set_defaults(func=_cmd_gen_pigraph)

    p = gsub.add_parser("large-girth",
                        help="d-regular bipartite member with girth at "
                             "least the target")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--girth", type=int, required=True)
    p.add_argument("--policy", choices=[family.PRACTICAL,
                                        family.GUARANTEED],
                   default=family.PRACTICAL,
                   help="practical builds a concrete graph; guaranteed "
                        "prints closed-form size bounds only")
    p.add_argument("--retries", type=int, default=10)
    p.add_argument("-o", "--output", default=None,
                   help="edge list output path (practical only)")
    p.add_argument("--sidecar", default=None)
    p.add_argument("--chords-out", default=None,
                   help="write the level-2 chord map as JSON")
    _add_seed(p)
    p.set_defaults(func=_cmd_gen_large_girth)

    chk = sub.add_parser("check", help="measure and validate graphs")
    csub = chk.add_subparsers(dest="checker", required=True)

    p = csub.add_parser("girth", help="exact girth")
    p.add_argument("--input", required=True)
    p.add_argument("--min", type=int, default=None,
                   help="exit 1 unless girth is at least this")
    p.set_defaults(func=_cmd_check_girth)

    p = csub.add_parser("regular", help="equal vertex degrees")
    p.add_argument("--input", required=True)
    p.add_argument("--d", type=int, default=None,
                   help="also require this exact degree")
    p.set_defaults(func=_cmd_check_regular)

    p = csub.add_parser("bipartite", help="two-colorability")
    p.add_argument("--input", required=True)
    p.set_defaults(func=_cmd_check_bipartite)

    bnd = sub.add_parser("bound",
                         help="exact rational lower/upper bounds")
    bnd.add_argument("kind", choices=["star-cover", "multipartite-cover",
                                      "entropy"])
    bnd.add_argument("--input", required=True)
    bnd.add_argument("--objective", choices=["minmax", "sum"],
                     default="minmax", help="entropy objective")
    bnd.add_argument("--set", default=None,
                     help="entropy only: bound the sum over these "
                          "vertices, e.g. v2,v3")
    bnd.add_argument("--full-families", action="store_true",
                     help="entropy only: add inequalities for every "
                          "subset pair instead of the pruned family")
    bnd.add_argument("--decimal", action="store_true",
                     help="print 6 decimal places instead of p/q")
    bnd.set_defaults(func=_cmd_bound)

    p = sub.add_parser("certify",
                       help="build a machine-checkable sum bound "
                            "certificate for a family member")
    p.add_argument("--input", required=True)
    p.add_argument("--sidecar", required=True,
                   help="member metadata JSON from gen")
    p.add_argument("-o", "--output", default=None,
                   help="certificate path; omitted prints to stdout")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("audit",
                       help="independently re-check a certificate "
                            "against a graph")
    p.add_argument("--input", required=True)
    p.add_argument("--cert", required=True)
    p.add_argument("--trials", type=int, default=32,
                   help="random probes per decomposition identity")
    _add_seed(p)
    p.set_defaults(func=_cmd_audit)

    sch = sub.add_parser("scheme", help="star schemes over a prime field")
    ssub = sch.add_subparsers(dest="action", required=True)

    p = ssub.add_parser("realize", help="emit the scheme description")
    p.add_argument("--input", required=True)
    p.add_argument("--q", type=int, required=True, help="prime field size")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_scheme_realize)

    p = ssub.add_parser("verify",
                        help="exhaustively verify perfectness and "
                             "measure the ratio")
    p.add_argument("--input", required=True)
    p.add_argument("--q", type=int, required=True, help="prime field size")
    p.add_argument("--structural-only", action="store_true",
                   help="skip enumeration; report the designed ratio")
    p.set_defaults(func=_cmd_scheme_verify)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(command=args.command, seed=_resolve_seed(args),
                        jobs=max(1, args.jobs),
                        decimal=getattr(args, "decimal", False))
        return args.func(args, cfg)
    except GirthforgeError as exc:
        sys.stderr.write(json.dumps(exc.to_json(), sort_keys=True,
                                    separators=(",", ":")) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
