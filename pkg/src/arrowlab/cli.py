"""Command-line interface.

Every command prints a one-line machine-parsable summary first, then detail.
Exit codes: 0 holds/accepted/verified, 1 fails/refuted, 2 usage, 3 resource guard.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .arrows import (ArrowQuery, ResourceGuardError, arrow_str, decide_arrow,
                     default_threads, ramsey_number)
from .certificates import (dumps_certificate, hc_certificate, verdict_certificate, verify_file,
                           wc_certificate, write_certificate)
from .colorings import (ColoringFormatError, delta_coloring, dumps_coloring, ek_coloring,
                        format_color, load_coloring, parse_color, random_coloring,
                        save_coloring, varrho_coloring)
from .graphs import color_graph, vertex_connectivity
from .ordinal import Domain, OrdinalSyntaxError, parse_ordinal, sample_below
from .walks import rho, rho_fiber, varrho
from .wellconn import branches, brute_force_max_wc, is_well_connected, max_wc, wc_tree


class UsageError(Exception):
    pass


def _ordinal_list(text):
    return [parse_ordinal(s) for s in text.split(",") if s.strip()]


def _out(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _query(args, **kw):
    threads = args.threads if args.threads is not None else default_threads()
    return dict(engine=args.engine, threads=threads,
                deterministic=args.deterministic or threads == 1,
                node_budget=args.node_budget, time_budget=args.time_budget, **kw)


# --- arrow ---------------------------------------------------------------------

def cmd_arrow_decide(args):
    q = ArrowQuery(args.kind, args.n, args.m, args.colors, **_query(args))
    v = decide_arrow(q)
    label = arrow_str(q.kind, q.n, q.m, q.colors)
    print(f"{'HOLDS' if v.holds else 'FAILS'} {label}")
    print(f"engine={q.engine} nodes={v.stats['nodes']} prunes={v.stats['prunes']} "
          f"leaves={v.stats['leaves']}")
    print(f"time={v.wall_time:.3f}s", file=sys.stderr)
    for k, val in sorted(v.witness_stats.items()):
        print(f"{k}={val}")
    if not v.holds:
        path = args.counterexample or f"counterexample_{q.kind}_{q.n}_{q.m}_{q.colors}.clr"
        save_coloring(v.counterexample, path)
        print(f"counterexample written to {path}")
        print(dumps_coloring(v.counterexample), end="")
    if args.cert:
        write_certificate(verdict_certificate(v), args.cert)
        print(f"certificate written to {args.cert}")
    return 0 if v.holds else 1


def cmd_arrow_number(args):
    opts = _query(args)
    engine = opts.pop("engine")
    n, verdicts = ramsey_number(args.kind, args.m, args.colors, args.n_max, engine=engine, **opts)
    head = f"{args.kind} ({args.m})^2_{args.colors}"
    print(f"NUMBER {head} = {n}" if n is not None else f"NUMBER {head} > {args.n_max}")
    for v in verdicts:
        print(f"  n={v.query.n}: {'holds' if v.holds else 'fails'} nodes={v.stats['nodes']}")
    if args.cert:
        write_certificate({"kind": "arrow-scan", "verdicts": [verdict_certificate(v) for v in verdicts]},
                          args.cert)
    return 0 if n is not None else 1


# --- coloring ------------------------------------------------------------------

def _gen_domain(args):
    if args.vertices:
        return Domain.explicit(_ordinal_list(args.vertices))
    if args.domain is None:
        raise UsageError("--domain or --vertices is required for this family")
    bound = parse_ordinal(args.domain)
    if args.sample is not None:
        return Domain("explicit", sample_below(bound, args.sample, random.Random(args.seed)))
    if not bound.is_finite:
        raise UsageError(f"infinite domain {bound} needs --sample")
    return Domain.initial(int(bound))


def cmd_coloring_gen(args):
    fam = args.family
    if fam == "ek":
        c = ek_coloring(_gen_domain(args))
    elif fam == "varrho":
        c = varrho_coloring(_gen_domain(args))
    elif fam == "delta":
        if args.bits is None:
            raise UsageError("delta needs --bits")
        c = delta_coloring(args.bits)
    else:
        if args.n is None or args.arity is None:
            raise UsageError("random needs --n and --arity")
        c = random_coloring(args.n, args.arity, args.seed)
    text = dumps_coloring(c)
    if args.out and args.out != "-":
        _out(text, args.out)
        print(f"COLORING {fam} n={len(c.domain)} -> {args.out}")
    else:
        print(f"COLORING {fam} n={len(c.domain)}")
        sys.stdout.write(text)
    return 0


def cmd_coloring_show(args):
    c = load_coloring(args.file)
    arity = "unbounded" if c.arity is None else c.arity
    print(f"COLORING {c.family} n={len(c.domain)} arity={arity} domain={c.domain.kind}")
    els = c.domain.elements
    if c.domain.kind == "explicit":
        print("vertices: " + ", ".join(map(str, els)))
    for j in range(1, len(els)):
        vals = [str(c.eval(els[i], els[j])) for i in range(j)]
        print(f"{els[j]}: {' '.join(vals)}")
    return 0


# --- wc / hc / graph -----------------------------------------------------------

def _ambient(args, c):
    if getattr(args, "ambient", None):
        return Domain.explicit(_ordinal_list(args.ambient))
    return c.domain


def cmd_wc_check(args):
    c = load_coloring(args.coloring)
    D = _ambient(args, c)
    color = parse_color(args.color)
    cert = is_well_connected(c, color, _ordinal_list(args.set), D)
    obj = wc_certificate(c, cert)
    if cert.accepted:
        print(f"ACCEPT wc color={args.color} size={len(cert.witness)}")
        for p in cert.paths:
            print("  " + "-".join(map(str, p.vertices)))
    else:
        a, b = cert.failing_pair
        print(f"REJECT wc color={args.color} pair={a},{b}")
        print("  reachable from {}: {}".format(a, ",".join(map(str, cert.reachable))))
    if args.out:
        write_certificate(obj, args.out)
    else:
        sys.stdout.write(dumps_certificate(obj))
    return 0 if cert.accepted else 1


def cmd_wc_tree(args):
    c = load_coloring(args.coloring)
    D = _ambient(args, c)
    t = wc_tree(c, D, parse_color(args.color))
    bs = branches(t)
    print(f"TREE color={args.color} n={t.n} branches={len(bs)}")
    for b in range(t.n):
        print(f"  pred({t.labels[b]}) = {{{','.join(str(t.labels[a]) for a in t.below(b))}}}")
    for br in bs:
        print("  branch " + ",".join(map(str, br)))
    return 0


def cmd_wc_max(args):
    c = load_coloring(args.coloring)
    D = _ambient(args, c)
    res = max_wc(c, D)
    print("MAXWC " + " ".join(f"{format_color(k)}:{r.size}".replace(" ", "") for k, r in res.items()))
    for k, r in res.items():
        print(f"  color {k}: size {r.size} witness {','.join(map(str, r.witness))}")
    if args.brute:
        bf = brute_force_max_wc(c, D)
        agree = all(bf[k].size == res[k].size for k in res)
        print(f"  brute force {'agrees' if agree else 'DISAGREES'}")
        if not agree:
            return 1
    return 0


def cmd_hc_check(args):
    c = load_coloring(args.coloring)
    color = parse_color(args.color)
    obj = hc_certificate(c, color, _ordinal_list(args.set), _ambient(args, c))
    ok = obj["kind"] == "hc-witness"
    if ok:
        print(f"ACCEPT hc color={args.color} size={len(obj['witness'])}")
    else:
        print(f"REJECT hc color={args.color} pair={','.join(obj['failing_pair'])}")
    if args.out:
        write_certificate(obj, args.out)
    return 0 if ok else 1


def cmd_graph_connectivity(args):
    c = load_coloring(args.coloring)
    D = Domain.explicit(_ordinal_list(args.set)) if args.set else c.domain
    G = color_graph(c, D, parse_color(args.color))
    k = vertex_connectivity(G)
    print(f"CONNECTIVITY color={args.color} n={G.n} kappa={k}")
    return 0


# --- walks / verify ------------------------------------------------------------

def cmd_walks(args):
    a = parse_ordinal(args.a)
    if args.fn == "rho":
        print(f"RHO {a} {parse_ordinal(args.b)} = {rho(a, parse_ordinal(args.b))}")
    elif args.fn == "varrho":
        u, v = varrho(a, parse_ordinal(args.b))
        print(f"VARRHO {a} {parse_ordinal(args.b)} = ({u},{v})")
    else:
        f = rho_fiber(a, int(args.b))
        print(f"FIBER {a} {args.b} size={len(f)}")
        print("  {" + ",".join(map(str, f.members)) + "}")
    return 0


def cmd_verify(args):
    res = verify_file(args.certificate)
    print(f"{'VERIFIED' if res.ok else 'INVALID'} {args.certificate}")
    print(f"  {res.message}")
    return 0 if res.ok else 1


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arrowlab", description="Finite partition-arrow laboratory.")
    p.add_argument("--version", action="version", version=f"arrowlab {__version__}")
    sub = p.add_subparsers(dest="group", required=True)

    def search_opts(sp):
        sp.add_argument("--kind", choices=["classical", "hc", "wc"], required=True)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--colors", type=int, required=True)
        sp.add_argument("--engine", choices=["exhaustive", "backtrack"], default="backtrack")
        sp.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: $ARROWLAB_THREADS or 1)")
        sp.add_argument("--deterministic", action="store_true")
        sp.add_argument("--node-budget", type=int, default=None)
        sp.add_argument("--time-budget", type=float, default=None)
        sp.add_argument("--cert", help="write the verdict certificate here")

    arrow = sub.add_parser("arrow").add_subparsers(dest="cmd", required=True)
    d = arrow.add_parser("decide")
    search_opts(d)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--counterexample", help="counterexample coloring path")
    d.set_defaults(func=cmd_arrow_decide)
    nb = arrow.add_parser("number")
    search_opts(nb)
    nb.add_argument("--n-max", type=int, required=True)
    nb.set_defaults(func=cmd_arrow_number)

    col = sub.add_parser("coloring").add_subparsers(dest="cmd", required=True)
    g = col.add_parser("gen")
    g.add_argument("--family", choices=["ek", "varrho", "delta", "random"], required=True)
    g.add_argument("--domain", help="ordinal bound, e.g. 6 or 'w^2'")
    g.add_argument("--vertices", help="explicit comma-separated ordinals")
    g.add_argument("--sample", type=int, help="random finite subset size below --domain")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--bits", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--arity", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_coloring_gen)
    s = col.add_parser("show")
    s.add_argument("file")
    s.set_defaults(func=cmd_coloring_show)

    def coloring_opts(sp, need_color=True, need_set=False):
        sp.add_argument("--coloring", required=True)
        if need_color:
            sp.add_argument("--color", required=True)
        if need_set:
            sp.add_argument("--set", required=True)
        sp.add_argument("--ambient", help="ambient vertex subset (default: whole domain)")

    wc = sub.add_parser("wc").add_subparsers(dest="cmd", required=True)
    w = wc.add_parser("check")
    coloring_opts(w, need_set=True)
    w.add_argument("--out")
    w.set_defaults(func=cmd_wc_check)
    w = wc.add_parser("tree")
    coloring_opts(w)
    w.set_defaults(func=cmd_wc_tree)
    w = wc.add_parser("max")
    coloring_opts(w, need_color=False)
    w.add_argument("--brute", action="store_true", help="cross-check by subset enumeration")
    w.set_defaults(func=cmd_wc_max)

    hc = sub.add_parser("hc").add_subparsers(dest="cmd", required=True)
    h = hc.add_parser("check")
    coloring_opts(h, need_set=True)
    h.add_argument("--out")
    h.set_defaults(func=cmd_hc_check)

    gr = sub.add_parser("graph").add_subparsers(dest="cmd", required=True)
    gc = gr.add_parser("connectivity")
    gc.add_argument("--coloring", required=True)
    gc.add_argument("--color", required=True)
    gc.add_argument("--set", help="restrict to these vertices")
    gc.set_defaults(func=cmd_graph_connectivity)

    wk = sub.add_parser("walks")
    wk.add_argument("fn", choices=["rho", "varrho", "fiber"])
    wk.add_argument("a")
    wk.add_argument("b", help="second ordinal (rho, varrho) or bound n (fiber)")
    wk.set_defaults(func=cmd_walks)

    v = sub.add_parser("verify")
    v.add_argument("certificate")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ResourceGuardError as exc:
        print(f"GUARD {exc}")
        return 3
    except (UsageError, OrdinalSyntaxError, ColoringFormatError, ValueError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
