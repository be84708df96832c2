"""Command-line front end.

Exit codes: 0 affirmative/success, 1 negative verdict, 2 usage or
input error.  Every subcommand takes --json for machine output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cones, oracles, rigidity, trees, ultrametrics
from .clade_graphs import clade_graph, restricted_clade_graph
from .errors import TreePairFanError


def _read(path):
    with open(path) as fh:
        return fh.read()


def _load_graph(path):
    text = _read(path)
    if text.lstrip().startswith("{"):
        return rigidity.SimpleGraph.from_json(text)
    return rigidity.SimpleGraph.from_edge_list(text)


def _load_tree(path):
    text = _read(path)
    if text.lstrip().startswith("{"):
        return trees.tree_from_json(text)
    return trees.from_newick(text)


def _load_pairvector(path):
    return ultrametrics.PairVector.from_json(_read(path))


def _load_cladeset(path):
    return cones.CladeSet.from_json(_read(path))


def _emit(args, data, human):
    if getattr(args, "json", False):
        print(json.dumps(data))
    else:
        print(human)


def cmd_laman_check(args):
    h = _load_graph(args.graph)
    target = 2 * h.n - 3
    if len(h.edges) != target:
        sign = ">" if len(h.edges) > target else "<"
        reason = "|E|=%d %s %d" % (len(h.edges), sign, target)
        _emit(args, {"laman": False, "reason": reason},
              "NOT LAMAN: %s" % reason)
        return 1
    verdict, bad = rigidity.is_laman(h, method=args.method)
    if verdict:
        _emit(args, {"laman": True}, "LAMAN")
        return 0
    if bad is None:
        reason = "|E|=%d != %d" % (len(h.edges), target)
        _emit(args, {"laman": False, "reason": reason},
              "NOT LAMAN: %s" % reason)
    else:
        _emit(args, {"laman": False, "violating_subset": sorted(bad)},
              "NOT LAMAN: subset %s too dense" % sorted(bad))
    return 1


def cmd_rigidity_rank(args):
    h = _load_graph(args.graph)
    rank = rigidity.generic_rigidity_rank(h)
    rigid = rank == 2 * h.n - 3
    _emit(args, {"rank": rank, "rigid": rigid},
          "rank %d (%s)" % (rank, "rigid" if rigid else "flexible"))
    return 0 if rigid else 1


def cmd_henneberg_decompose(args):
    h = _load_graph(args.graph)
    dec = rigidity.henneberg_decompose(h)
    if not dec:
        _emit(args, {"henneberg": False, "reason": dec.reason},
              "NOT HENNEBERG: %s" % dec.reason)
        return 1
    moves = [{"kind": m.kind, "vertex": m.new_vertex,
              "neighbors": list(m.neighbors),
              "removed_edge": list(m.removed_edge) if m.removed_edge else None}
             for m in dec.moves]
    _emit(args, {"henneberg": True, "base": list(dec.base), "moves": moves},
          "HENNEBERG: base %s, %d moves\n%s"
          % (list(dec.base), len(moves),
             "\n".join(repr(m) for m in dec.moves)))
    return 0


def cmd_certificate_build(args):
    h = _load_graph(args.graph)
    cert = rigidity.build_certificate(h)
    print(cert.to_json(graph=h))
    return 0


def cmd_certificate_verify(args):
    h = _load_graph(args.graph)
    t1 = _load_tree(args.t1)
    t2 = _load_tree(args.t2)
    ok = rigidity.verify_certificate(h, t1, t2)
    _emit(args, {"verified": ok}, "VERIFIED" if ok else "NOT A CERTIFICATE")
    return 0 if ok else 1


def cmd_certificate_search(args):
    h = _load_graph(args.graph)
    found = rigidity.min_rigid_by_search(h, max_n=args.max_n)
    if found is None:
        _emit(args, {"found": False}, "NO CERTIFICATE PAIR")
        return 1
    t1, t2 = found
    data = {"found": True, "t1": json.loads(trees.to_json(t1)),
            "t2": json.loads(trees.to_json(t2))}
    _emit(args, data, "FOUND:\n  T1 = %s\n  T2 = %s"
          % (trees.to_newick(t1), trees.to_newick(t2)))
    return 0


def cmd_tree_topology(args):
    d = _load_pairvector(args.pairvector)
    w = ultrametrics.topology(d)
    print(trees.weighted_to_json(w))
    return 0


def cmd_tree_eval(args):
    w = trees.weighted_from_json(_read(args.weighted_tree))
    print(ultrametrics.evaluate(w).to_json())
    return 0


def cmd_cone_member(args):
    d = _load_pairvector(args.pairvector)
    face = _load_cladeset(args.cladeset)
    ok, res = cones.in_cone_KS(d, face)
    if ok:
        coeffs, lam = res
        data = {"member": True,
                "coefficients": {",".join(map(str, sorted(c))): str(t)
                                 for c, t in coeffs.items()},
                "lineality": str(lam)}
        _emit(args, data, "MEMBER: %s" % data["coefficients"])
        return 0
    _emit(args, {"member": False, "reason": res}, "NOT A MEMBER: %s" % res)
    return 1


def cmd_cone_fsystem(args):
    face = _load_cladeset(args.cladeset)
    system = cones.f_system(face)
    if args.json:
        print(system.to_json())
    else:
        print(system.to_text())
    return 0


def cmd_cone_dim(args):
    face = _load_cladeset(args.cladeset)
    _emit(args, {"dim": cones.dim_KS(face)}, str(cones.dim_KS(face)))
    return 0


def cmd_trop_member(args):
    d = _load_pairvector(args.pairvector)
    ok, witness = cones.in_trop_cm2(d, max_n=args.max_n)
    if not ok:
        _emit(args, {"member": False}, "NOT A SUM OF TWO ULTRAMETRICS")
        return 1
    t1, t2, u1, u2 = witness
    data = {"member": True,
            "t1": json.loads(trees.to_json(t1)),
            "t2": json.loads(trees.to_json(t2)),
            "u1": json.loads(u1.to_json()), "u2": json.loads(u2.to_json())}
    _emit(args, data, "MEMBER\n  T1 = %s\n  T2 = %s\n  u1 = %s\n  u2 = %s"
          % (trees.to_newick(t1), trees.to_newick(t2),
             u1.values(), u2.values()))
    return 0


def cmd_fan_faces(args):
    if args.n > args.max_n:
        print("refusing: n=%d above --max-n=%d" % (args.n, args.max_n),
              file=sys.stderr)
        return 2
    all_trees = trees.enumerate_rooted_trees(args.n)
    seen = set()
    for t1 in all_trees:
        for t2 in all_trees:
            face = cones.clade_set_of(t1, t2)
            if face in seen:
                continue
            seen.add(face)
            if args.max_dim is not None and cones.dim_KS(face) > args.max_dim:
                continue
            print(face.to_json())
    return 0


def cmd_cladegraph(args):
    t1 = _load_tree(args.t1)
    t2 = _load_tree(args.t2)
    if args.graph:
        g = restricted_clade_graph(t1, t2, _load_graph(args.graph))
    else:
        g = clade_graph(t1, t2)
    print(g.to_dot() if args.dot else g.to_json())
    return 0


def cmd_catalog(args):
    for g in oracles.catalog_tight_graphs(args.n):
        print("; ".join("%d %d" % e for e in sorted(g.edges)))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tpf", description="ultrametric cones, tree-pair fans, and "
        "rigidity certificates")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *specs, **kw):
        p = sub.add_parser(name, **kw)
        for spec in specs:
            flags, opts = spec
            p.add_argument(*flags, **opts)
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
        p.set_defaults(func=func)
        return p

    add("laman-check", cmd_laman_check,
        (["graph"], {}),
        (["--method"], {"default": "pebble",
                        "choices": ["pebble", "subsets"]}))
    add("rigidity-rank", cmd_rigidity_rank, (["graph"], {}))
    add("henneberg-decompose", cmd_henneberg_decompose, (["graph"], {}))
    add("certificate-build", cmd_certificate_build, (["graph"], {}))
    add("certificate-verify", cmd_certificate_verify,
        (["graph"], {}), (["t1"], {}), (["t2"], {}))
    add("certificate-search", cmd_certificate_search,
        (["graph"], {}),
        (["--max-n"], {"type": int, "default": 6}))
    add("tree-topology", cmd_tree_topology, (["pairvector"], {}))
    add("tree-eval", cmd_tree_eval, (["weighted_tree"], {}))
    add("cone-member", cmd_cone_member,
        (["pairvector"], {}), (["cladeset"], {}))
    add("cone-fsystem", cmd_cone_fsystem, (["cladeset"], {}))
    add("cone-dim", cmd_cone_dim, (["cladeset"], {}))
    add("trop-member", cmd_trop_member,
        (["pairvector"], {}),
        (["--max-n"], {"type": int, "default": 6}))
    add("fan-faces", cmd_fan_faces,
        (["n"], {"type": int}),
        (["--max-dim"], {"type": int, "default": None}),
        (["--max-n"], {"type": int, "default": 6}))
    add("cladegraph", cmd_cladegraph,
        (["t1"], {}), (["t2"], {}),
        (["--graph"], {"default": None}),
        (["--dot"], {"action": "store_true"}))
    add("catalog", cmd_catalog, (["n"], {"type": int}))
    return parser


_GROUPS = {"laman", "rigidity", "henneberg", "certificate", "tree",
           "cone", "trop", "fan"}


def run(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    argv = list(argv)
    # allow the two-word spelling: "laman check" == "laman-check"
    if len(argv) >= 2 and argv[0] in _GROUPS and not argv[1].startswith("-"):
        argv = ["%s-%s" % (argv[0], argv[1])] + argv[2:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (TreePairFanError, OSError, ValueError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
