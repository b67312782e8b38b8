"""Command-line front end: deterministic JSON reports over the lab modules.

Subcommands: verify, primes, schreier, rigidity, stability, corpus.  A JSON
config file can preload any flag (explicit flags win).  Reports are JSON
with sorted keys; exact rationals appear as "p/q" strings (integers plain),
so identical (config, seed) pairs produce byte-identical output.  Wall
times are opt-in via --timings precisely because they would break that
reproducibility.  Exit codes: 0 all checks pass, 1 a check failed, 2 usage
or config error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction

from . import __version__
from .arithmetic import SelectorProblem, find_witness_prime, residue_pair
from .errors import CapExceededError, DecompositionRequiredError, ParseError
from .groups import FiniteGroup, construct_group, default_corpus, parse_group_spec
from .perms import Permutation, hamming_distance, parse_permutation
from .rigidity import (GroupAction, action_centralizer,
                       biregular_double_centralizer,
                       centralizer_in_sym_bruteforce, class_power_types)
from .schreier import (EXHAUSTIVE_CAP, EXPANSION_CAP, cluster_scan,
                       component_mass_profile, components,
                       default_cluster_epsilon, directed_cycle_graph,
                       edge_expansion, enumerate_eps_automorphisms,
                       exact_automorphisms, histogram_csv, read_graph_file,
                       regular_action_graph, spectral_gap, symmetrized_degree)
from .sentences import (classify_nonabelian_simple,
                        commutator_coverage_bruteforce, congruence_oracle_alt,
                        congruence_sentence, phi1, phi2, prime_remark_oracle,
                        prime_remark_sentence, sentence_report)
from .stability import (STABILITY_BOUND, identity_preserving_scan, nearest_hom,
                        read_almost_hom_file, uniform_defect_report)

DEFAULT_SENTENCES = ["felgner", "congruence(1,3)", "prime_remark"]
_CONGRUENCE_ID = re.compile(r"^congruence\((\d+),\s*(\d+)\)$")


def _num(x):
    """Exact rationals as "p/q" strings, integral values as plain ints."""
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return _num(obj)
    if isinstance(obj, float):
        return round(obj, 12)
    if isinstance(obj, Permutation):
        return obj.to_cycle_string()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _write_output(args, report: dict) -> None:
    text = json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_plot_data(args, rows: list[str]) -> None:
    if args.plot_data:
        with open(args.plot_data, "w", encoding="utf-8") as fh:
            fh.write("\n".join(rows) + "\n")


def _split_outside_parens(text: str) -> list[str]:
    """Split on commas not nested in parentheses: congruence(1,3) stays whole."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _resolve_groups(spec_text: str) -> list[FiniteGroup]:
    if spec_text.strip() == "corpus":
        return [construct_group(s) for s in default_corpus()]
    return [construct_group(parse_group_spec(part.strip()))
            for part in spec_text.split(",") if part.strip()]


# -- verify ---------------------------------------------------------------------------

def _report_row(r, oracle_backed: bool) -> dict:
    row = {"group": r.group, "sentence": r.sentence, "strategy": r.strategy,
           "value": r.value, "oracle": r.oracle,
           "witness": dict(r.witness) if r.witness else None}
    row["pass"] = (r.value == r.oracle) if oracle_backed else None
    return row


def cmd_verify(args) -> tuple[dict, bool]:
    groups = _resolve_groups(args.groups)
    ids = _split_outside_parens(args.sentences)
    strategy = args.strategy
    rows = []
    for G in groups:
        for sid in ids:
            m = _CONGRUENCE_ID.match(sid)
            if sid == "felgner":
                covered = commutator_coverage_bruteforce(G)
                rows.append(_report_row(
                    sentence_report(G, "felgner.phi2", phi2(), strategy,
                                    oracle=covered), oracle_backed=True))
                rows.append({"group": G.name, "sentence": "felgner.verdict",
                             "strategy": "bruteforce",
                             "value": classify_nonabelian_simple(G),
                             "oracle": None, "witness": None, "pass": None})
            elif sid in ("felgner.phi1.literal", "felgner.phi1.generated"):
                reading = sid.rsplit(".", 1)[1]
                rows.append(_report_row(
                    sentence_report(G, sid, phi1(reading), strategy,
                                    oracle=classify_nonabelian_simple(G)),
                    oracle_backed=False))
            elif m:
                l, q = int(m.group(1)), int(m.group(2))
                spec = getattr(G, "spec", None)
                oracle = (congruence_oracle_alt(spec.n, l, q)
                          if spec is not None and spec.kind == "alt" else None)
                rows.append(_report_row(
                    sentence_report(G, sid, congruence_sentence(l, q), strategy,
                                    oracle=oracle),
                    oracle_backed=oracle is not None))
            elif sid == "prime_remark":
                spec = getattr(G, "spec", None)
                oracle = (prime_remark_oracle(spec.n)
                          if spec is not None and spec.kind == "sym" else None)
                rows.append(_report_row(
                    sentence_report(G, sid, prime_remark_sentence(), strategy,
                                    oracle=oracle),
                    oracle_backed=oracle is not None))
            else:
                raise ValueError(f"unknown sentence id {sid!r}")
    asserted = [r for r in rows if r["pass"] is not None]
    failed = [r for r in asserted if not r["pass"]]
    report = {
        "command": "verify",
        "config": {"groups": args.groups, "sentences": ids, "strategy": strategy},
        "checks": rows,
        "summary": {"rows": len(rows), "asserted": len(asserted),
                    "failed": len(failed)},
    }
    return report, not failed


# -- primes ---------------------------------------------------------------------------

def cmd_primes(args) -> tuple[dict, bool]:
    qs = [int(x) for x in args.q.split(",") if x.strip()]
    gammas = [int(x) for x in args.gamma.split(",") if x.strip()]
    if len(qs) != len(gammas):
        raise ValueError("--q and --gamma need the same length")
    problem = SelectorProblem(qs=tuple(qs), gamma=tuple(gammas))
    pairs = {q: residue_pair(q) for q in problem.qs}
    p = find_witness_prime(problem, floor=args.floor)
    checks = [{"check": f"p >= {args.floor}", "pass": p >= args.floor}]
    for q, g in problem.items():
        want = pairs[q].a(g)
        got = (pow(p, 4, q) - 1) % q
        checks.append({"check": f"p**4 - 1 = {want} mod {q}",
                       "pass": got == want})
    report = {
        "command": "primes",
        "config": {"q": qs, "gamma": gammas, "floor": args.floor},
        "p": p,
        "pairs": [{"q": rp.q, "a0": rp.a0, "a1": rp.a1, "b0": rp.b0,
                   "b1": rp.b1, "c": rp.c, "d": rp.d}
                  for rp in (pairs[q] for q in problem.qs)],
        "checks": checks,
    }
    return report, all(c["pass"] for c in checks)


# -- schreier -------------------------------------------------------------------------

def _resolve_graph(text: str):
    """regular:<group spec>, cycle:<n>, or file:<path>; returns (graph, group)."""
    kind, _, rest = text.partition(":")
    if kind == "regular" and rest:
        G = construct_group(parse_group_spec(rest))
        return regular_action_graph(G), G
    if kind == "cycle" and rest:
        return directed_cycle_graph(int(rest)), None
    if kind == "file" and rest:
        return read_graph_file(rest), None
    raise ValueError(f"graph must be regular:<group>, cycle:<n> or file:<path>,"
                     f" got {text!r}")


def cmd_schreier(args) -> tuple[dict, bool]:
    graph, G = _resolve_graph(args.graph)
    config = {"graph": args.graph, "mode": args.mode}
    if args.mode == "exact-autos":
        autos = exact_automorphisms(graph)
        dists = sorted({hamming_distance(p, q)
                        for i, p in enumerate(autos) for q in autos[i + 1:]})
        if not dists:
            pairwise = None
        elif len(dists) == 1:
            pairwise = _num(dists[0])
        else:
            pairwise = [_num(d) for d in dists]
        checks = [{"check": "pairwise distances all equal 1",
                   "pass": not dists or dists == [Fraction(1)]}]
        if G is not None:
            checks.append({"check": "count equals group order",
                           "pass": len(autos) == len(G)})
        report = {"command": "schreier", "config": config,
                  "count": len(autos), "pairwise_distance": pairwise,
                  "automorphisms": [p.to_cycle_string() for p in autos],
                  "checks": checks}
        return report, all(c["pass"] for c in checks)
    if args.mode == "report":
        gap = spectral_gap(graph)
        connected = len(components(graph)) == 1
        expansion = edge_expansion(graph) if graph.n <= EXPANSION_CAP else None
        checks = [{"check": "positive gap iff connected",
                   "pass": (gap > 1e-9) == connected}]
        if expansion is not None:
            checks.append({"check": "positive expansion iff positive gap",
                           "pass": (expansion > 0) == (gap > 1e-9)})
        report = {"command": "schreier", "config": config,
                  "n": graph.n, "labels": list(graph.labels),
                  "symmetrized_degree": symmetrized_degree(graph),
                  "mass_profile": [_num(f) for f in component_mass_profile(graph)],
                  "spectral_gap": gap,
                  "edge_expansion":
                      _num(expansion) if expansion is not None else None,
                  "connected": connected, "checks": checks}
        return report, all(c["pass"] for c in checks)
    if args.mode == "clusters":
        eps = default_cluster_epsilon(graph) if args.eps == "auto" \
            else Fraction(args.eps)
        search = args.search
        if search == "auto":
            search = "backtracking" if eps == 0 else (
                "exhaustive" if graph.n <= EXHAUSTIVE_CAP else "local-search")
        autos = enumerate_eps_automorphisms(graph, eps, mode=search,
                                            restarts=args.restarts,
                                            seed=args.seed)
        config.update({"eps": _num(eps), "search": search})
        if len(autos) < 2:
            report = {"command": "schreier", "config": config,
                      "automorphisms": len(autos), "clusters": None,
                      "checks": []}
            return report, True
        scan = cluster_scan(autos, graph, epsilon=eps)
        pair_total = len(autos) * (len(autos) - 1) // 2
        checks = [
            {"check": "histogram covers every pair",
             "pass": sum(c for _, c in scan.histogram) == pair_total},
            {"check": "clusters partition the automorphisms",
             "pass": sorted(i for c in scan.clusters for i in c)
             == list(range(len(autos)))},
        ]
        report = {
            "command": "schreier", "config": config,
            "automorphisms": len(autos),
            "clusters": [len(c) for c in scan.clusters],
            "gap_interval": [_num(scan.gap_interval[0]),
                             _num(scan.gap_interval[1])],
            "histogram": [[d.numerator, d.denominator, c]
                          for d, c in scan.histogram],
            "product_defects": {f"{i},{j}": _num(d)
                                for (i, j), d in scan.product_defects},
            "checks": checks,
        }
        _write_plot_data(args, histogram_csv(scan).splitlines())
        return report, all(c["pass"] for c in checks)
    raise ValueError(f"unknown schreier mode {args.mode!r}")


# -- rigidity -------------------------------------------------------------------------

def cmd_rigidity(args) -> tuple[dict, bool]:
    if args.check == "biregular":
        G = construct_group(parse_group_spec(args.group))
        rep = biregular_double_centralizer(G)
        checks = [
            {"check": "centralizer of the left copy is the right copy",
             "pass": rep.centralizer_is_right_copy},
            {"check": "double centralizer closes onto the left copy",
             "pass": rep.double_is_left_copy},
            {"check": "flip conjugates the centralizer onto the left copy",
             "pass": rep.flip_conjugates_centralizer_to_left},
            {"check": "flip swaps left and right generators",
             "pass": rep.generator_identities},
        ]
        report = {
            "command": "rigidity",
            "config": {"group": args.group, "check": "biregular"},
            "centralizer_order": rep.centralizer_order,
            "double_centralizer": "closes" if rep.double_is_left_copy else "differs",
            "flip_swap": rep.flip_conjugates_centralizer_to_left
            and rep.generator_identities,
            "checks": checks,
        }
        return report, all(c["pass"] for c in checks)
    if args.check == "action-centralizer":
        if not args.perms:
            raise ValueError("action-centralizer needs --perms")
        parsed = [parse_permutation(t.strip()) for t in args.perms.split(";")]
        top = max(p.degree for p in parsed)
        perms = [parse_permutation(p.to_cycle_string(), degree=top)
                 for p in parsed]
        action = GroupAction(tuple(f"p{k + 1}" for k in range(len(perms))),
                             tuple(perms))
        C = action_centralizer(action)
        checks = []
        if top <= 8:
            brute = centralizer_in_sym_bruteforce(perms)
            checks.append({"check": "matches the brute-force centralizer",
                           "pass": {C.element(i).images for i in range(len(C))}
                           == {p.images for p in brute}})
        report = {
            "command": "rigidity",
            "config": {"perms": args.perms, "check": "action-centralizer"},
            "degree": top, "centralizer_order": len(C),
            "elements": [C.element(i).to_cycle_string() for i in range(len(C))],
            "checks": checks,
        }
        return report, all(c["pass"] for c in checks)
    if args.check == "class-powers":
        if not args.element:
            raise ValueError("class-powers needs --element")
        G = construct_group(parse_group_spec(args.group))
        g = parse_permutation(args.element, degree=G.degree)
        types = class_power_types(G, g, args.k)
        report = {
            "command": "rigidity",
            "config": {"group": args.group, "element": args.element, "k": args.k},
            "types": sorted(str(t) for t in types),
            "checks": [],
        }
        return report, True
    raise ValueError(f"unknown rigidity check {args.check!r}")


# -- stability ------------------------------------------------------------------------

def cmd_stability(args) -> tuple[dict, bool]:
    window = Fraction(args.window)
    if args.map:
        s = read_almost_hom_file(args.map)
        rep = uniform_defect_report(s)
        near = nearest_hom(s, window=window)
        checks = [{"check": f"distance within {STABILITY_BOUND} * defect",
                   "pass": near.within_bound}]
        report = {
            "command": "stability",
            "config": {"map": args.map, "window": _num(window)},
            "defect": _num(rep.defect), "argmax": list(rep.argmax),
            "injectivity": _num(rep.injectivity),
            "nearest": {"degree": near.degree, "distance": _num(near.distance),
                        "ratio": _num(near.ratio) if near.ratio is not None
                        else None,
                        "hom": [p.to_cycle_string() for p in near.hom.images]},
            "checks": checks,
        }
        return report, all(c["pass"] for c in checks)
    G = construct_group(parse_group_spec(args.group))
    scan = identity_preserving_scan(G, args.degree, window=window)
    checks = [{"check": f"all distances within {STABILITY_BOUND} * defect",
               "pass": scan.all_within_bound}]
    report = {
        "command": "stability",
        "config": {"group": args.group, "degree": args.degree,
                   "window": _num(window)},
        "rows": len(scan.rows),
        "max_ratio": _num(scan.max_ratio) if scan.max_ratio is not None else None,
        "bound": STABILITY_BOUND,
        "checks": checks,
    }
    _write_plot_data(args, ["images,defect_num,defect_den,dist_num,dist_den"] + [
        f"\"{'|'.join(r.images)}\",{r.defect.numerator},{r.defect.denominator},"
        f"{r.distance.numerator},{r.distance.denominator}" for r in scan.rows])
    return report, all(c["pass"] for c in checks)


# -- corpus ---------------------------------------------------------------------------

def cmd_corpus(args) -> tuple[dict, bool]:
    if args.action != "list":
        raise ValueError(f"unknown corpus action {args.action!r}")
    rows = []
    for spec in default_corpus():
        G = construct_group(spec)
        rows.append({"name": G.name, "order": len(G), "degree": G.degree})
    return {"command": "corpus", "config": {"action": "list"},
            "groups": rows, "checks": []}, True


# -- plumbing -------------------------------------------------------------------------

def build_parser(suppress: bool = False) -> argparse.ArgumentParser:
    """The CLI parser; with suppress=True, arguments left at their default
    are absent from the namespace, which is how explicit flags are told
    apart from defaults when merging a config file."""

    def d(value):
        return argparse.SUPPRESS if suppress else value

    parser = argparse.ArgumentParser(
        prog="permlab",
        description="Deterministic verification runs over the finite lab modules.")
    parser.add_argument("--version", action="version",
                        version=f"permlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default=d(None),
                       help="JSON file preloading any flag")
        p.add_argument("--seed", type=int, default=d(0),
                       help="random seed recorded in the report")
        p.add_argument("--timings", action="store_true", default=d(False),
                       help="include wall times (breaks byte-identical output)")
        p.add_argument("-o", "--output", default=d(None),
                       help="write the JSON report here")
        p.add_argument("--plot-data", default=d(None),
                       help="write plottable CSV here")

    p = sub.add_parser("verify", help="sentence evaluations against oracles")
    p.add_argument("--groups", default=d("corpus"),
                   help="comma-separated group specs, or 'corpus'")
    p.add_argument("--sentences", default=d(",".join(DEFAULT_SENTENCES)))
    p.add_argument("--strategy", default=d("class"),
                   choices=["naive", "class", "centralizer"])
    common(p)

    p = sub.add_parser("primes", help="selector-problem witness primes")
    p.add_argument("--q", required=True, help="comma-separated primes >= 7")
    p.add_argument("--gamma", required=True, help="comma-separated 0/1 choices")
    p.add_argument("--floor", type=int, default=d(13))
    common(p)

    p = sub.add_parser("schreier", help="graph expansion and automorphisms")
    p.add_argument("--graph", required=True,
                   help="regular:<group>, cycle:<n>, or file:<path>")
    p.add_argument("--mode", default=d("report"),
                   choices=["exact-autos", "report", "clusters"])
    p.add_argument("--eps", default=d("auto"),
                   help="defect budget as a fraction, or 'auto'")
    p.add_argument("--search", default=d("auto"),
                   choices=["auto", "exhaustive", "backtracking", "local-search"])
    p.add_argument("--restarts", type=int, default=d(20))
    common(p)

    p = sub.add_parser("rigidity", help="centralizer and double-centralizer checks")
    p.add_argument("--group", default=d("sym3"))
    p.add_argument("--check", default=d("biregular"),
                   choices=["biregular", "action-centralizer", "class-powers"])
    p.add_argument("--perms", default=d(""),
                   help="semicolon-separated cycle strings (action-centralizer)")
    p.add_argument("--element", default=d(""), help="cycle string (class-powers)")
    p.add_argument("--k", type=int, default=d(2))
    common(p)

    p = sub.add_parser("stability", help="almost-homomorphism scans and files")
    p.add_argument("--group", default=d("cyclic2"))
    p.add_argument("--degree", type=int, default=d(3))
    p.add_argument("--window", default=d("0"), help="padding window fraction")
    p.add_argument("--map", default=d(""),
                   help="almost-homomorphism file to analyze")
    common(p)

    p = sub.add_parser("corpus", help="corpus inspection")
    p.add_argument("action", nargs="?", default=d("list"))
    common(p)
    return parser


DISPATCH = {
    "verify": cmd_verify,
    "primes": cmd_primes,
    "schreier": cmd_schreier,
    "rigidity": cmd_rigidity,
    "stability": cmd_stability,
    "corpus": cmd_corpus,
}


def _merge_config(args, given: set[str]) -> None:
    if not args.config:
        return
    with open(args.config, encoding="utf-8") as fh:
        loaded = json.load(fh)
    if not isinstance(loaded, dict):
        raise ValueError("the config file must hold a JSON object")
    for key, value in loaded.items():
        dest = key.replace("-", "_")
        if dest == "command" or not hasattr(args, dest):
            raise ValueError(f"unknown config key {key!r}")
        if dest not in given:
            setattr(args, dest, value)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        given = set(vars(build_parser(suppress=True).parse_args(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        _merge_config(args, given)
        report, ok = DISPATCH[args.command](args)
    except (ValueError, KeyError, OSError, ParseError, CapExceededError,
            DecompositionRequiredError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report["tool"] = f"permlab {__version__}"
    report["seed"] = args.seed
    if args.timings:
        report["wall_time_s"] = round(time.perf_counter() - t0, 3)
    _write_output(args, report)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
