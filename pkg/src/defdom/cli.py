"""Command-line front end.

Every command prints human-readable detail to stderr and finishes stdout
with one machine-readable record line:

    verdict=<word> value=<number or -> certificate=<path or ->

Exit codes: 0 = affirmative/optimal, 1 = negative/infeasible, 2 = usage or
input error, 3 = time limit exceeded.  A --jobs flag is accepted for
symmetry with batch runners; all searches are single-process and their
output does not depend on it.
"""

import argparse
import random
import signal
import sys
from contextlib import contextmanager
from typing import Optional

from defdom.defense import STRATEGIES, find_violator
from defdom.errors import InputError
from defdom.formulas import E2Formula, solve_e2sat
from defdom.graphs import (complete_graph, cycle_graph, delete_vertices,
                           find_clique, multiset_size, path_graph, random_graph,
                           star_graph)
from defdom.intervals import IntervalInstance, greedy_defense, intersection_graph
from defdom.io import (read_attacks, read_formula, read_graph, read_intervals,
                       read_multiset, read_valuation, read_vertex_set,
                       write_formula, write_graph, write_intervals,
                       write_multiset, write_valuation, write_vertex_set)
from defdom.matching import counters
from defdom.reductions import (CndInstance, cnd_to_dds, dds_from_graph,
                               e2sat_to_cnd, enumerate_serious_attacks,
                               extract_deletion_set, proof_defense,
                               sat_cnd_from_graph, solve_cnd_bruteforce,
                               typed_clique_audit, valuation_to_deletion)
from defdom.solvers import (min_constrained_multiset, min_multiset_defense,
                            min_set_defense)


class _Timeout(Exception):
    pass


@contextmanager
def _alarm(seconds: Optional[int]):
    if not seconds:
        yield
        return

    def handler(signum, frame):
        raise _Timeout()

    old = signal.signal(signal.SIGALRM, handler)
    signal.alarm(seconds)
    try:
        yield
    finally:
        signal.alarm(0)
        signal.signal(signal.SIGALRM, old)


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _record(verdict: str, value="-", certificate="-") -> None:
    print(f"verdict={verdict} value={value} certificate={certificate}")


def _require_k(k: Optional[int]) -> int:
    if k is None:
        raise InputError("this command needs the attack size k")
    if k < 1:
        raise InputError("k must be at least 1")
    return k


def _param(args_value: Optional[int], params: dict, name: str) -> int:
    if args_value is not None:
        return args_value
    if name in params:
        return params[name]
    raise InputError(f"parameter {name} missing: pass --{name} or a 'c params' line")


def _format_multiset(d) -> str:
    return " ".join(f"{v}x{c}" for v, c in sorted(d.items()) if c) or "(empty)"


def _emit_defense(path: Optional[str], defense, as_multiset: bool) -> str:
    if path is None:
        return "-"
    if as_multiset:
        write_multiset(path, defense)
    else:
        write_vertex_set(path, defense)
    return path


# ---------------------------------------------------------------- commands


def cmd_verify(args) -> int:
    g, _ = read_graph(args.graph)
    k = _require_k(args.k)
    if args.multiset:
        defense = read_multiset(args.defense)
    else:
        defense = {v: 1 for v in read_vertex_set(args.defense)}
    violator = find_violator(g, defense, k, strategy=args.strategy)
    if violator is None:
        _log(f"GOOD: defense counters every attack of size <= {k}")
        _record("good", 0)
        return 0
    attack = " ".join(str(v) for v in sorted(violator.attack))
    _log(f"BAD: attack {attack} exceeds nearby defenders by {violator.deficiency}")
    _record("bad", violator.deficiency)
    return 1


def cmd_solve_exact(args) -> int:
    g, _ = read_graph(args.graph)
    if args.attacks is not None:
        attacks = read_attacks(args.attacks)
        for attack in attacks:
            for v in attack:
                if not 1 <= v <= g.n:
                    raise InputError(f"attack vertex {v} outside 1..{g.n}")
        lower = read_multiset(args.lower) if args.lower else {}
        if args.upper:
            upper = read_multiset(args.upper)
        else:
            cap = max((len(a) for a in attacks), default=1)
            upper = {v: cap for v in g.vertices}
        result = min_constrained_multiset(g, attacks, lower, upper)
        if result is None:
            _log("NONE: even the upper bound fails to counter the attack list")
            _record("none")
            return 1
        _log(f"optimum {result.optimum}: {_format_multiset(result.witness)}")
        cert = _emit_defense(args.emit_defense, result.witness, True)
        _record("optimal", result.optimum, cert)
        return 0
    k = _require_k(args.k)
    if args.lower or args.upper:
        raise InputError("--lower/--upper require --attacks")
    if args.multiset:
        result = min_multiset_defense(g, k)
        _log(f"optimum {result.optimum}: {_format_multiset(result.witness)}")
        cert = _emit_defense(args.emit_defense, result.witness, True)
    else:
        result = min_set_defense(g, k)
        listing = " ".join(str(v) for v in sorted(result.witness))
        _log(f"optimum {result.optimum}: {{{listing}}}")
        cert = _emit_defense(args.emit_defense, result.witness, False)
    _record("optimal", result.optimum, cert)
    return 0


def cmd_greedy(args) -> int:
    inst = read_intervals(args.intervals)
    k = _require_k(args.k)
    defense = greedy_defense(inst, k)
    size = multiset_size(defense)
    _log(f"greedy defense of size {size}: {_format_multiset(defense)}")
    cert = _emit_defense(args.emit_defense, defense, True)
    if args.check:
        g = intersection_graph(inst)
        violator = find_violator(g, defense, k, strategy="exhaustive")
        if violator is not None:
            attack = " ".join(str(v) for v in sorted(violator.attack))
            _log(f"BAD: greedy output failed its own check on attack {attack}")
            _record("bad", size, cert)
            return 1
        _log("GOOD: exhaustive check confirms the defense")
    _record("good" if args.check else "ok", size, cert)
    return 0


def cmd_reduce(args) -> int:
    if args.kind == "cnd-to-dds":
        g, params = read_graph(args.input)
        s = _param(args.s, params, "s")
        t = _param(args.t, params, "t")
        dds = cnd_to_dds(CndInstance(g, s, t), ell_mode=args.ell_mode)
        write_graph(args.output, dds.graph,
                    {"k": dds.k, "ell": dds.ell, "s": s, "t": t})
        _log(f"wrote instance with {dds.graph.n} vertices, k={dds.k}, ell={dds.ell}")
        _record("ok", dds.k, args.output)
        return 0
    formula = read_formula(args.input)
    sc = e2sat_to_cnd(formula, allow_small=args.allow_small)
    write_graph(args.output, sc.graph,
                {"s": sc.cnd.s, "t": sc.cnd.t,
                 "a": formula.a, "b": formula.b, "c": formula.c})
    _log(f"wrote instance with {sc.graph.n} vertices, s={sc.cnd.s}, t={sc.cnd.t}")
    _record("ok", sc.cnd.s, args.output)
    return 0


def _load_dds(args):
    g, params = read_graph(args.graph)
    k = _param(args.k, params, "k")
    ell = _param(args.ell, params, "ell")
    return dds_from_graph(g, k, ell)


def cmd_audit_dds_forward(args) -> int:
    dds = _load_dds(args)
    deletion = read_vertex_set(args.deletion)
    defense = proof_defense(dds, deletion)
    for attack in enumerate_serious_attacks(dds):
        if not counters(dds.graph, defense, attack):
            listing = " ".join(str(v) for v in sorted(attack))
            _log(f"FAIL: serious attack {listing} is not countered")
            _record("fail", len(attack))
            return 1
    violator = find_violator(dds.graph, defense, dds.k, strategy="pruned")
    if violator is not None:
        listing = " ".join(str(v) for v in sorted(violator.attack))
        _log(f"FAIL: attack {listing} exceeds nearby defenders by {violator.deficiency}")
        _record("fail", violator.deficiency)
        return 1
    _log("PASS: defense counters every serious attack and the full search finds none")
    _record("pass", multiset_size(defense))
    return 0


def cmd_audit_dds_roundtrip(args) -> int:
    dds = _load_dds(args)
    deletion = read_vertex_set(args.deletion)
    defense = proof_defense(dds, deletion)
    recovered = extract_deletion_set(dds, defense)
    if recovered != deletion:
        got = " ".join(str(v) for v in sorted(recovered))
        _log(f"FAIL: extraction returned {{{got}}}")
        _record("fail", len(recovered))
        return 1
    _log("PASS: extraction recovered the deletion set exactly")
    _record("pass", len(recovered))
    return 0


def cmd_audit_cnd_certificate(args) -> int:
    g, params = read_graph(args.graph)
    s = _param(args.s, params, "s")
    t = _param(args.t, params, "t")
    sc = sat_cnd_from_graph(g, s, t)
    nu = read_valuation(args.valuation, expected=sc.formula.a)
    deletion = valuation_to_deletion(sc, nu)
    remnant, mapping = delete_vertices(g, deletion)
    back = {new: old for old, new in mapping.items()}
    witness = typed_clique_audit(remnant, t)
    if witness is not None:
        listing = " ".join(str(back[v]) for v in sorted(witness))
        _log(f"FAIL: a size-{t} clique survives the deletion: {listing}")
        _record("fail", t)
        return 1
    _log(f"PASS: no size-{t} clique survives; the valuation wins")
    _record("pass", len(deletion))
    return 0


def cmd_audit_clique_typed(args) -> int:
    g, params = read_graph(args.graph)
    t = _param(args.t, params, "t")
    typed = typed_clique_audit(g, t)
    generic = find_clique(g, t)
    if (typed is None) != (generic is None):
        _log(f"FAIL: typed audit says {typed}, generic search says {generic}")
        _record("fail")
        return 1
    state = "both found a clique" if typed is not None else "both found none"
    _log(f"PASS: {state}")
    _record("pass", t)
    return 0


def cmd_e2sat(args) -> int:
    formula = read_formula(args.formula)
    result = solve_e2sat(formula)
    if result.verdict:
        bits = "".join("1" if b else "0" for b in result.winning_nu)
        _log(f"YES: assignment {bits} defeats every universal response")
        cert = "-"
        if args.emit_valuation:
            write_valuation(args.emit_valuation, result.winning_nu)
            cert = args.emit_valuation
        _record("yes", bits if bits else "-", cert)
        return 0
    _log("NO: every existential assignment admits a satisfying response")
    for nu, mu in sorted(result.refutations.items()):
        nu_bits = "".join("1" if b else "0" for b in nu) or "(empty)"
        mu_bits = "".join("1" if b else "0" for b in mu) or "(empty)"
        _log(f"  nu={nu_bits} is beaten by mu={mu_bits}")
    _record("no")
    return 1


def cmd_solve_cnd(args) -> int:
    g, params = read_graph(args.graph)
    s = _param(args.s, params, "s")
    t = _param(args.t, params, "t")
    deletion = solve_cnd_bruteforce(CndInstance(g, s, t))
    if deletion is None:
        _log(f"NO: no {s} vertices remove every size-{t} clique")
        _record("no")
        return 1
    listing = " ".join(str(v) for v in sorted(deletion))
    _log(f"YES: delete {{{listing}}}")
    cert = "-"
    if args.emit_deletion:
        write_vertex_set(args.emit_deletion, deletion)
        cert = args.emit_deletion
    _record("yes", len(deletion), cert)
    return 0


def cmd_clique(args) -> int:
    g, _ = read_graph(args.graph)
    if args.t < 1:
        raise InputError("t must be at least 1")
    witness = find_clique(g, args.t)
    if witness is None:
        _log(f"NONE: no clique of size {args.t}")
        _record("none")
        return 1
    listing = " ".join(str(v) for v in sorted(witness))
    _log(f"FOUND: {{{listing}}}")
    cert = "-"
    if args.emit_witness:
        write_vertex_set(args.emit_witness, witness)
        cert = args.emit_witness
    _record("found", args.t, cert)
    return 0


def _gen_intervals(n: int, seed: int) -> IntervalInstance:
    rng = random.Random(seed)
    values = rng.sample(range(1, 20 * n + 1), 2 * n)
    rows = {}
    for v in range(1, n + 1):
        a, b = values[2 * v - 2], values[2 * v - 1]
        rows[v] = (min(a, b), max(a, b))
    return IntervalInstance(rows)


def _gen_formula(a: int, b: int, c: int, seed: int) -> E2Formula:
    if a + b < 3:
        raise InputError("formula generation needs at least three variables")
    rng = random.Random(seed)
    clauses = []
    for _ in range(c):
        variables = rng.sample(range(1, a + b + 1), 3)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in variables))
    return E2Formula(a, b, tuple(clauses))


def cmd_gen(args) -> int:
    if args.kind == "interval":
        write_intervals(args.output, _gen_intervals(args.n, args.seed))
    elif args.kind == "formula":
        write_formula(args.output, _gen_formula(args.a, args.b, args.c, args.seed))
    else:
        if args.kind == "star":
            g = star_graph(args.leaves)
        elif args.kind == "random":
            if not 0.0 <= args.p <= 1.0:
                raise InputError("edge probability must lie in [0, 1]")
            g = random_graph(args.n, args.p, args.seed)
        elif args.kind == "path":
            g = path_graph(args.n)
        elif args.kind == "cycle":
            g = cycle_graph(args.n)
        else:
            g = complete_graph(args.n)
        write_graph(args.output, g)
    _log(f"wrote {args.kind} instance to {args.output} (seed {args.seed})")
    _record("ok", args.seed, args.output)
    return 0


# ----------------------------------------------------------------- parser


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defdom",
        description="defensive graph domination: verification, exact and "
                    "greedy solvers, hardness reductions, audits")
    parser.add_argument("--time-limit", type=int, metavar="SECONDS",
                        help="abort with exit code 3 after this many seconds")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker budget (accepted for compatibility; "
                             "searches are single-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a defense against all attacks up to size k")
    p.add_argument("graph")
    p.add_argument("defense")
    p.add_argument("k", type=int, nargs="?")
    p.add_argument("--multiset", action="store_true",
                   help="read the defense as '<v> <count>' lines")
    p.add_argument("--strategy", choices=STRATEGIES, default="pruned")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve-exact", help="smallest defense by exhaustive search")
    p.add_argument("graph")
    p.add_argument("k", type=int, nargs="?")
    p.add_argument("--multiset", action="store_true",
                   help="allow several copies per vertex")
    p.add_argument("--attacks", metavar="FILE",
                   help="counter exactly these attacks instead of all size-k ones")
    p.add_argument("--lower", metavar="FILE", help="multiset every solution must contain")
    p.add_argument("--upper", metavar="FILE", help="multiset every solution must stay within")
    p.add_argument("--emit-defense", metavar="FILE")
    p.set_defaults(func=cmd_solve_exact)

    p = sub.add_parser("greedy", help="greedy multiset defense for an interval instance")
    p.add_argument("intervals")
    p.add_argument("k", type=int, nargs="?")
    p.add_argument("--emit-defense", metavar="FILE")
    p.add_argument("--check", action="store_true",
                   help="re-verify the output exhaustively (small instances only)")
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("reduce", help="build a hardness-reduction instance")
    psub = p.add_subparsers(dest="kind", required=True)
    q = psub.add_parser("cnd-to-dds",
                        help="clique node deletion -> defensive domination")
    q.add_argument("input", help="graph file; s and t via flags or 'c params'")
    q.add_argument("-o", "--output", required=True)
    q.add_argument("--s", type=int)
    q.add_argument("--t", type=int)
    q.add_argument("--ell-mode", choices=("proof-consistent", "literal"),
                   default="proof-consistent")
    q.set_defaults(func=cmd_reduce)
    q = psub.add_parser("e2sat-to-cnd",
                        help="two-level satisfiability -> clique node deletion")
    q.add_argument("input", help="formula file")
    q.add_argument("-o", "--output", required=True)
    q.add_argument("--allow-small", action="store_true",
                   help="waive the clause-count requirement (audit use)")
    q.set_defaults(func=cmd_reduce)

    p = sub.add_parser("audit", help="run an invariant suite entry on an instance")
    psub = p.add_subparsers(dest="kind", required=True)
    q = psub.add_parser("dds-forward",
                        help="deletion set -> defense -> full verification")
    q.add_argument("graph")
    q.add_argument("--deletion", required=True, metavar="FILE")
    q.add_argument("--k", type=int)
    q.add_argument("--ell", type=int)
    q.set_defaults(func=cmd_audit_dds_forward)
    q = psub.add_parser("dds-roundtrip",
                        help="deletion set -> defense -> extracted deletion set")
    q.add_argument("graph")
    q.add_argument("--deletion", required=True, metavar="FILE")
    q.add_argument("--k", type=int)
    q.add_argument("--ell", type=int)
    q.set_defaults(func=cmd_audit_dds_roundtrip)
    q = psub.add_parser("cnd-certificate",
                        help="valuation -> deletion -> typed no-clique audit")
    q.add_argument("graph")
    q.add_argument("--valuation", required=True, metavar="FILE")
    q.add_argument("--s", type=int)
    q.add_argument("--t", type=int)
    q.set_defaults(func=cmd_audit_cnd_certificate)
    q = psub.add_parser("clique-typed",
                        help="typed audit vs generic clique search")
    q.add_argument("graph")
    q.add_argument("--t", type=int)
    q.set_defaults(func=cmd_audit_clique_typed)

    p = sub.add_parser("e2sat", help="solve a two-level formula by brute force")
    p.add_argument("formula")
    p.add_argument("--emit-valuation", metavar="FILE")
    p.set_defaults(func=cmd_e2sat)

    p = sub.add_parser("solve-cnd", help="clique node deletion by brute force")
    p.add_argument("graph")
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--emit-deletion", metavar="FILE")
    p.set_defaults(func=cmd_solve_cnd)

    p = sub.add_parser("clique", help="find one clique of a given size")
    p.add_argument("graph")
    p.add_argument("t", type=int)
    p.add_argument("--emit-witness", metavar="FILE")
    p.set_defaults(func=cmd_clique)

    p = sub.add_parser("gen", help="deterministic instance generators")
    psub = p.add_subparsers(dest="kind", required=True)
    for kind, flags in (
            ("interval", ("n",)), ("random", ("n", "p")), ("star", ("leaves",)),
            ("path", ("n",)), ("cycle", ("n",)), ("complete", ("n",)),
            ("formula", ("a", "b", "c"))):
        q = psub.add_parser(kind)
        for flag in flags:
            if flag == "p":
                q.add_argument("--p", type=float, required=True)
            else:
                q.add_argument(f"--{flag}", type=int, required=True)
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("-o", "--output", required=True)
        q.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        with _alarm(args.time_limit):
            return args.func(args)
    except InputError as exc:
        _log(f"error: {exc}")
        _record("error")
        return 2
    except _Timeout:
        _log("time limit exceeded")
        _record("timeout")
        return 3


if __name__ == "__main__":
    sys.exit(main())
