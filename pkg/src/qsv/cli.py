"""
Command line interface.

    qsv enumerate {ncp,qsv,avoiders,classes} --n N
    qsv hasse {qsv,ncp,quotient} --n N
    qsv verify {interval,quotient-order,tl-basis,tl-sections,vanishing,ideal} --n N
    qsv tl reduce --n N --perm 4,3,2,1
    qsv tl basis-check --n N --file perms.txt
    qsv poly palpha --alpha 1,2,1 --n 4 [--eval 3,5,1,4,2]
    qsv ideal verify --n 3 [--max-degree 8]
    qsv ideal gb --gens gens.json

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 on usage errors or exceeded caps.  Caps can be raised with
``--cap-bruteforce N`` or the environment variable ``QSV_CAP_OVERRIDE``
(either ``N`` for every subsystem or ``name=N,...``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import verify as verifiers
from .classes import enumerate_qsv, partition_into_classes
from .groebner import GRLEX, SaturationError, buchberger
from .ncp import enumerate_ncp, ncp_leq
from .perm import CapExceeded, Permutation, all_permutations, bruhat_leq, is_321_avoiding
from .qpoly import Composition, Polynomial, format_rational, vanishing_poly
from .tl import GroupAlgebraVector, basis_report, phi_expand

DEFAULT_CAPS = {
    "closure": 6,
    "enumerate": 10,
    "classes": 7,
    "tl": 6,
    "vanishing": 7,
    "ideal": 4,
    "hasse": 5,
}

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    n: int = 3
    caps: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_CAPS))
    max_degree: int | None = None
    seed: int = 0
    format: str = "json"

    def cap(self, name: str) -> int:
        return self.caps[name]

    def check(self, name: str, n: int | None = None) -> None:
        n = self.n if n is None else n
        if n < 0:
            raise UsageError(f"n must be nonnegative, got {n}")
        if n > self.caps[name]:
            raise CapExceeded(f"n = {n} exceeds the {name} cap {self.caps[name]}")


def parse_cap_override(text: str, caps: dict[str, int]) -> dict[str, int]:
    """``"7"`` sets every cap; ``"tl=7,ideal=5"`` sets named caps."""
    caps = dict(caps)
    text = text.strip()
    if not text:
        return caps
    if "=" not in text:
        value = int(text)
        return {k: value for k in caps}
    for item in text.split(","):
        name, value = item.split("=", 1)
        name = name.strip()
        if name not in caps:
            raise UsageError(f"unknown cap {name!r}; known: {', '.join(sorted(caps))}")
        caps[name] = int(value)
    if any(v < 1 for v in caps.values()):
        raise UsageError("caps must be at least 1")
    return caps


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# enumerate

def cmd_enumerate(kind: str, cfg: RunConfig) -> tuple[int, object]:
    n = cfg.n
    if kind == "ncp":
        cfg.check("enumerate")
        items = [lam.to_json() for lam in enumerate_ncp(n, cfg.cap("enumerate"))]
        text = [str(lam) for lam in enumerate_ncp(n, cfg.cap("enumerate"))]
    elif kind == "qsv":
        cfg.check("classes")
        perms = enumerate_qsv(n, cfg.cap("classes"))
        items = text = [str(w) for w in perms]
    elif kind == "avoiders":
        cfg.check("classes")
        items = text = [str(w) for w in all_permutations(n) if is_321_avoiding(w)]
    else:
        cfg.check("classes")
        classes = partition_into_classes(n, cfg.cap("classes"))
        items = [c.to_json(with_members=True) for c in classes]
        text = [
            f"{c.shape}: size {c.size}, min {c.min_elt}, max {c.max_elt}" for c in classes
        ]
    data = {"kind": kind, "n": n, "count": len(items), "items": items}
    if cfg.format == "text":
        return EXIT_OK, "\n".join([f"count: {len(items)}"] + text) + "\n"
    return EXIT_OK, data


# hasse

def _cover_edges(nodes: list, leq) -> list[tuple]:
    """Transitive reduction of a partial order given by ``leq``."""
    below = {y: [x for x in nodes if x != y and leq(x, y)] for y in nodes}
    edges = []
    for y in nodes:
        lower = below[y]
        for x in lower:
            if not any(z != x and leq(x, z) for z in lower):
                edges.append((x, y))
    return edges


def _ranks(nodes: list, edges: list[tuple]) -> dict:
    downs: dict = {x: [] for x in nodes}
    for x, y in edges:
        downs[y].append(x)
    rank: dict = {}

    def r(x):
        if x not in rank:
            rank[x] = 1 + max((r(z) for z in downs[x]), default=-1)
        return rank[x]

    for x in nodes:
        r(x)
    return rank


def _hasse_graph(kind: str, cfg: RunConfig) -> tuple[list, list[tuple], str]:
    n = cfg.n
    cfg.check("hasse")
    if kind == "qsv":
        nodes = [str(w) for w in enumerate_qsv(n)]
        perms = {str(w): w for w in enumerate_qsv(n)}
        edges = _cover_edges(nodes, lambda a, b: bruhat_leq(perms[a], perms[b]))
        return nodes, edges, ""
    if kind == "ncp":
        shapes = enumerate_ncp(n)
        nodes = [str(lam) for lam in shapes]
        lookup = dict(zip(nodes, shapes))
        edges = _cover_edges(nodes, lambda a, b: ncp_leq(lookup[a], lookup[b]))
        return nodes, edges, ""
    classes = partition_into_classes(n)
    shapes = [c.shape for c in classes]
    nodes = [str(lam) for lam in shapes]
    members = {str(c.shape): c.members for c in classes}
    induced = {
        (a, b): any(bruhat_leq(u, v) for u in members[a] for v in members[b])
        for a in nodes for b in nodes
    }
    edges = _cover_edges(nodes, lambda a, b: induced[a, b])
    lookup = dict(zip(nodes, shapes))
    ncp_edges = _cover_edges(nodes, lambda a, b: ncp_leq(lookup[a], lookup[b]))
    note = "" if sorted(edges) == sorted(ncp_edges) else "quotient order differs from ballot order"
    return nodes, edges, note


def _dot(name: str, nodes: list, edges: list[tuple]) -> str:
    rank = _ranks(nodes, edges)
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=plaintext];"]
    for level in sorted(set(rank.values())):
        same = " ".join(f'"{x}";' for x in nodes if rank[x] == level)
        lines.append(f"  {{ rank=same; {same} }}")
    for x, y in sorted(edges, key=lambda e: (rank[e[0]], nodes.index(e[0]), nodes.index(e[1]))):
        lines.append(f'  "{x}" -> "{y}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_hasse(kind: str, cfg: RunConfig) -> tuple[int, object]:
    nodes, edges, note = _hasse_graph(kind, cfg)
    status = EXIT_FAILED if note else EXIT_OK
    if note:
        print(note, file=sys.stderr)
    if cfg.format == "json":
        rank = _ranks(nodes, edges)
        return status, {
            "kind": kind, "n": cfg.n, "nodes": nodes,
            "edges": [list(e) for e in sorted(edges, key=lambda e: (nodes.index(e[0]), nodes.index(e[1])))],
            "ranks": {x: rank[x] for x in nodes},
        }
    if cfg.format == "text":
        return status, "".join(f"{x} < {y}\n" for x, y in edges)
    return status, _dot(f"{kind}_{cfg.n}", nodes, edges)


# verify

def cmd_verify(theorem: str, cfg: RunConfig) -> tuple[int, object]:
    n = cfg.n
    if theorem in ("interval", "quotient-order"):
        cfg.check("closure")
        report = verifiers.THEOREMS[theorem](n, cap=cfg.cap("closure"))
    elif theorem in ("tl-basis", "tl-sections"):
        cfg.check("tl")
        if theorem == "tl-basis":
            report = verifiers.verify_tl_basis(n, cap=cfg.cap("tl"))
        else:
            report = verifiers.verify_tl_sections(n, seed=cfg.seed, cap=cfg.cap("tl"))
    elif theorem == "vanishing":
        cfg.check("vanishing")
        degree = cfg.max_degree or verifiers.DEFAULT_DEGREE_BOUND
        report = verifiers.verify_vanishing(n, degree, cap=cfg.cap("vanishing"))
    else:
        cfg.check("ideal")
        report = verifiers.verify_ideal(n, cfg.max_degree, cap=cfg.cap("ideal"))
    status = EXIT_OK if report["pass"] else EXIT_FAILED
    if cfg.format == "text":
        lines = [f"{theorem} n={n}: {'pass' if report['pass'] else 'FAIL'}"]
        for c in report["checks"]:
            lines.append(f"  {c['name']}: {'pass' if c['pass'] else 'FAIL'}")
            if "witness" in c:
                lines.append(f"    witness: {json.dumps(c['witness'], sort_keys=True)}")
        return status, "\n".join(lines) + "\n"
    return status, report


# tl

def _vector_json(v: GroupAlgebraVector) -> dict:
    return {"n": v.n, "terms": [{"perm": str(w), "coef": format_rational(c)} for w, c in v.items()]}


def _read_perms(path: str) -> list[Permutation]:
    with open(path, encoding="utf-8") as fh:
        return [Permutation.parse(line) for line in fh if line.strip() and not line.startswith("#")]


def cmd_tl(args: argparse.Namespace, cfg: RunConfig) -> tuple[int, object]:
    cfg.check("tl")
    if args.tl_command == "reduce":
        w = Permutation.parse(args.perm)
        if w.n != cfg.n:
            raise UsageError(f"--perm has size {w.n}, expected --n {cfg.n}")
        v = phi_expand(w)
        if cfg.format == "json":
            return EXIT_OK, {"perm": str(w), "normal_form": _vector_json(v)}
        return EXIT_OK, f"{v}\n"
    perms = _read_perms(args.file)
    if any(w.n != cfg.n for w in perms):
        raise UsageError(f"every permutation in {args.file} must have size {cfg.n}")
    rep = basis_report(perms)
    status = EXIT_OK if rep.is_basis else EXIT_FAILED
    witness = [[str(w), format_rational(c)] for w, c in rep.witness] if rep.witness else None
    if cfg.format == "json":
        out = {"basis": rep.is_basis, "size": rep.size, "rank": rep.rank, "dimension": rep.dimension}
        if witness:
            out["witness"] = witness
        return status, out
    lines = ["true" if rep.is_basis else "false"]
    if rep.witness:
        combo = GroupAlgebraVector(cfg.n, dict(rep.witness))
        lines.append(f"kernel combination: {combo} = 0")
    elif not rep.is_basis:
        lines.append(f"rank {rep.rank}, size {rep.size}, dimension {rep.dimension}")
    return status, "\n".join(lines) + "\n"


# poly

def cmd_poly(args: argparse.Namespace, cfg: RunConfig) -> tuple[int, object]:
    alpha = Composition.parse(args.alpha)
    if len(alpha) > cfg.n:
        raise UsageError(f"composition {alpha} has more than {cfg.n} parts")
    P = vanishing_poly(alpha, cfg.n)
    if args.eval is not None:
        point = [Fraction(tok) for tok in args.eval.split(",")]
        if len(point) < cfg.n:
            raise UsageError(f"--eval needs at least {cfg.n} coordinates")
        value = P.evaluate(point[: cfg.n])
        if cfg.format == "json":
            return EXIT_OK, {"alpha": list(alpha.parts), "point": [format_rational(x) for x in point],
                             "value": format_rational(value)}
        return EXIT_OK, format_rational(value) + "\n"
    if cfg.format == "json":
        return EXIT_OK, P.to_json()
    return EXIT_OK, f"{P}\n"


# ideal

def _read_generators(path: str) -> list[Polynomial]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("generators", data.get("groebner", [data]))
    gens = [Polynomial.from_json(p) for p in data]
    if not gens:
        raise UsageError("no generators given")
    if len({g.n for g in gens}) != 1:
        raise UsageError("generators use different variable counts")
    return gens


def cmd_ideal(args: argparse.Namespace, cfg: RunConfig) -> tuple[int, object]:
    if args.ideal_command == "verify":
        return cmd_verify("ideal", cfg)
    gens = _read_generators(args.gens)
    G = buchberger(gens)
    data = {"n": gens[0].n, **GRLEX.to_json(), "groebner": [g.to_json() for g in G]}
    if cfg.format == "text":
        return EXIT_OK, "".join(f"{g}\n" for g in G)
    return EXIT_OK, data


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="size of the permutations")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-degree", type=int, default=None, dest="max_degree")
    common.add_argument("--format", choices=("json", "text", "dot"), default=None)
    common.add_argument("--json", action="store_const", const="json", dest="format",
                        help="same as --format json")
    common.add_argument("--cap-bruteforce", type=int, default=None, dest="cap_bruteforce",
                        help="raise every brute-force cap to this size")
    common.add_argument("--out", default=None, help="write output to FILE instead of stdout")

    parser = argparse.ArgumentParser(prog="qsv", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list combinatorial objects")
    p.add_argument("kind", choices=("ncp", "qsv", "avoiders", "classes"))

    p = sub.add_parser("hasse", parents=[common], help="Hasse diagram of an order")
    p.add_argument("kind", choices=("qsv", "ncp", "quotient"))

    p = sub.add_parser("verify", parents=[common], help="run a verification report")
    p.add_argument("theorem", choices=tuple(verifiers.THEOREMS))

    p = sub.add_parser("tl", help="Temperley-Lieb computations")
    tl_sub = p.add_subparsers(dest="tl_command", required=True)
    q = tl_sub.add_parser("reduce", parents=[common], help="normal form of a permutation")
    q.add_argument("--perm", required=True)
    q = tl_sub.add_parser("basis-check", parents=[common], help="test a set of permutations")
    q.add_argument("--file", required=True)

    p = sub.add_parser("poly", help="vanishing polynomials")
    poly_sub = p.add_subparsers(dest="poly_command", required=True)
    q = poly_sub.add_parser("palpha", parents=[common], help="expand or evaluate P_alpha")
    q.add_argument("--alpha", required=True)
    q.add_argument("--eval", default=None)

    p = sub.add_parser("ideal", help="Groebner basis computations")
    ideal_sub = p.add_subparsers(dest="ideal_command", required=True)
    ideal_sub.add_parser("verify", parents=[common], help="verify the vanishing ideal of QSV_n")
    q = ideal_sub.add_parser("gb", parents=[common], help="reduced Groebner basis of generators")
    q.add_argument("--gens", required=True)
    return parser


DEFAULT_FORMATS = {
    "enumerate": "json", "hasse": "dot", "verify": "json",
    "tl": "text", "poly": "text", "ideal": "json",
}


def make_config(args: argparse.Namespace) -> RunConfig:
    caps = dict(DEFAULT_CAPS)
    env = os.environ.get("QSV_CAP_OVERRIDE")
    if env:
        caps = parse_cap_override(env, caps)
    if args.cap_bruteforce is not None:
        if args.cap_bruteforce < 1:
            raise UsageError("--cap-bruteforce must be at least 1")
        caps = {k: args.cap_bruteforce for k in caps}
    fmt = args.format or DEFAULT_FORMATS[args.command]
    if fmt == "dot" and args.command != "hasse":
        raise UsageError("--format dot is only available for hasse")
    n = args.n
    if n is None:
        needs_n = args.command not in ("ideal",) or getattr(args, "ideal_command", "") == "verify"
        if needs_n:
            raise UsageError("--n is required")
        n = 0
    return RunConfig(n=n, caps=caps, max_degree=args.max_degree, seed=args.seed, format=fmt)


def run(argv: list[str] | None = None) -> tuple[int, str]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    try:
        cfg = make_config(args)
        if args.command == "enumerate":
            status, out = cmd_enumerate(args.kind, cfg)
        elif args.command == "hasse":
            status, out = cmd_hasse(args.kind, cfg)
        elif args.command == "verify":
            status, out = cmd_verify(args.theorem, cfg)
        elif args.command == "tl":
            status, out = cmd_tl(args, cfg)
        elif args.command == "poly":
            status, out = cmd_poly(args, cfg)
        else:
            status, out = cmd_ideal(args, cfg)
    except (UsageError, CapExceeded, ValueError, OSError, SaturationError) as exc:
        print(f"qsv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, ""
    except AssertionError as exc:
        print(f"qsv: check failed: {exc}", file=sys.stderr)
        return EXIT_FAILED, ""
    text = out if isinstance(out, str) else _dump(out)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        return status, ""
    return status, text


def main(argv: list[str] | None = None) -> int:
    status, text = run(argv)
    if text:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
