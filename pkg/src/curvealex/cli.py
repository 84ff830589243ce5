"""Command line interface: file formats, dispatch, and the cross-pipeline
verification harness.

Exit codes: 0 success (verify: all checks pass), 1 computation error or a
failed verify check, 2 parse error, 3 curve validation error, 64 unknown
subcommand.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import curve as curve_mod
from . import semigroup
from .curve import BranchParam, Curve, validate_curve
from .exactmath import (
    NotDivisibleError,
    iter_box,
    mp_mul,
    vec_add,
    vec_leq,
)
from .filtration import (
    BoundaryNonzeroError,
    JetMatrix,
    c_dim,
    fiber_euler,
    fiber_series,
    poincare_poly,
    pprime_poly,
    stable_jet,
)
from .resolution import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    GraphError,
    ResGraph,
    en_alexander,
    graph_conductor_r1,
    resolve,
)

COMMANDS = ("resolve", "alexander", "poincare", "fibers", "semigroup", "verify")

VERIFY_CHECKS = (
    "poincare-equals-alexander",
    "fiber-euler-equals-alexander",
    "fiber-product-identity",
    "exact-divisibility",
    "resolution-invariance",
    "window-stability",
)


class ParseError(ValueError):
    code = "ParseError"


class NotATreeError(ParseError):
    code = "NotATree"


class ArrowCountMismatchError(ParseError):
    code = "ArrowCountMismatch"


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def _coeff_from_json(c) -> Fraction:
    if isinstance(c, bool) or isinstance(c, float):
        raise ParseError("coefficients must be integers or 'p/q' strings: %r" % (c,))
    try:
        return Fraction(c)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError("bad coefficient %r: %s" % (c, exc)) from exc


def _poly_from_json(terms) -> dict:
    if not isinstance(terms, list):
        raise ParseError("polynomial must be a list of [exponent, coefficient]")
    out = {}
    for item in terms:
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError("bad polynomial term %r" % (item,))
        e, c = item
        if not isinstance(e, int) or e < 0:
            raise ParseError("bad exponent %r" % (e,))
        coeff = _coeff_from_json(c)
        out[e] = out.get(e, 0) + coeff
    return out


def curve_from_json(data) -> Curve:
    if not isinstance(data, dict) or "branches" not in data:
        raise ParseError("curve file needs a 'branches' list")
    branches = data["branches"]
    if not isinstance(branches, list) or not branches:
        raise ParseError("'branches' must be a nonempty list")
    out = []
    for b in branches:
        if not isinstance(b, dict) or "x" not in b or "y" not in b:
            raise ParseError("each branch needs 'x' and 'y' term lists")
        out.append(BranchParam(_poly_from_json(b["x"]), _poly_from_json(b["y"])))
    c = Curve(out)
    validate_curve(c)
    return c


def curve_to_json(c: Curve, name: str | None = None) -> dict:
    data = {"branches": [
        {"x": [[e, str(v)] for e, v in sorted(b.x.items())],
         "y": [[e, str(v)] for e, v in sorted(b.y.items())]}
        for b in c.branches]}
    if name:
        data["name"] = name
    return data


def parse_curve_file(path) -> Curve:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise ParseError("malformed JSON in %s: %s" % (path, exc)) from exc
    return curve_from_json(data)


def graph_from_json(data) -> ResGraph:
    try:
        r = int(data["r"])
        vertices = {int(v["id"]): tuple(int(x) for x in v["m"])
                    for v in data["vertices"]}
        edges = {tuple(sorted((int(a), int(b)))) for a, b in data["edges"]}
        arrows = [(int(a["vertex"]), int(a["branch"])) for a in data["arrows"]]
        root = int(data["root"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("malformed graph file: %s" % exc) from exc
    if r < 1 or not vertices or root not in vertices:
        raise ParseError("graph needs r >= 1, vertices, and a valid root")
    for vid, m in vertices.items():
        if len(m) != r or any(x < 1 for x in m):
            raise ParseError("vertex %d multiplicity %r invalid" % (vid, m))
    for a, b in edges:
        if a not in vertices or b not in vertices or a == b:
            raise ParseError("edge (%d, %d) references unknown vertices" % (a, b))
    graph = ResGraph(r=r, vertices=vertices, edges=edges,
                     arrows=sorted(arrows, key=lambda t: (t[1], t[0])),
                     root=root)
    # tree test: connected with |E| == |V| - 1
    if len(edges) != len(vertices) - 1:
        raise NotATreeError("edge count %d does not fit %d vertices"
                            % (len(edges), len(vertices)))
    seen = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for u in graph.neighbors(v):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != len(vertices):
        raise NotATreeError("graph is not connected")
    if sorted(b for _, b in graph.arrows) != list(range(1, r + 1)):
        raise ArrowCountMismatchError(
            "need exactly one arrow per branch 1..%d" % r)
    for vid, _ in graph.arrows:
        if vid not in vertices:
            raise ParseError("arrow on unknown vertex %d" % vid)
    return graph


def graph_to_json(g: ResGraph) -> dict:
    return {
        "r": g.r,
        "vertices": [{"id": vid, "m": list(g.vertices[vid])}
                     for vid in sorted(g.vertices)],
        "edges": [list(e) for e in sorted(g.edges)],
        "arrows": [{"vertex": v, "branch": b} for v, b in g.arrows],
        "root": g.root,
    }


def parse_graph_file(path) -> ResGraph:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise ParseError("malformed JSON in %s: %s" % (path, exc)) from exc
    return graph_from_json(data)


def _load_input(path):
    """A curve or a graph file, told apart by their top-level keys."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise ParseError("malformed JSON in %s: %s" % (path, exc)) from exc
    if isinstance(data, dict) and "branches" in data:
        return curve_from_json(data), None
    if isinstance(data, dict) and "vertices" in data:
        return None, graph_from_json(data)
    raise ParseError("%s is neither a curve nor a graph file" % path)


# ---------------------------------------------------------------------------
# output formatting
# ---------------------------------------------------------------------------

def format_poly(p: dict, r: int) -> str:
    """One term per line: coefficient, tab, comma-joined exponents, sorted
    lexicographically; byte-for-byte deterministic."""
    lines = ["%d\t%s" % (p[e], ",".join(str(x) for x in e))
             for e in sorted(p)]
    return "\n".join(lines)


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# pipelines
# ---------------------------------------------------------------------------

def alexander_via_graph(c: Curve, bound=None, budget=DEFAULT_BUDGET):
    return en_alexander(resolve(c, budget), bound=bound)


def _default_bound(g: ResGraph):
    return 2 * graph_conductor_r1(g) + 2 if g.r == 1 else None


def run_verify(c: Curve, bound=None, budget=DEFAULT_BUDGET):
    """The six cross-pipeline checks; returns [(name, passed, detail)]."""
    r = c.r
    graph = resolve(c, budget)
    if bound is None and r == 1:
        bound = _default_bound(graph)
    alex = en_alexander(graph, bound=bound)
    results = []

    poincare = poincare_poly(c, bound=bound) if r == 1 else poincare_poly(c)
    ok = poincare == alex
    results.append(("poincare-equals-alexander", ok,
                    "" if ok else "poincare != alexander"))

    fibers = fiber_series(c, bound=bound) if r == 1 else fiber_series(c)
    ok = fibers == alex
    results.append(("fiber-euler-equals-alexander", ok,
                    "" if ok else "fiber series != alexander"))

    pprime = pprime_poly(c)
    delta = semigroup.conductor(c)
    divisor = {(1,) * r: 1, (0,) * r: -1}
    product = mp_mul(fibers, divisor)
    if r == 1:
        box_top = (delta[0] + 1,)
        product = {e: v for e, v in product.items() if vec_leq(e, box_top)}
    ok = product == pprime
    results.append(("fiber-product-identity", ok,
                    "" if ok else "fiber series * (t..-1) != pprime"))

    if r > 1:
        try:
            from .exactmath import mp_exact_div

            mp_exact_div(pprime, divisor)
            ok, detail = True, ""
        except NotDivisibleError as exc:
            ok, detail = False, str(exc)
    else:
        ok, detail = True, "r=1: divisibility convention not applicable"
    results.append(("exact-divisibility", ok, detail))

    alex_extra = en_alexander(resolve(c, budget, extra=3), bound=bound)
    ok = alex_extra == alex
    results.append(("resolution-invariance", ok,
                    "" if ok else "extra blow-ups changed the product"))

    w_small = tuple(d + 2 for d in delta)
    w_large = tuple(d + 4 for d in delta)
    M_small = JetMatrix(c, w_small)
    M_large = JetMatrix(c, w_large)
    ok = all(c_dim(M_small, v) == c_dim(M_large, v)
             for v in iter_box((0,) * r, delta))
    results.append(("window-stability", ok,
                    "" if ok else "c values moved under a wider window"))
    return results


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------

def _cmd_resolve(args) -> int:
    c = parse_curve_file(args.input)
    g = resolve(c, args.budget)
    _emit(json.dumps(graph_to_json(g), indent=2, sort_keys=True), args.out)
    return 0


def _cmd_alexander(args) -> int:
    c, g = _load_input(args.input)
    if args.via in ("poincare", "fibers") and c is None:
        raise ParseError("--via %s needs a curve file, not a graph" % args.via)
    if args.via == "poincare":
        poly = poincare_poly(c, bound=args.bound) if c.r == 1 else poincare_poly(c)
        r = c.r
    elif args.via == "fibers":
        poly = fiber_series(c, bound=args.bound) if c.r == 1 else fiber_series(c)
        r = c.r
    else:
        if g is None:
            g = resolve(c, args.budget)
        bound = args.bound if args.bound is not None else _default_bound(g)
        poly = en_alexander(g, bound=bound)
        r = g.r
    _emit(format_poly(poly, r), args.out)
    return 0


def _cmd_poincare(args) -> int:
    c = parse_curve_file(args.input)
    poly = poincare_poly(c, bound=args.bound) if c.r == 1 else poincare_poly(c)
    _emit(format_poly(poly, c.r), args.out)
    return 0


def _cmd_fibers(args) -> int:
    c = parse_curve_file(args.input)
    if args.window:
        M = JetMatrix(c, args.window)
        top = tuple(w - 2 for w in M.window)
    else:
        M, delta = stable_jet(c)
        top = delta
    lines = []
    for v in iter_box((0,) * c.r, top):
        lines.append("%d\t%s" % (fiber_euler(M, v),
                                 ",".join(str(x) for x in v)))
    _emit("\n".join(lines), args.out)
    return 0


def _cmd_semigroup(args) -> int:
    c = parse_curve_file(args.input)
    lines = []
    delta = semigroup.conductor(c)
    lines.append("conductor\t%s" % ",".join(str(x) for x in delta))
    if c.r == 1:
        for g in semigroup.minimal_generators_r1(c):
            lines.append("generator\t%d" % g)
        bound = args.bound if args.bound is not None else 2 * delta[0] + 2
        top = (bound,)
    else:
        top = vec_add(delta, (2,) * c.r)
    if args.window:
        M = JetMatrix(c, args.window)
        top = tuple(min(t, w - 2) for t, w in zip(top, M.window))
    else:
        M = JetMatrix(c, tuple(t + 2 for t in top))
    box = semigroup.members_box(M, top)
    for v in sorted(box.members):
        lines.append("member\t%s" % ",".join(str(x) for x in v))
    _emit("\n".join(lines), args.out)
    return 0


def _cmd_verify(args) -> int:
    c = parse_curve_file(args.input)
    results = run_verify(c, bound=args.bound, budget=args.budget)
    all_ok = True
    for name, ok, detail in results:
        line = "%s %s" % ("PASS" if ok else "FAIL", name)
        if detail and not ok:
            line += ": " + detail
        print(line)
        all_ok = all_ok and ok
    return 0 if all_ok else 1


def _parse_window(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ParseError("bad --window %r" % text) from exc


def _build_parser(cmd: str) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curvealex %s" % cmd)
    p.add_argument("input", help="input JSON file")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="maximum blow-up generations")
    p.add_argument("--bound", type=int, default=None,
                   help="series truncation degree for one-branch curves "
                        "(default: twice the conductor plus two)")
    if cmd == "alexander":
        p.add_argument("--via", choices=("graph", "poincare", "fibers"),
                       default="graph", help="which pipeline computes it")
    if cmd in ("fibers", "semigroup"):
        p.add_argument("--window", type=_parse_window, default=None,
                       help="explicit jet window 'a,b,...'")
    return p


_HANDLERS = {
    "resolve": _cmd_resolve,
    "alexander": _cmd_alexander,
    "poincare": _cmd_poincare,
    "fibers": _cmd_fibers,
    "semigroup": _cmd_semigroup,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in COMMANDS:
        print("usage: curvealex {%s} INPUT [flags]" % "|".join(COMMANDS),
              file=sys.stderr)
        return 64
    cmd, rest = argv[0], argv[1:]
    parser = _build_parser(cmd)
    args = parser.parse_args(rest)
    try:
        return _HANDLERS[cmd](args)
    except ParseError as exc:
        print("%s: %s" % (exc.code, exc), file=sys.stderr)
        return 2
    except curve_mod.ValidationError as exc:
        print("%s: %s" % (exc.code, exc), file=sys.stderr)
        return 3
    except (NotDivisibleError, BudgetExceededError, BoundaryNonzeroError,
            GraphError) as exc:
        print("%s: %s" % (exc.code, exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
