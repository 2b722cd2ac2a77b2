"""Command-line front end: ``twistlab <command> ...``.

Every command prints a JSON report (or writes it to ``--out``). Exit status
0 means the computation finished, 1 a rejected input (with a structured
error naming the offending field), 2 a violated internal invariant.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import shlex
import sys
import traceback
from importlib import resources
from pathlib import Path

from .cells import SurfaceError
from .curves import (
    Curve,
    CurveError,
    NamedCurveSet,
    homotopy_word,
    imin,
)
from .groups import (
    CoincidenceGraph,
    FiniteGroup,
    GroupError,
    Presentation,
    coincidence_graph,
    cyclic_group,
    free_group,
    hamidi_tehrani_certificate,
    intersection_matrix,
    irredundancy_check,
    raag_presentation,
    wreath_presentation,
)
from .stab import (
    StabError,
    cycle_plumbing_sigma,
    cycle_notation,
    equivariant_sequence,
    one_stabilise,
    tower,
    transfer_verdict,
)
from .surface import PlumbingGraph, build_plumbing
from .twists import TwistWord, WordError, apply_word, is_trivial_word
from .zigzag import AlgebraError, hf_dim, twist_word_complex, vertex_object, zigzag_from_tree

DEFAULT_SEED = 20240601
DOMAIN_ERRORS = (SurfaceError, CurveError, WordError, AlgebraError, GroupError, StabError)


class InputError(ValueError):
    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


# -- inputs ------------------------------------------------------------------


def fixture_names() -> list[str]:
    root = resources.files("twistlab") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def read_json(source: str, what: str) -> tuple[dict, str]:
    """Load JSON from a path or a shipped fixture name; return data and raw text."""
    path = Path(source)
    if path.is_file():
        text = path.read_text()
    else:
        name = source[:-5] if source.endswith(".json") else source
        res = resources.files("twistlab") / "fixtures" / f"{name}.json"
        if not res.is_file():
            raise InputError(f"no {what} file or fixture named {source!r}", field=what)
        text = res.read_text()
    try:
        return json.loads(text), text
    except json.JSONDecodeError as e:
        raise InputError(f"{what} is not valid JSON: {e}", field=what) from None


class Context:
    def __init__(self, args):
        self.args = args
        self.digest = hashlib.sha256()
        self.digest.update(json.dumps(_argv_of(args)).encode())
        self._graph = None

    def load(self, source: str, what: str) -> dict:
        data, text = read_json(source, what)
        self.digest.update(text.encode())
        return data

    def graph(self) -> PlumbingGraph:
        if self._graph is None:
            if not getattr(self.args, "graph", None):
                raise InputError("--graph is required", field="graph")
            self._graph = PlumbingGraph.from_json(self.load(self.args.graph, "graph"))
        return self._graph

    def curves(self) -> NamedCurveSet:
        s, cs = build_plumbing(self.graph())
        for item in getattr(self.args, "define", None) or []:
            if "=" not in item:
                raise InputError(f"--define expects name=expr, got {item!r}", field="define")
            name, expr = item.split("=", 1)
            c, origin = curve_expr(cs, expr)
            cs = cs.with_curve(name.strip(), c, origin)
        return cs


def curve_expr(cs: NamedCurveSet, expr: str) -> tuple[Curve, tuple[str, str] | None]:
    """``name`` or ``word : name`` (the image of a named curve under a twist word)."""
    if ":" in expr:
        word, target = expr.split(":", 1)
        w = TwistWord.parse(word)
        target = target.strip()
        return apply_word(cs, w, cs[target]), (str(w), target)
    return cs[expr.strip()], None


def vertex_name(g: PlumbingGraph, x: str) -> str:
    if x in g.vertices:
        return x
    if x.isdigit() and 1 <= int(x) <= len(g.vertices):
        return g.vertices[int(x) - 1]
    raise InputError(f"unknown vertex {x!r}", field="vertex")


def object_expr(A, g: PlumbingGraph, expr: str):
    if ":" in expr:
        word, target = expr.split(":", 1)
        return twist_word_complex(A, TwistWord.parse(word), vertex_name(g, target.strip()))
    return vertex_object(A, vertex_name(g, expr.strip()))


# -- commands ------------------------------------------------------------------


def cmd_plumb(ctx: Context):
    g = ctx.graph()
    s, cs = build_plumbing(g)
    return {
        "surface": s.to_json(),
        "euler_characteristic": s.euler_characteristic(),
        "boundary_components": len(s.boundary_components()),
        "cores": {n: list(c.darts) for n, c in cs.curves.items()},
        "intersection_matrix": intersection_matrix(cs),
    }, ()


def cmd_imin(ctx: Context):
    cs = ctx.curves()
    a, _ = curve_expr(cs, ctx.args.a)
    b, _ = curve_expr(cs, ctx.args.b)
    return imin(cs.surface, a, b), ("minimal intersection number = 2D Floer dimension",)


def cmd_apply(ctx: Context):
    cs = ctx.curves()
    w = TwistWord.parse(ctx.args.word)
    c = apply_word(cs, w, cs[ctx.args.target])
    s = cs.surface
    return {
        "word": str(w),
        "target": ctx.args.target,
        "image": c.to_json(),
        "homotopy_word": homotopy_word(s, c).to_json(),
        "imin": {n: imin(s, c, cs[n]) for n in cs.names if not cs[n].is_arc},
    }, ()


def cmd_check_relation(ctx: Context):
    cs = ctx.curves()
    v = is_trivial_word(cs, TwistWord.parse(ctx.args.word))
    return v.to_json(), ("filling arcs fixed rel boundary implies trivial",)


def cmd_transfer(ctx: Context):
    cs = ctx.curves()
    g = ctx.graph()
    w = TwistWord.parse(ctx.args.word)
    up = None
    if g.is_tree():
        up = (zigzag_from_tree(g), cs.origins)
    v = transfer_verdict(cs, w, tower(cs, ctx.args.height), upstairs=up)
    return v.to_json(), v.theorem_tags


def cmd_hf(ctx: Context):
    g = ctx.graph()
    A = zigzag_from_tree(g)
    X = object_expr(A, g, ctx.args.X)
    Y = object_expr(A, g, ctx.args.Y)
    return hf_dim(X, Y), ("ungraded F2 zigzag model",)


def ss_record(g: PlumbingGraph, s, cs, A, w: TwistWord, i: str, j: str) -> dict:
    up = hf_dim(twist_word_complex(A, w, i), vertex_object(A, j))
    down = imin(s, apply_word(cs, w, cs[i]), cs[j])
    return {
        "word": str(w), "i": i, "j": j, "up": up, "down": down,
        "up_ge_down": up >= down,
        "same_parity": (up - down) % 2 == 0,
        "small_up_equal": up > 1 or up == down,
    }


def cmd_ss_compare(ctx: Context):
    g = ctx.graph()
    A = zigzag_from_tree(g)
    s, cs = build_plumbing(g)
    tags = ("Floer dimension inequality", "parity", "equality when at most one")
    if ctx.args.samples:
        rng = random.Random(seed())
        recs = []
        for _ in range(ctx.args.samples):
            n = rng.randint(0, ctx.args.max_length)
            w = TwistWord(tuple((rng.choice(g.vertices), rng.choice((-1, 1))) for _ in range(n)))
            recs.append(ss_record(g, s, cs, A, w, rng.choice(g.vertices), rng.choice(g.vertices)))
        bad = [r for r in recs if not (r["up_ge_down"] and r["same_parity"] and r["small_up_equal"])]
        return {"samples": len(recs), "violations": bad, "seed": seed()}, tags
    if ctx.args.word is None or ctx.args.i is None or ctx.args.j is None:
        raise InputError("ss-compare needs --word, --i and --j (or --samples)", field="word")
    w = TwistWord.parse(ctx.args.word)
    return ss_record(g, s, cs, A, w, vertex_name(g, ctx.args.i), vertex_name(g, ctx.args.j)), tags


def _names(ctx: Context, cs: NamedCurveSet):
    if ctx.args.curves:
        return ctx.args.curves.split()
    return [n for n in cs.names if not cs[n].is_arc]


def cmd_coincidence(ctx: Context):
    cs = ctx.curves()
    return coincidence_graph(cs, _names(ctx, cs)).to_json(), ("edge iff disjoint",)


def cmd_free_cert(ctx: Context):
    cs = ctx.curves()
    names = _names(ctx, cs)
    cert = hamidi_tehrani_certificate(cs, names)
    ok, pair = irredundancy_check(cs, names)
    out = cert.to_json()
    out["irredundant"] = ok
    if pair:
        out["isotopic_pair"] = list(pair)
    return out, (cert.citation,)


def cmd_raag(ctx: Context):
    if ctx.args.coincidence:
        data = ctx.load(ctx.args.coincidence, "coincidence")
        cg = CoincidenceGraph.from_pairs(data["vertices"], [tuple(e) for e in data.get("edges", [])])
    else:
        cs = ctx.curves()
        cg = coincidence_graph(cs, _names(ctx, cs))
    p = raag_presentation(cg, ctx.args.n)
    out = p.to_json()
    out["text"] = p.to_text()
    return out, ("right-angled Artin system for large twist powers",)


def _group(ctx: Context) -> FiniteGroup:
    if ctx.args.group:
        return FiniteGroup.from_json(ctx.load(ctx.args.group, "group"))
    return cyclic_group(ctx.args.cyclic)


def cmd_wreath(ctx: Context):
    if ctx.args.presentation:
        path = Path(ctx.args.presentation)
        if not path.is_file():
            raise InputError(f"no presentation file {ctx.args.presentation!r}", field="presentation")
        text = path.read_text()
        ctx.digest.update(text.encode())
        gamma = Presentation.parse(text)
    else:
        gamma = free_group(ctx.args.free)
    p = wreath_presentation(gamma, _group(ctx))
    out = p.to_json()
    out["text"] = p.to_text()
    return out, ("wreath product, left translation",)


def cmd_stab(ctx: Context):
    g = ctx.graph()
    cs = ctx.curves()
    out: dict = {}
    names = _names(ctx, cs)
    rec = one_stabilise(cs, names, ctx.args.sigma)
    out["record"] = rec.to_json()
    if ctx.args.cycle_sigma:
        sig = cycle_plumbing_sigma(g)
        out["cycle_sigma"] = {"images": list(sig), "cycle": cycle_notation(sig)}
    return out, ("one-stabilisation doubles the vanishing sequence",)


def cmd_equivariant(ctx: Context):
    cs = ctx.curves()
    names = _names(ctx, cs)
    return equivariant_sequence(names, _group(ctx), cs).to_json(), ("first |G| critical values merge",)


COMMANDS = {
    "plumb": cmd_plumb,
    "imin": cmd_imin,
    "apply": cmd_apply,
    "check-relation": cmd_check_relation,
    "transfer": cmd_transfer,
    "hf": cmd_hf,
    "ss-compare": cmd_ss_compare,
    "coincidence": cmd_coincidence,
    "free-cert": cmd_free_cert,
    "raag": cmd_raag,
    "wreath": cmd_wreath,
    "stab": cmd_stab,
    "equivariant": cmd_equivariant,
}


def seed() -> int:
    return int(os.environ.get("TWISTLAB_SEED", DEFAULT_SEED))


# -- parsing -------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message, field="command line")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twistlab", description=__doc__.splitlines()[0])
    p.add_argument("--suite", help="JSON list of command lines to run in order")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--value", action="store_true", help="print only the result value")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, graph=True, define=False):
        q = sub.add_parser(name)
        q.add_argument("--out")
        q.add_argument("--value", action="store_true")
        if graph:
            q.add_argument("--graph", help="plumbing graph JSON file or fixture name")
        if define:
            q.add_argument("--define", action="append", metavar="NAME=EXPR",
                           help="extra curve: a name or 'word : target'")
        return q

    add("plumb")
    q = add("imin", define=True)
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q = add("apply", define=True)
    q.add_argument("--word", required=True)
    q.add_argument("--target", required=True)
    q = add("check-relation", define=True)
    q.add_argument("--word", required=True)
    q = add("transfer", define=True)
    q.add_argument("--word", required=True)
    q.add_argument("--height", type=int, default=1)
    q = add("hf")
    q.add_argument("--X", required=True)
    q.add_argument("--Y", required=True)
    q = add("ss-compare")
    q.add_argument("--word")
    q.add_argument("--i")
    q.add_argument("--j")
    q.add_argument("--samples", type=int, default=0)
    q.add_argument("--max-length", type=int, default=6)
    for name in ("coincidence", "free-cert"):
        q = add(name, define=True)
        q.add_argument("--curves", help="space-separated curve names (default: all)")
    q = add("raag", define=True)
    q.add_argument("--curves")
    q.add_argument("--coincidence", help="coincidence graph JSON instead of a plumbing")
    q.add_argument("--n", type=int, default=1)
    q = add("wreath", graph=False)
    q.add_argument("--presentation", help="presentation text file (gens:/rels: format)")
    q.add_argument("--free", type=int, default=2, help="use the free group of this rank")
    q.add_argument("--group", help="finite group table JSON")
    q.add_argument("--cyclic", type=int, default=2)
    q = add("stab", define=True)
    q.add_argument("--curves")
    q.add_argument("--sigma", default="id")
    q.add_argument("--cycle-sigma", action="store_true")
    q = add("equivariant", define=True)
    q.add_argument("--curves")
    q.add_argument("--group")
    q.add_argument("--cyclic", type=int, default=2)
    return p


def _argv_of(args) -> list:
    return sorted((k, v) for k, v in vars(args).items() if k not in ("out", "value"))


def run(argv: list[str]) -> tuple[dict, int]:
    """Execute one command line; return the report and exit status."""
    digest = hashlib.sha256(json.dumps(argv).encode()).hexdigest()[:16]
    stage = "parse"
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise InputError("missing subcommand; one of: " + ", ".join(COMMANDS), field="command")
        ctx = Context(args)
        stage = args.command
        result, tags = COMMANDS[args.command](ctx)
        report = {
            "command": ["twistlab", *argv],
            "inputs_digest": ctx.digest.hexdigest()[:16],
            "result": result,
            "theorem_tags": list(tags),
            "exit_status": 0,
        }
        return report, 0
    except (InputError, *DOMAIN_ERRORS) as e:
        return {
            "command": ["twistlab", *argv],
            "inputs_digest": digest,
            "error": {"message": str(e), "field": getattr(e, "field", None), "kind": type(e).__name__},
            "exit_status": 1,
        }, 1
    except (KeyError, TypeError, ValueError) as e:
        return {
            "command": ["twistlab", *argv],
            "inputs_digest": digest,
            "error": {"message": f"malformed input: {e!r}", "field": None, "kind": type(e).__name__},
            "exit_status": 1,
        }, 1
    except Exception as e:  # invariant violations and bugs
        return {
            "command": ["twistlab", *argv],
            "inputs_digest": digest,
            "error": {"message": str(e), "kind": type(e).__name__, "stage": stage,
                      "traceback": traceback.format_exc()},
            "exit_status": 2,
        }, 2


def _emit(obj, out: str | None, value: bool) -> None:
    if value and isinstance(obj, dict) and "result" in obj:
        r = obj["result"]
        text = r if isinstance(r, str) else json.dumps(r, sort_keys=True)
        text = f"{text}\n" if not str(text).endswith("\n") else str(text)
    else:
        text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _suite(path: str) -> tuple[list, int]:
    try:
        items = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        return [{"error": {"message": f"cannot read suite: {e}", "field": "suite"}, "exit_status": 1}], 1
    reports, status = [], 0
    for item in items:
        argv = shlex.split(item) if isinstance(item, str) else list(item)
        rep, code = run(argv)
        reports.append(rep)
        status = max(status, code)
    return reports, status


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "--suite":
        if len(argv) < 2:
            _emit({"error": {"message": "--suite needs a file", "field": "suite"}, "exit_status": 1}, None, False)
            return 1
        rest = argv[2:]
        out = rest[rest.index("--out") + 1] if "--out" in rest else None
        reports, code = _suite(argv[1])
        _emit(reports, out, False)
        return code
    value = "--value" in argv
    out = None
    if "--out" in argv:
        i = argv.index("--out")
        if i + 1 < len(argv):
            out = argv[i + 1]
    report, code = run(argv)
    _emit(report, out, value and code == 0)
    return code


if __name__ == "__main__":
    sys.exit(main())
