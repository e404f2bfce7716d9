"""Command-line interface: ``cubik <subcommand> ...``.

Exit codes: 0 on success, 1 on a domain failure (bad input file, a lift that
was expected but does not exist), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from importlib import resources
from pathlib import Path

from .cube import CubeError, NotLiftable, cube_from_json, cube_to_json, lift, project
from .grid import GridDiagram, GridError, component_count, crossings, format_grid, new_grid, parse_grid
from .invariants import StandardDiagramParams, InvalidParams, jones, legendrian_data, standard_diagram
from .knots import UNKNOWN, fingerprint_id, identify, load_table
from .moves import Move, MoveError, apply_move, cyclic_orbit, legal_moves, legendrian_census, reachability_class
from .obstructions import CANDIDATE, filter_grid, format_verdict
from .search import EnumSpec, census_csv, cube_number_survey, run_shards, shard_space, write_survey

BUNDLED = "bundled:"


class DomainError(Exception):
    pass


def _read_source(source: str) -> str:
    if source.startswith(BUNDLED):
        name = source[len(BUNDLED):]
        return resources.files("cubik").joinpath(f"data/{name}.grid").read_text(encoding="ascii")
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="ascii")
    except OSError as exc:
        raise DomainError(f"cannot read {source}: {exc.strerror}") from exc


def _parse_inline(text: str) -> GridDiagram:
    """``X-cols/O-cols`` such as ``3,4,0,1,2/0,1,2,3,4``."""
    xs, _, os_ = text.partition("/")
    x = [int(v) for v in xs.split(",")]
    o = [int(v) for v in os_.split(",")]
    return new_grid(len(x), x, o)


def _load_grid(args) -> GridDiagram:
    if getattr(args, "standard", None):
        p, j, k = (int(v) for v in args.standard.split(","))
        return standard_diagram(StandardDiagramParams(p, j, k))
    if getattr(args, "grid", None):
        return _parse_inline(args.grid)
    if not getattr(args, "source", None):
        raise DomainError("no grid given (use a file, --grid or --standard)")
    text = _read_source(args.source)
    if text.lstrip().startswith("{"):
        G, _ = project(cube_from_json(text), "z")
        return G
    return parse_grid(text)


def _add_grid_input(p: argparse.ArgumentParser, standard: bool = False) -> None:
    p.add_argument("source", nargs="?", help="grid file, cube JSON, '-' for stdin, or bundled:<name>")
    p.add_argument("--grid", help="inline grid as X-cols/O-cols, e.g. 3,4,0,1,2/0,1,2,3,4")
    if standard:
        p.add_argument("--standard", help="standard torus-knot diagram p,j,k")


def _knot_name(G: GridDiagram) -> str:
    rec = identify(G)
    return rec if rec == UNKNOWN else rec.name


def cmd_validate(args) -> int:
    if args.source and not args.grid:
        text = _read_source(args.source)
        if text.lstrip().startswith("{"):
            C = cube_from_json(text)
            print(f"valid cube n={C.n} markings={len(C.markings)}")
            return 0
    G = _load_grid(args)
    print(f"valid grid n={G.n} components={component_count(G)} crossings={len(crossings(G))}")
    return 0


def cmd_lift(args) -> int:
    G = _load_grid(args)
    try:
        C = lift(G)
    except NotLiftable as exc:
        print(f"NotLiftable: {exc.reason}")
        return 1 if args.expect_lift else 0
    print(cube_to_json(C))
    return 0


def cmd_obstruct(args) -> int:
    if args.random:
        rng = random.Random(args.seed)
        from .cube import lift_exists

        counts = {"grids": 0, "filtered": 0, "violations": 0}
        while counts["grids"] < args.random:
            x = rng.sample(range(args.size), args.size)
            o = rng.sample(range(args.size), args.size)
            if any(a == b for a, b in zip(x, o)):
                continue
            G = new_grid(args.size, x, o)
            if component_count(G) != 1:
                continue
            counts["grids"] += 1
            if filter_grid(G).verdict != CANDIDATE:
                counts["filtered"] += 1
                counts["violations"] += lift_exists(G)
        print(" ".join(f"{k}={v}" for k, v in counts.items()))
        return 1 if counts["violations"] else 0
    G = _load_grid(args)
    v = filter_grid(G)
    if args.format == "json":
        print(json.dumps({"verdict": v.verdict, "matches": [
            {"kind": m.kind, "variant": m.variant, "anchor": m.anchor, "region": m.region, "witness": m.witness}
            for m in v.matches]}))
    else:
        print(format_verdict(G, v))
    return 0


def cmd_invariants(args) -> int:
    G = _load_grid(args)
    d = legendrian_data(G)
    V = jones(G)
    if args.format == "json":
        print(json.dumps({"knot": _knot_name(G), "writhe": d.writhe, "tb": d.tb, "r": d.r,
                          "down_cusps": d.down_cusps, "up_cusps": d.up_cusps, "jones": V.fingerprint()}))
    else:
        print(f"knot={_knot_name(G)} writhe={d.writhe} tb={d.tb} r={d.r} down_cusps={d.down_cusps} up_cusps={d.up_cusps}")
    return 0


def cmd_jones(args) -> int:
    G = _load_grid(args)
    V = jones(G)
    name = _knot_name(G) if component_count(G) == 1 else "link"
    print(f"{V.format('t')}\t{name}\t{fingerprint_id(V.fingerprint())}")
    return 0


def cmd_enumerate(args) -> int:
    prefix = tuple(int(v) for v in args.prefix.split(",")) if args.prefix else ()
    opts = dict(use_filters=not args.no_filters, audit_every=args.audit_every)
    specs = [EnumSpec(args.n, prefix=prefix, **opts)] if prefix else shard_space(args.n, min(args.prefix_len, args.n), **opts)
    st = run_shards(specs, args.threads, args.checkpoint_dir)
    if args.format == "json":
        print(json.dumps(st.to_json(), sort_keys=True))
    else:
        print(",".join(st.counts))
        print(",".join(str(v) for v in st.counts.values()))
    return 0


def _survey_figure(result, out: Path) -> None:
    from .render import save_figure
    import matplotlib.pyplot as plt

    sizes = sorted(result.stats_by_size)
    fig, ax = plt.subplots(figsize=(6, 4))
    keys = ("no_order", "type1", "type2", "candidate", "lifted")
    width = 0.15
    for i, k in enumerate(keys):
        vals = [max(result.stats_by_size[n][k], 0) for n in sizes]
        ax.bar([n + (i - 2) * width for n in sizes], vals, width, label=k)
    ax.set_yscale("symlog")
    ax.set_xlabel("grid size")
    ax.set_ylabel("knot grids")
    ax.set_xticks(sizes)
    ax.legend(fontsize=8)
    for suffix in ("svg", "png"):
        save_figure(fig, out / f"survey_stats.{suffix}")


def cmd_survey(args) -> int:
    result = cube_number_survey(args.max_n, min_n=args.min_n, threads=args.threads, prefix_len=args.prefix_len,
                                checkpoint_dir=args.checkpoint_dir, use_filters=not args.no_filters)
    out = Path(args.out)
    write_survey(result, out)
    _survey_figure(result, out)
    sys.stdout.write((out / "survey.csv").read_text(encoding="ascii"))
    return 0


def _census_figure(buckets, names, out: Path) -> None:
    from .render import save_figure
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for fp in sorted({b.fingerprint for b in buckets.values()}):
        pts = [b for b in buckets.values() if b.fingerprint == fp]
        ax.scatter([b.r for b in pts], [b.tb for b in pts], s=[10 + 3 * b.count ** 0.5 for b in pts],
                   label=names.get(fp, fingerprint_id(fp)), alpha=0.7)
    ax.set_xlabel("rotation number r")
    ax.set_ylabel("tb")
    ax.legend(fontsize=7)
    for suffix in ("svg", "png"):
        save_figure(fig, out / f"census.{suffix}")


def cmd_census(args) -> int:
    n = args.n if args.n else args.p + 2
    table = load_table()
    names = {r.fingerprint: r.name for r in table}
    wanted = None
    if not args.all_knots:
        wanted = {r.fingerprint for r in table if r.name.startswith(("3_1", "5_1", "7_1")) and r.name.endswith("_left")}
    buckets = legendrian_census(n, with_lift=not args.no_lift, fingerprints=wanted)
    text = census_csv(buckets)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "census.csv").write_text(text, encoding="ascii")
    _census_figure(buckets, names, out)
    sys.stdout.write(text)
    return 0


def _parse_move(text: str) -> Move:
    kind, _, idx = text.partition(":")
    return Move(kind, int(idx) if idx else 0)


def cmd_moves(args) -> int:
    G = _load_grid(args)
    if args.apply:
        for m in args.apply:
            G = apply_move(G, _parse_move(m))
        sys.stdout.write(format_grid(G))
        return 0
    if args.list:
        print(" ".join(str(m) for m in legal_moves(G)))
        return 0
    if args.orbit == "cyclic":
        members = sorted(cyclic_orbit(G))
        print(f"cyclic_orbit size={len(members)}")
    else:
        rep = reachability_class(G)
        members = list(rep.members)
        tbr = " ".join(f"({t},{r})" for t, r in sorted(rep.tb_r))
        print(f"class size={len(members)} knot_types={len(rep.fingerprints)} tb_r={tbr}")
    if args.members:
        for H in members:
            print(",".join(map(str, H.x_cols)) + "/" + ",".join(map(str, H.o_cols)))
    return 0


def cmd_render(args) -> int:
    from .render import cube_figure, figure_bytes, front_figure, grid_figure, render

    cube = None
    if args.source and not args.grid and not args.standard:
        text = _read_source(args.source)
        if text.lstrip().startswith("{"):
            cube = cube_from_json(text)
    fmt = args.format
    if fmt == "ascii" and cube is not None:
        raise DomainError("cube diagrams render as svg or png only")
    if fmt == "ascii":
        doc = render(_load_grid(args), "ascii").encode("ascii")
    else:
        if cube is not None:
            fig = cube_figure(cube)
        else:
            G = _load_grid(args)
            fig = front_figure(G) if args.view == "front" else grid_figure(G)
        doc = figure_bytes(fig, fmt)
    if args.out:
        Path(args.out).write_bytes(doc)
    else:
        sys.stdout.buffer.write(doc)
    return 0


def _common_flags(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--seed", type=int, default=default(0), help="seed for randomized runs")
    p.add_argument("--threads", type=int, default=default(None), help="worker processes (capped by CUBIK_THREADS)")
    p.add_argument("--checkpoint-dir", default=default(None), help="directory for resumable checkpoints")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubik", description="Grid diagrams, cube diagrams and cube-number searches.")
    _common_flags(parser, lambda v: v)
    # the same flags are accepted after the subcommand without clobbering earlier values
    common = argparse.ArgumentParser(add_help=False)
    _common_flags(common, lambda v: argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add("validate", help="check a grid file or cube JSON")
    _add_grid_input(p)
    p.set_defaults(func=cmd_validate)

    p = add("lift", help="lift a grid to a cube diagram")
    _add_grid_input(p, standard=True)
    p.add_argument("--expect-lift", action="store_true", help="exit 1 if the grid does not lift")
    p.set_defaults(func=cmd_lift)

    p = add("obstruct", help="Type 1 / Type 2 filter verdict")
    _add_grid_input(p, standard=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--random", type=int, default=0, metavar="COUNT", help="audit the filter on COUNT random knot grids")
    p.add_argument("--size", type=int, default=6, help="grid size for --random")
    p.set_defaults(func=cmd_obstruct)

    p = add("invariants", help="writhe, tb, rotation number and knot type")
    _add_grid_input(p, standard=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_invariants)

    p = add("jones", help="Jones polynomial")
    _add_grid_input(p, standard=True)
    p.set_defaults(func=cmd_jones)

    p = add("enumerate", help="count grids of one size by filter verdict")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prefix", default="", help="only the shard whose x_cols start with these columns")
    p.add_argument("--prefix-len", type=int, default=1, help="shard by this many leading x_cols entries")
    p.add_argument("--no-filters", action="store_true")
    p.add_argument("--audit-every", type=int, default=0, help="re-lift every k-th filtered grid")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_enumerate)

    p = add("survey", help="least cube size per knot type up to --max-n")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--prefix-len", type=int, default=1)
    p.add_argument("--no-filters", action="store_true")
    p.add_argument("--out", default="survey_out", help="directory for CSVs, witnesses and figures")
    p.set_defaults(func=cmd_survey)

    p = add("census", help="Legendrian census of left-hand (p,2) torus knots")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="grid size (default p+2)")
    p.add_argument("--all-knots", action="store_true", help="keep every knot type, not only left (p,2) torus knots")
    p.add_argument("--no-lift", action="store_true")
    p.add_argument("--out", default="census_out")
    p.set_defaults(func=cmd_census)

    p = add("moves", help="apply moves, list legal moves, or compute orbits")
    _add_grid_input(p, standard=True)
    p.add_argument("--apply", nargs="+", metavar="MOVE", help="e.g. CyclicDown CommuteRows:2")
    p.add_argument("--list", action="store_true", help="list legal moves")
    p.add_argument("--orbit", choices=("cyclic", "full"), default="full")
    p.add_argument("--members", action="store_true", help="print every member")
    p.set_defaults(func=cmd_moves)

    p = add("render", help="draw a grid, front or cube diagram")
    _add_grid_input(p, standard=True)
    p.add_argument("--format", choices=("ascii", "svg", "png"), default="ascii")
    p.add_argument("--view", choices=("grid", "front"), default="grid")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, GridError, CubeError, InvalidParams, MoveError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
