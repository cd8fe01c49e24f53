"""Command line entry point: ``binghouse <command> ...``.

Every command reads and writes the JSON complex format
``{"vertices": [{"id", "tag"?, "coords"?}], "top_simplices": [[...]], "orientation"?: [...]}``
and maps as ``{"source", "target", "vertex_map": [[v, w], ...]}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .collapse import free_faces, greedy_collapse, is_collapsible
from .complex import SimplicialComplex, SimplicialMap, validate
from .constructions import DataChecksumError, load_house2d, load_y3
from .homology import Z, Z2, homology
from .immersion import (DegenerateMap, SheetChain, UnclassifiableLink, is_pl_immersion, local_model_census,
                        multiplicity, z2_cycle_test, additivity_check)
from .presentation import edge_path_presentation, tietze_simplify
from .report import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_DATA = 0, 1, 2


def _read_json(path):
    with open(path) as fh:
        return json.load(fh)


def _load(path) -> SimplicialComplex:
    K = SimplicialComplex.from_json(_read_json(path))
    rep = validate(K)
    if not rep:
        raise SystemExit(f"{path}: invalid complex (closure {rep.closure_violations[:3]}, "
                         f"repeated vertices {rep.duplicate_vertices[:3]})")
    return K


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _with_coords(K: SimplicialComplex, coords: dict) -> dict:
    data = K.to_json()
    for v in data["vertices"]:
        c = coords.get(v["id"])
        if c is not None:
            v["coords"] = list(c)
    return data


# -- commands --------------------------------------------------------------------

def cmd_build(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.target == "house2d":
        h = load_house2d(args.data_dir)
        files = {"X.json": _with_coords(h.X, h.coords["X"]),
                 "sphere.json": _with_coords(h.f.source, h.coords["sphere"]),
                 "f.json": h.f.to_json()}
    else:
        y = load_y3(args.data_dir)
        files = {"Y.json": y.Y.to_json(), "M.json": y.M.to_json(), "f.json": y.f.to_json()}
    for name, data in files.items():
        (out / name).write_text(json.dumps(data, separators=(",", ":"), sort_keys=True) + "\n")
        print(out / name)
    return EXIT_OK


def cmd_verify(args):
    report = run_suite(args.target, data_dir=args.data_dir, seed=args.seed, jobs=args.jobs, only=args.only)
    text = report.to_json(timings=args.timings)
    if args.report:
        Path(args.report).write_text(text)
    for c in report.checks:
        print(f"{c.verdict.upper():12s} {c.id}", file=sys.stderr)
    if not args.report:
        sys.stdout.write(text)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_homology(args):
    K = _load(args.file)
    h = homology(K, Z2 if args.z2 else Z)
    _emit(h.as_dict())
    return EXIT_OK


def cmd_pi1(args):
    K = _load(args.file)
    P = tietze_simplify(edge_path_presentation(K), budget=args.budget)
    _emit(P.as_dict())
    return EXIT_OK


def cmd_collapse(args):
    K = _load(args.file)
    if args.exhaustive:
        verdict, cert = is_collapsible(K, node_budget=args.budget)
        out = {"collapsible": verdict,
               "certificate": [[list(s.free_face), list(s.coface)] for s in cert] if cert else None}
    else:
        seq = greedy_collapse(K, seed=args.seed)
        out = {"free_faces": len(free_faces(K)), "moves": seq.to_json(),
               "residue": seq.residue.to_json(), "residue_f_vector": seq.residue.f_vector()}
    _emit(out)
    return EXIT_OK


def cmd_immerse(args):
    f = SimplicialMap.from_json(_read_json(args.map))
    try:
        imm = is_pl_immersion(f)
    except DegenerateMap as e:
        print(f"degenerate map: {e}", file=sys.stderr)
        return EXIT_FAIL
    m = multiplicity(f)
    ok, _ = additivity_check(f, m)
    weights = args.weights
    chain = SheetChain.ones(f.target) if weights == "ones" else SheetChain.from_multiplicity(m)
    try:
        census = local_model_census(f.target).as_dict()
    except UnclassifiableLink as e:
        census = {"error": str(e)}
    _emit({"immersion": imm.ok, "witness": imm.witness,
           "multiplicity_histogram": m.histogram(), "additivity": ok,
           "z2_cycle": {"weights": weights, "result": z2_cycle_test(f.target, chain)},
           "census": census})
    return EXIT_OK if imm.ok else EXIT_FAIL


def cmd_export(args):
    data = _read_json(args.file)
    K = SimplicialComplex.from_json(data)
    coords = {v["id"]: v["coords"] for v in data.get("vertices", []) if "coords" in v}
    missing = [v for v in K.vertices if v not in coords]
    if missing:
        print(f"{args.file}: no coordinates for vertices {missing[:5]}; OFF needs coordinates", file=sys.stderr)
        return EXIT_FAIL
    text = K.to_off(coords)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="binghouse", description=__doc__.splitlines()[0])
    p.add_argument("--data-dir", help="directory holding the shipped datasets and checksums.json")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write the complexes and quotient map as JSON")
    b.add_argument("target", choices=sorted(SUITES))
    b.add_argument("--out", default=".")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="run a gate suite and write a report")
    v.add_argument("target", choices=sorted(SUITES))
    v.add_argument("--report", help="write the JSON report here instead of stdout")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--seed", type=int, default=0, help="collapse order seed (0 = lexicographic)")
    v.add_argument("--timings", action="store_true", help="include per-check timings (breaks byte identity)")
    v.add_argument("--only", nargs="*", help="run only checks whose id starts with one of these")
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("homology", help="Betti numbers and torsion")
    h.add_argument("file")
    h.add_argument("--z2", action="store_true")
    h.set_defaults(func=cmd_homology)

    g = sub.add_parser("pi1", help="simplified edge-path presentation")
    g.add_argument("file")
    g.add_argument("--budget", type=int, default=1_000_000)
    g.set_defaults(func=cmd_pi1)

    c = sub.add_parser("collapse", help="greedy or exhaustive collapsing")
    c.add_argument("file")
    c.add_argument("--exhaustive", action="store_true")
    c.add_argument("--budget", type=int, default=10_000, help="node budget for --exhaustive")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_collapse)

    i = sub.add_parser("immerse", help="immersion, multiplicity and sheet-chain analysis of a map")
    i.add_argument("map")
    i.add_argument("--weights", choices=["ones", "m"], default="ones")
    i.set_defaults(func=cmd_immerse)

    e = sub.add_parser("export", help="convert a complex with coordinates")
    e.add_argument("file")
    e.add_argument("--off", action="store_true", required=True, help="emit OFF (the only export format)")
    e.add_argument("-o", "--out", help="output path (default stdout)")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except DataChecksumError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
