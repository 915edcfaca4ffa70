"""Command-line interface: ``isovariant <command> [options]``.

Every command builds a plain JSON-compatible report first; ``--format table``
only changes how that report is rendered.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import warnings
from fractions import Fraction
from typing import Sequence

from .complexes import GSimplicialComplex
from .conncalc import (ConnFn, bm_cube, bm_pushout, class_keys, constant, freudenthal_suite,
                       from_table, measure_conn_fn, space_conn_fn)
from .errors import IntermediateStrataWarning, IsovariantError
from .groups import FiniteGroup, chain_class, make_group
from .homology import format_conn, homology_of, pushout_cone_check
from .scene import Scene, parse_scene
from .strata import EQUIVARIANT, ISOVARIANT, induced_link_map, link_model, link_suspension
from .universe import DEFAULT_S, universe_check

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2
MODES = {"isvt": ISOVARIANT, "eqvt": EQUIVARIANT, ISOVARIANT: ISOVARIANT, EQUIVARIANT: EQUIVARIANT}
TEST_GROUPS = ("cyclic 2", "cyclic 3", "cyclic 4", "cyclic 6", "symmetric 3")


class VerificationFailed(Exception):
    """Raised after a report is complete when the verification it describes failed."""

    def __init__(self, report):
        super().__init__("verification failed")
        self.report = report


# ----------------------------------------------------------------------
# report builders


def _chains(G: FiniteGroup, mode: str, chain: str | None, max_len: int):
    if chain is not None:
        c = G.parse_chain(chain)
        if mode == EQUIVARIANT and c.length != 0:
            raise IsovariantError("equivariant mode takes a single subgroup")
        return [chain_class(G, c).representative]
    return [cc.representative for cc in class_keys(G, mode, max_len)]


def conn_fn_report(n: ConnFn) -> dict:
    return {"mode": n.mode,
            "values": n.to_dict(),
            "provisional": sorted(n.label(k) for k in n.provisional),
            "homological": sorted(n.label(k) for k in n.homological)}


def link_entry(X: GSimplicialComplex, chain, mode: str) -> dict:
    G = X.group
    L = link_model(X, chain, mode)
    H = L.homology()
    c = L.connectivity()
    return {"chain": G.chain_label(chain),
            "mode": mode,
            "provisional": L.provisional,
            "f_vector": list(L.complex.f_vector),
            "components": L.n_components,
            "homology": H.to_dict(),
            "reduced_betti": list(H.reduced_betti),
            "connectivity": format_conn(c.value),
            "homological_caveat": c.homological}


def links_report(scene: Scene, space: str, chain=None, max_len: int = 1,
                 mode: str = ISOVARIANT) -> dict:
    X = scene.space(space)
    return {"command": "links", "space": space,
            "links": [link_entry(X, c, mode) for c in _chains(X.group, mode, chain, max_len)]}


def conn_report(scene: Scene, name: str, max_len: int = 1, mode: str = ISOVARIANT) -> dict:
    f = scene.map(name)
    return {"command": "conn", "map": name, "conn": conn_fn_report(measure_conn_fn(f, mode, max_len))}


def _expected_check(expected: dict | None, bound: ConnFn) -> dict | None:
    if not expected:
        return None
    got = bound.to_dict()
    want = from_table(bound.group, expected, bound.mode).to_dict()
    mismatch = {k: {"expected": v, "bound": got.get(k)} for k, v in want.items() if got.get(k) != v}
    return {"values": want, "agrees": not mismatch, "mismatches": mismatch}


def bm_report(scene: Scene, name: str, max_len: int = 1, mode: str = ISOVARIANT) -> dict:
    sq = scene.square(name)
    n = measure_conn_fn(scene.map(sq["u"]), mode, max_len)
    m = measure_conn_fn(scene.map(sq["v"]), mode, max_len)
    bound = bm_pushout(n, m)
    rep = {"command": "bm", "square": name, "n": conn_fn_report(n), "m": conn_fn_report(m),
           "gap_bound": conn_fn_report(bound)}
    exp = _expected_check(sq.get("expected", {}).get("gap_bound"), bound)
    if exp is not None:
        rep["reference"] = exp
    return rep


def cube_bm_report(scene: Scene | None, name: str | None, n: int | None = None,
                   const: str | None = None, group: str = "cyclic 1", max_len: int = 1,
                   mode: str = ISOVARIANT) -> dict:
    if name is not None:
        if scene is None:
            raise IsovariantError("a named cube needs --scene")
        cb = scene.cube(name)
        edges = [measure_conn_fn(scene.map(e), mode, max_len) for e in cb["edges"]]
        bound = bm_cube(len(edges), edges)
        rep = {"command": "cube-bm", "cube": name,
               "edges": [conn_fn_report(e) for e in edges], "gap_bound": conn_fn_report(bound)}
        exp = _expected_check(cb.get("expected", {}).get("gap_bound"), bound)
        if exp is not None:
            rep["reference"] = exp
        return rep
    if n is None or const is None:
        raise IsovariantError("cube-bm needs a cube name or both --n and --const")
    G = scene.group if scene is not None else make_group(group)
    edges = [constant(G, const, mode, max_len) for _ in range(n)]
    bound = bm_cube(n, edges)
    return {"command": "cube-bm", "n": n, "const": const, "group": G.name,
            "edges": [conn_fn_report(e) for e in edges], "gap_bound": conn_fn_report(bound)}


def cocartesian_report(scene: Scene, name: str, chain=None, max_len: int = 1,
                       mode: str = ISOVARIANT) -> dict:
    sq = scene.square(name)
    u, v, i, j = (scene.map(sq[k]) for k in ("u", "v", "i", "j"))
    G = scene.group
    rows = []
    for c in _chains(G, mode, chain, max_len):
        lu, lv, li, lj = (induced_link_map(f, c, mode) for f in (u, v, i, j))
        provisional = mode == ISOVARIANT and any(
            link_model(X, c).provisional for X in (u.source, u.target, v.target, i.target))
        rows.append({"chain": G.chain_label(c), "cocartesian": pushout_cone_check(lu, lv, li, lj),
                     "provisional": provisional})
    return {"command": "cocartesian", "square": name, "mode": mode, "links": rows,
            "passed": all(r["cocartesian"] for r in rows)}


def suspend_report(scene: Scene, space: str, times: int, chain=None, max_len: int = 1) -> dict:
    X = scene.space(space)
    rows = []
    for c in _chains(X.group, ISOVARIANT, chain, max_len):
        L = link_suspension(link_model(X, c), times)
        H = homology_of(L.complex)
        rows.append({"chain": X.group.chain_label(c), "suspensions": L.suspensions,
                     "provisional": L.provisional, "homology": H.to_dict(),
                     "reduced_betti": list(H.reduced_betti)})
    return {"command": "suspend", "space": space, "times": times, "links": rows}


def freudenthal_report(scene: Scene, name: str, max_len: int = 1) -> dict:
    if name in scene.maps:
        n = measure_conn_fn(scene.map(name), ISOVARIANT, max_len)
        kind = "map"
    else:
        n = space_conn_fn(scene.space(name), ISOVARIANT, max_len)
        kind = "space"
    b = freudenthal_suite(n)
    return {"command": "freudenthal", "input": name, "kind": kind, "n": conn_fn_report(n),
            "universe_bound": conn_fn_report(b.universe_bound),
            "freudenthal_bound": conn_fn_report(b.freudenthal_bound)}


def universe_report(groups: Sequence[FiniteGroup], pairs: str = "all", seed: int | None = None,
                    extra_samples: int = 0) -> dict:
    samples = list(DEFAULT_S)
    if seed is not None and extra_samples:
        rng = random.Random(seed)
        samples += [Fraction(rng.randint(1, 99), 100) for _ in range(extra_samples)]
    out = []
    for G in groups:
        reports = universe_check(G, samples)
        if pairs != "all":
            H, K = G.parse_chain(pairs).subgroups
            keep = (G.label(H), G.label(K))
            reports = [r for r in reports if r.name == "partial_sum" or (r.H, r.K) == keep]
        out.extend(r.to_dict() for r in reports)
    return {"command": "universe-check", "samples": [str(s) for s in samples], "reports": out,
            "passed": all(r["passed"] for r in out)}


# ----------------------------------------------------------------------
# rendering


def _flags(name: str, conn: dict) -> str:
    marks = []
    if name in conn.get("provisional", []):
        marks.append("PROVISIONAL")
    if name in conn.get("homological", []):
        marks.append("homological")
    return ", ".join(marks)


def _conn_table(title: str, conn: dict) -> list[str]:
    lines = [f"{title} ({conn['mode']})"]
    for k, v in conn["values"].items():
        flag = _flags(k, conn)
        lines.append(f"  {k:<16} {v:>6}" + (f"   [{flag}]" if flag else ""))
    return lines


def _fmt_homology(h: dict) -> str:
    parts = []
    for d, b in enumerate(h["betti"]):
        tors = h["torsion"][d] if d < len(h["torsion"]) else []
        term = " + ".join(([f"Z^{b}" if b > 1 else "Z"] if b else []) + [f"Z/{t}" for t in tors])
        parts.append(f"H{d}={term or '0'}")
    return " ".join(parts) or "(empty)"


def render_table(rep: dict) -> str:
    cmd = rep["command"]
    lines: list[str] = []
    if cmd == "links":
        lines.append(f"links of {rep['space']}")
        for r in rep["links"]:
            mark = "  PROVISIONAL" if r["provisional"] else ""
            caveat = " (homological)" if r["homological_caveat"] else ""
            lines.append(f"  {r['chain']:<16} f={tuple(r['f_vector'])} pi0={r['components']} "
                         f"{_fmt_homology(r['homology'])} conn={r['connectivity']}{caveat}{mark}")
    elif cmd == "conn":
        lines += _conn_table(f"connectivity of {rep['map']}", rep["conn"])
    elif cmd in ("bm", "cube-bm"):
        head = rep.get("square") or rep.get("cube") or f"n={rep['n']}, const={rep['const']}"
        lines.append(f"{cmd} {head}")
        if cmd == "bm":
            lines += _conn_table("n", rep["n"]) + _conn_table("m", rep["m"])
        else:
            for k, e in enumerate(rep["edges"]):
                lines += _conn_table(f"edge {k}", e)
        lines += _conn_table("gap map bound", rep["gap_bound"])
        if "reference" in rep:
            ref = rep["reference"]
            lines.append(f"reference values {ref['values']}: "
                         + ("agree" if ref["agrees"] else f"DISAGREE {ref['mismatches']}"))
    elif cmd == "cocartesian":
        lines.append(f"cocartesian check of {rep['square']} ({rep['mode']})")
        for r in rep["links"]:
            mark = "  PROVISIONAL" if r["provisional"] else ""
            lines.append(f"  {r['chain']:<16} {'pass' if r['cocartesian'] else 'FAIL'}{mark}")
    elif cmd == "suspend":
        lines.append(f"{rep['space']} links suspended {rep['times']} time(s)")
        for r in rep["links"]:
            mark = "  PROVISIONAL" if r["provisional"] else ""
            lines.append(f"  {r['chain']:<16} reduced betti {tuple(r['reduced_betti'])}{mark}")
    elif cmd == "freudenthal":
        lines += _conn_table(f"input {rep['kind']} {rep['input']}", rep["n"])
        lines += _conn_table("X -> U bound", rep["universe_bound"])
        lines += _conn_table("X -> Omega_U S_U X bound", rep["freudenthal_bound"])
    elif cmd == "universe-check":
        for r in rep["reports"]:
            status = "pass" if r["passed"] else "FAIL"
            pair = "" if r["H"] == "*" else f" {r['H']}<{r['K']}"
            lines.append(f"{r['group']:<4} {r['check']:<18}{pair:<12} {status} ({r['checked']} samples)")
            for w in r["witnesses"]:
                lines.append(f"       witness: {w}")
        lines.append("all passed" if rep["passed"] else "FAILED")
    else:  # pragma: no cover
        lines.append(json.dumps(rep, indent=2))
    return "\n".join(lines)


def emit(rep: dict, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(rep, indent=2, sort_keys=False) + "\n")
    else:
        stream.write(render_table(rep) + "\n")


# ----------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scene", help="scene JSON file or bundled scene name")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for randomized sampling (universe-check)")
    common.add_argument("--max-chain-len", type=int, default=1)
    common.add_argument("--mode", choices=("isvt", "eqvt"), default="isvt")

    p = argparse.ArgumentParser(prog="isovariant",
                                description="Links, connectivity and Blakers-Massey bounds "
                                            "for finite G-simplicial complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("links", parents=[common], help="link models with homology")
    s.add_argument("space")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--chain")
    g.add_argument("--all", action="store_true", help="every chain class up to --max-chain-len")

    s = sub.add_parser("conn", parents=[common], help="connectivity function of a map")
    s.add_argument("map")

    s = sub.add_parser("bm", parents=[common], help="Blakers-Massey bound for a square")
    s.add_argument("square")

    s = sub.add_parser("cube-bm", parents=[common], help="cubical Blakers-Massey bound")
    s.add_argument("cube", nargs="?")
    s.add_argument("--n", type=int)
    s.add_argument("--const")
    s.add_argument("--group", default="cyclic 1", help="group for --const without a scene")

    s = sub.add_parser("cocartesian", parents=[common], help="homological pushout check per link")
    s.add_argument("square")
    s.add_argument("--chain")

    s = sub.add_parser("suspend", parents=[common], help="homology of suspended links")
    s.add_argument("space")
    s.add_argument("--times", type=int, required=True)
    s.add_argument("--chain")

    s = sub.add_parser("freudenthal", parents=[common], help="universe and Freudenthal bounds")
    s.add_argument("name", help="a map or a space of the scene")

    s = sub.add_parser("universe-check", parents=[common],
                       help="exact checks in truncations of the complete universe")
    s.add_argument("--pairs", default="all", help='"all" or a single pair such as "e<C2"')
    s.add_argument("--groups", default=None,
                   help="semicolon-separated group specs (default: scene group or test groups)")
    s.add_argument("--extra-samples", type=int, default=3,
                   help="random extra s-samples drawn when --seed is given")
    return p


def _need_scene(args) -> Scene:
    if not args.scene:
        raise IsovariantError(f"{args.command} needs --scene")
    return parse_scene(args.scene)


def run(args: argparse.Namespace) -> dict:
    mode = MODES[args.mode]
    cmd = args.command
    L = args.max_chain_len
    if cmd == "links":
        scene = _need_scene(args)
        return links_report(scene, args.space, args.chain, L, mode)
    if cmd == "conn":
        return conn_report(_need_scene(args), args.map, L, mode)
    if cmd == "bm":
        rep = bm_report(_need_scene(args), args.square, L, mode)
        if "reference" in rep and not rep["reference"]["agrees"]:
            raise VerificationFailed(rep)
        return rep
    if cmd == "cube-bm":
        scene = parse_scene(args.scene) if args.scene else None
        rep = cube_bm_report(scene, args.cube, args.n, args.const, args.group, L, mode)
        if "reference" in rep and not rep["reference"]["agrees"]:
            raise VerificationFailed(rep)
        return rep
    if cmd == "cocartesian":
        rep = cocartesian_report(_need_scene(args), args.square, args.chain, L, mode)
        if not rep["passed"]:
            raise VerificationFailed(rep)
        return rep
    if cmd == "suspend":
        return suspend_report(_need_scene(args), args.space, args.times, args.chain, L)
    if cmd == "freudenthal":
        return freudenthal_report(_need_scene(args), args.name, L)
    if cmd == "universe-check":
        if args.groups:
            groups = [make_group(g) for g in args.groups.split(";")]
        elif args.scene:
            groups = [parse_scene(args.scene).group]
        else:
            groups = [make_group(g) for g in TEST_GROUPS]
        rep = universe_report(groups, args.pairs, args.seed, args.extra_samples)
        if not rep["passed"]:
            raise VerificationFailed(rep)
        return rep
    raise IsovariantError(f"unknown command {cmd!r}")  # pragma: no cover


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntermediateStrataWarning)  # surfaced as flags instead
        try:
            rep = run(args)
        except VerificationFailed as exc:
            emit(exc.report, args.format)
            return EXIT_FAILED
        except IsovariantError as exc:
            err = {"error": type(exc).__name__, "message": str(exc)}
            for attr in ("entity", "witness", "location"):
                if getattr(exc, attr, None) is not None:
                    err[attr] = repr(getattr(exc, attr)) if attr == "witness" else getattr(exc, attr)
            if args.format == "json":
                sys.stdout.write(json.dumps(err, indent=2) + "\n")
            print(f"error: {exc}", file=sys.stderr)
            if err.get("witness"):
                print(f"witness: {err['witness']}", file=sys.stderr)
            return EXIT_INPUT
    emit(rep, args.format)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
