"""Command-line front end: ``zmono <subcommand> ...``.

Exit codes: 0 ok, 1 invalid candidate, 2 construction or repair failure,
3 verification mismatch, 4 I/O or format error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .maps import (
    FlagMap,
    MapError,
    SSViolated,
    cells,
    dumps_map,
    euler_characteristic,
    is_orientable,
    load_map,
    satisfies_ss,
    trace_zigzags,
)
from .monodromy import (
    SYMMETRIES,
    CandidateError,
    classify_candidates,
    count_candidates,
    enumerate_candidates,
    face_frame,
    face_frame_from_flag,
    parse_candidate,
    z_monodromy,
)
from .planar import VerificationMismatch, assemble_quad_map, boundary_order
from .surface import SurfaceSpec, SurfaceSpecError, realize_on_surface
from .simplify import trace_lines

EXIT_OK, EXIT_INVALID, EXIT_BUILD, EXIT_MISMATCH, EXIT_IO = 0, 1, 2, 3, 4

log = logging.getLogger("zmono")


class NoGeometry(MapError):
    pass


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# --- exporters --------------------------------------------------------------------------


def export_dot(m: FlagMap, name: str = "map") -> str:
    """Undirected multigraph in DOT; marks are listed on the vertex holding their flag."""
    at_vertex: dict[int, list[str]] = {}
    for mark, f in sorted(m.marks.items()):
        at_vertex.setdefault(m.vertices.of(f), []).append(mark)
    lines = [f"graph {name} {{"]
    for v in range(len(m.vertices)):
        marks = " ".join(at_vertex.get(v, []))
        label = f"v{v}" + (f"\\n{marks}" if marks else "")
        lines.append(f'  v{v} [label="{label}", marks="{marks}"];')
    for e in range(len(m.edges)):
        a, b = m.edge_ends(e)
        lines.append(f'  v{a} -- v{b} [id="e{e}", label="{e}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _svg_xy(p, scale: int = 30) -> tuple[str, str]:
    x, y = (Fraction(c) for c in p)
    return f"{float(x * scale):.3f}", f"{float(-y * scale):.3f}"


def export_svg(drawing) -> str:
    """Picture of the construction: circles, chords, chess colours and labels."""
    if drawing is None:
        raise NoGeometry("map carries no construction coordinates")
    k = drawing.k
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-300 -300 600 600" width="600" height="600">',
        '<g id="faces">',
    ]
    for colour, poly in drawing.faces:
        pts = " ".join(",".join(_svg_xy(p)) for p in poly)
        fill = "#9a9a9a" if colour == "b" else "#ffffff"
        out.append(f'<polygon class="face-{colour}" points="{pts}" fill="{fill}" stroke="none"/>')
    out.append("</g>")
    out.append('<g id="circles" fill="none" stroke="#4060c0" stroke-dasharray="4 3">')
    for name, r in (("C", 8), ("C1", 2), ("C2", 1)):
        out.append(f'<circle id="{name}" cx="0" cy="0" r="{r * 30}"/>')
    out.append("</g>")
    out.append('<g id="segments" stroke="#000000" stroke-width="1.5">')
    for u, v, role in drawing.segments:
        (x1, y1), (x2, y2) = _svg_xy(drawing.coords[u]), _svg_xy(drawing.coords[v])
        out.append(f'<line class="{role}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    out.append("</g>")
    out.append('<g id="labels" font-family="sans-serif" font-size="11">')
    for node, text in drawing.labels.items():
        if node.startswith("o"):
            continue
        x, y = _svg_xy(drawing.coords[node])
        out.append(f'<text class="vertex" x="{x}" y="{y}">{escape(text)}</text>')
    # boundary points of the inner circle, clockwise from the left
    for q, lab in enumerate(boundary_order(k)):
        x, y = _svg_xy(drawing.coords[f"o{q}"])
        out.append(f'<text class="boundary" data-pos="{q}" x="{x}" y="{y}">{lab}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


# --- helpers ----------------------------------------------------------------------------


def _candidate(k: int, text: str):
    return parse_candidate(text, k)


def _load(path: str) -> FlagMap:
    try:
        return load_map(path)
    except (OSError, ValueError, KeyError, TypeError, MapError) as exc:
        raise CliError(EXIT_IO, f"cannot load {path}: {exc}") from exc


def _write(path: str, text: str) -> None:
    try:
        if path == "-":
            sys.stdout.write(text)
        else:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}") from exc


def _resolve_face(m: FlagMap, face: str) -> tuple[int, int | None]:
    """Face id plus the marked flag to use as e_1, if the face was named by a mark."""
    if face.lstrip("-").isdigit():
        fid = int(face)
        if not 0 <= fid < len(m.faces):
            raise CliError(EXIT_IO, f"no face {fid}; the map has {len(m.faces)}")
        return fid, None
    for name in (face, f"face_{face}"):
        if name in m.marks:
            flag = m.marks[name]
            if name == "face_F" and "e1" in m.marks and m.faces.of(m.marks["e1"]) == m.faces.of(flag):
                flag = m.marks["e1"]
            return m.faces.of(flag), flag
    raise CliError(EXIT_IO, f"unknown face {face!r}")


def _frame(m: FlagMap, face: str, base: int | None, reverse: bool = False):
    fid, flag = _resolve_face(m, face)
    if base is None and flag is not None:
        if reverse:
            flag = m.s0[flag]
        return face_frame_from_flag(m, flag)
    return face_frame(m, fid, base, reverse)


def _emit(args, report: dict, text: str) -> None:
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(text)


def _summary(m: FlagMap) -> dict:
    c = cells(m)
    return {
        "V": c.vertices,
        "E": c.edges,
        "F": c.faces,
        "euler": euler_characteristic(m),
        "orientable": is_orientable(m),
        "ss": bool(satisfies_ss(m)),
    }


# --- subcommands -------------------------------------------------------------------------


def cmd_validate(args) -> int:
    try:
        sigma = _candidate(args.k, args.sigma)
    except CandidateError as exc:
        _emit(args, {"valid": False, "error": type(exc).__name__, "detail": str(exc)},
              f"invalid: {type(exc).__name__}: {exc}")
        return EXIT_INVALID
    _emit(args, {"valid": True, "k": args.k, "sigma": str(sigma)}, f"valid {sigma}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.classes is None:
        items = [str(s) for s in enumerate_candidates(args.k)]
        _emit(args, {"k": args.k, "count": len(items), "candidates": items},
              "\n".join(items) + f"\n# {len(items)} candidates (expected {count_candidates(args.k)})")
        return EXIT_OK
    sym = [] if args.classes in ("", "none") else args.classes.split(",")
    if sym == ["all"]:
        sym = list(SYMMETRIES)
    bad = [s for s in sym if s not in SYMMETRIES]
    if bad:
        raise CliError(EXIT_IO, f"unknown symmetry {bad[0]!r}; choose from {', '.join(SYMMETRIES)}")
    classes = classify_candidates(args.k, tuple(sym))
    rows = [{"representative": str(rep), "size": len(members)} for rep, members in classes]
    text = "\n".join(f"{r['size']:4d}  {r['representative'] or '()'}" for r in rows)
    _emit(args, {"k": args.k, "symmetry": sym, "classes": rows},
          text + f"\n# {len(rows)} classes under {'+'.join(sym) or 'identity'}")
    return EXIT_OK


def cmd_realize(args) -> int:
    sigma = _candidate(args.k, args.sigma)
    try:
        spec = SurfaceSpec.parse(args.surface)
    except SurfaceSpecError as exc:
        raise CliError(EXIT_IO, str(exc)) from exc
    records: list[dict] = []
    try:
        result = realize_on_surface(sigma, spec, seed=args.seed, trace_sink=records.append)
    except VerificationMismatch as exc:
        raise CliError(EXIT_MISMATCH, str(exc)) from exc
    except MapError as exc:
        raise CliError(EXIT_BUILD, f"{type(exc).__name__}: {exc}") from exc
    _write(args.out, dumps_map(result.map))
    if args.trace:
        _write(args.trace, trace_lines(records))
    log.info("wrote %s after %d repair steps", args.out, len(records))
    info = {"sigma": str(sigma), "surface": str(spec), "monodromy": str(result.monodromy),
            "repair_steps": len(records), **_summary(result.map)}
    _emit(args, info, f"realized {sigma} on {spec}: V={info['V']} E={info['E']} F={info['F']} "
                      f"euler={info['euler']} ss={info['ss']} -> {args.out}")
    return EXIT_OK


def cmd_zigzags(args) -> int:
    m = _load(args.map)
    pairs = trace_zigzags(m, check=False)
    rows = [list(z.edges) for z, _ in pairs]
    text = "\n".join(f"{len(r):4d}  " + " ".join(map(str, r)) for r in rows)
    _emit(args, {"ss": bool(satisfies_ss(m)), "zigzags": rows},
          text + f"\n# {len(rows)} zigzags up to reversal")
    return EXIT_OK


def _monodromy_of(args, m: FlagMap):
    try:
        frame = _frame(m, args.face, args.base, args.reverse)
        return z_monodromy(frame)
    except SSViolated as exc:
        raise CliError(EXIT_MISMATCH, f"map is not SS: {exc}") from exc
    except MapError as exc:
        raise CliError(EXIT_IO, str(exc)) from exc


def cmd_monodromy(args) -> int:
    m = _load(args.map)
    got = _monodromy_of(args, m)
    _emit(args, {"k": got.k, "monodromy": str(got)}, str(got) or "()")
    return EXIT_OK


def cmd_verify(args) -> int:
    m = _load(args.map)
    got = _monodromy_of(args, m)
    want = parse_candidate(args.sigma, args.k or got.k)
    ok = got == want
    _emit(args, {"match": ok, "expected": str(want), "got": str(got)},
          "match" if ok else f"mismatch: expected {want}, got {got}")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_export(args) -> int:
    if args.format == "dot":
        if not args.map:
            raise CliError(EXIT_IO, "dot export needs --map")
        _write(args.out, export_dot(_load(args.map)))
        return EXIT_OK
    if args.k is None or args.sigma is None:
        raise CliError(EXIT_IO, "NoGeometry: a map file has no coordinates; pass --k and --sigma to draw the construction")
    sigma = _candidate(args.k, args.sigma)
    try:
        quad = assemble_quad_map(sigma, seed=args.seed)
    except MapError as exc:
        raise CliError(EXIT_BUILD, str(exc)) from exc
    _write(args.out, export_svg(quad.drawing))
    return EXIT_OK


# --- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for the placement perturbation")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="zmono", description="Zigzag monodromy of faces in embedded graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a candidate permutation")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--sigma", required=True)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("enumerate", parents=[common], help="list all candidates for k")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--classes", help="comma list of rotation,reflection,reversal (or all, none)")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("realize", parents=[common], help="build a map realizing sigma")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--sigma", required=True)
    s.add_argument("--surface", default="sphere", help="sphere, genus:g or cross:h")
    s.add_argument("--out", required=True)
    s.add_argument("--trace", help="write the repair steps as JSON lines")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("zigzags", parents=[common], help="list zigzags of a map")
    s.add_argument("--map", required=True)
    s.set_defaults(func=cmd_zigzags)

    for name, func in (("monodromy", cmd_monodromy), ("verify", cmd_verify)):
        s = sub.add_parser(name, parents=[common], help=f"{name} the z-monodromy of a face")
        s.add_argument("--map", required=True)
        s.add_argument("--face", required=True, help="face id or mark name (F for the construction face)")
        s.add_argument("--base", type=int, help="edge id carrying e_1")
        s.add_argument("--reverse", action="store_true", help="label the face the other way round")
        if name == "verify":
            s.add_argument("--sigma", required=True)
            s.add_argument("--k", type=int)
        s.set_defaults(func=func)

    s = sub.add_parser("export", parents=[common], help="write DOT or SVG")
    s.add_argument("--map")
    s.add_argument("--format", choices=("dot", "svg"), required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--k", type=int, help="for svg: redraw the construction of this sigma")
    s.add_argument("--sigma")
    s.set_defaults(func=cmd_export)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
        format=f"{args.command} seed={args.seed}: %(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        return args.func(args)
    except CandidateError as exc:
        msg = f"invalid candidate: {type(exc).__name__}: {exc}"
        code = EXIT_INVALID
    except CliError as exc:
        msg, code = str(exc), exc.code
    if args.json:
        print(json.dumps({"error": msg, "exit": code}, sort_keys=True))
    else:
        print(msg, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
