"""Command line interface: ``origami-tess <command> <origami> [options]``.

The origami is a file path, inline text (lines may be separated by ``;``)
or one of the built-in names ``T1``, ``L3``, ``W4``, ``O2``.  Text format::

    n=3
    h=(1 2)
    v=(1 3)
    marked=singular

``marked`` is ``singular``, ``all`` or a list of corners ``square:corner``
(corner one of bl, br, tr, tl; a bare square means its bottom-left
corner).  The JSON form has keys ``n``, ``h``, ``v`` (lists of cycles) and
``marked``.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .core import (
    CORNER_NAMES,
    INF,
    DomainError,
    Origami,
    ParseError,
    build_origami,
    canonical_form,
    parse_cycles,
    parse_slope,
    perm_to_cycles,
    qstr,
    word_to_str,
)

__all__ = ["parse_origami", "serialize", "main", "EXAMPLES"]

EXAMPLES = {
    "T1": "n=1\nh=()\nv=()\nmarked=all",
    "L3": "n=3\nh=(1 2)\nv=(1 3)\nmarked=singular",
    "W4": "n=4\nh=(1 2 3 4)\nv=(1 2)\nmarked=singular",
    "O2": "n=2\nh=(1 2)\nv=()\nmarked=all",
}


# ---------------------------------------------------------------------------
# parsing


def _parse_marking(text: str, line: int, col: int):
    t = text.strip()
    if t in ("singular", "all"):
        return t
    items = []
    pos = 0
    for tok in t.replace(",", " ").split():
        pos = text.index(tok, pos)
        sq, _, corner = tok.partition(":")
        if not sq.isdigit():
            raise ParseError(f"bad marked corner {tok!r}", line, col + pos)
        corner = corner or "bl"
        if corner not in CORNER_NAMES and corner not in ("0", "1", "2", "3"):
            raise ParseError(f"bad corner name {corner!r}", line, col + pos)
        items.append((int(sq), corner))
        pos += len(tok)
    if not items:
        raise ParseError("empty marking", line, col)
    return items


def _parse_text(text: str) -> Origami:
    fields = {}
    lines = text.replace(";", "\n").split("\n")
    for ln, raw in enumerate(lines, 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            raise ParseError("expected key=value", ln, len(body) - len(body.lstrip()) + 1)
        key, _, val = body.partition("=")
        k = key.strip()
        col = len(key) + 2
        if k not in ("n", "h", "v", "marked"):
            raise ParseError(f"unknown key {k!r}", ln, len(key) - len(key.lstrip()) + 1)
        if k in fields:
            raise ParseError(f"duplicate key {k!r}", ln, 1)
        if k == "n":
            s = val.strip()
            if not s.isdigit():
                raise ParseError(f"n must be a positive integer, got {s!r}", ln, col)
            fields["n"] = int(s)
        elif k in ("h", "v"):
            fields[k] = parse_cycles(val, ln, col)
        else:
            fields["marked"] = _parse_marking(val, ln, col)
    for k in ("h", "v"):
        fields.setdefault(k, [])
    if "n" not in fields:
        inferred = max([x for c in fields["h"] + fields["v"] for x in c], default=0)
        if inferred == 0:
            raise ParseError("missing n", 1, 1)
        fields["n"] = inferred
    return build_origami(fields["n"], fields["h"], fields["v"], fields.get("marked", "singular"))


def _parse_json(text: str) -> Origami:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "n" not in doc:
        raise ParseError("JSON origami needs an object with n, h, v", 1, 1)
    marked = doc.get("marked", "singular")
    if isinstance(marked, list):
        marked = [tuple(m) if isinstance(m, list) else (m, "bl") for m in marked]
    return build_origami(doc["n"], doc.get("h", []), doc.get("v", []), marked)


def parse_origami(source: str) -> Origami:
    """Parse origami text or JSON (see the module docstring)."""
    s = source.strip()
    if s.startswith("{"):
        return _parse_json(s)
    return _parse_text(source)


def load_origami(arg: str) -> Origami:
    if arg in EXAMPLES:
        return parse_origami(EXAMPLES[arg])
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return parse_origami(fh.read())
    return parse_origami(arg)


def _marking_items(O: Origami):
    items = []
    for vc in O.vertex_classes:
        if vc.marked:
            items.append(f"{vc.squares[0] + 1}:bl")
    return items


def serialize(O: Origami, fmt: str = "text") -> str:
    """Text (or JSON) that parses back to an isomorphic origami."""
    singular = build_origami(O.n, [x + 1 for x in O.h], [x + 1 for x in O.v], "singular")
    allm = all(O.mark)
    if O.mark == singular.mark:
        marked = "singular"
    elif allm:
        marked = "all"
    else:
        marked = _marking_items(O)
    h = perm_to_cycles(O.h)
    v = perm_to_cycles(O.v)
    if fmt == "json":
        return json.dumps({"n": O.n, "h": h, "v": v, "marked": marked}, sort_keys=True) + "\n"

    def cyc(cs):
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs) or "()"

    m = marked if isinstance(marked, str) else " ".join(marked)
    return f"n={O.n}\nh={cyc(h)}\nv={cyc(v)}\nmarked={m}\n"


# ---------------------------------------------------------------------------
# commands


def _emit(args, text: str, doc=None) -> None:
    if args.json and doc is not None:
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out and args.command not in ("tessellate",):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _q(x) -> str:
    return qstr(x)


def _matrix(g) -> list:
    c = g.canonical()
    return [[c.a, c.b], [c.c, c.d]]


def cmd_info(O: Origami, args):
    from .flatgeom import horizontal_cylinders

    classes = [
        {"id": vc.id, "angle": f"{vc.angle_pi}pi", "marked": vc.marked, "squares": [s + 1 for s in vc.squares]}
        for vc in O.vertex_classes
    ]
    cyl = horizontal_cylinders(O)
    canon, _ = canonical_form(O)
    doc = {
        "n": O.n,
        "genus": O.genus,
        "stratum": list(O.stratum),
        "vertex_classes": classes,
        "horizontal_cylinders": [{"circumference": c["circumference"], "height": c["height"]} for c in cyl],
        "canonical": serialize(canon).strip().split("\n"),
    }
    lines = [
        f"n={O.n} genus={O.genus} stratum=H({','.join(map(str, O.stratum))})",
        *(f"vertex {c['id']}: angle {c['angle']} {'marked' if c['marked'] else 'unmarked'}" for c in classes),
        f"horizontal cylinders: {len(cyl)} "
        + " ".join(f"[c={c['circumference']} h={c['height']}]" for c in cyl),
    ]
    _emit(args, "\n".join(lines) + "\n", doc)


def cmd_sc(O: Origami, args):
    from .flatgeom import saddle_connections_in_direction, saddle_connections_up_to

    if args.dir is not None:
        scs = saddle_connections_in_direction(O, parse_slope(args.dir))
    else:
        scs = saddle_connections_up_to(O, args.bound if args.bound is not None else 10)
    rows = [
        {"holonomy": list(s.holonomy), "slope": str(s.slope), "len2": s.len2, "start": s.start_vertex, "end": s.end_vertex}
        for s in scs
    ]
    text = "".join(f"{tuple(r['holonomy'])} slope={r['slope']} len2={r['len2']} {r['start']}->{r['end']}\n" for r in rows)
    _emit(args, text + f"total {len(rows)}\n", {"saddle_connections": rows})


def cmd_cylinders(O: Origami, args):
    from .flatgeom import cylinder_decomposition

    k = parse_slope(args.dir) if args.dir is not None else INF
    d = cylinder_decomposition(O, k)
    rows = [
        {"circumference": _q(c.circumference), "height": _q(c.height), "area": _q(c.area), "holonomy": list(c.holonomy)}
        for c in d.cylinders
    ]
    text = f"direction {k}: {len(rows)} cylinders, total area {_q(d.total_area)}\n"
    text += "".join(f"  c={r['circumference']} h={r['height']} area={r['area']} hol={tuple(r['holonomy'])}\n" for r in rows)
    _emit(args, text, {"direction": str(k), "cylinders": rows})


def cmd_triangles(O: Origami, args):
    from .triangles import triangles_up_to
    from .veech import reference_domain

    if args.dir is not None:
        cd = reference_domain(O, parse_slope(args.dir))
        rows = [
            {"ideal": str(w.ideal), "holonomies": [list(h) for h in w.embedded.holonomies], "det": w.embedded.det}
            for w in cd.witnesses
        ]
        head = f"reference domain of {cd.rep}: period {_q(cd.period)}, {len(rows)} triangles\n"
    else:
        L2 = args.bound if args.bound is not None else 8
        ts = triangles_up_to(O, L2)
        rows = [{"ideal": str(t.ideal), "holonomies": [list(h) for h in t.holonomies], "det": t.det} for t in ts]
        head = f"{len(rows)} embedded triangles with sides of squared length <= {L2}\n"
    text = head + "".join(f"  {r['ideal']} det={r['det']} {' '.join(str(tuple(h)) for h in r['holonomies'])}\n" for r in rows)
    _emit(args, text, {"triangles": rows})


def cmd_tessellate(O: Origami, args):
    from .tess import DEFAULT_REGION, as_region, faces_in_region, patch_to_json, render

    region = as_region(args.region) if args.region else DEFAULT_REGION
    patch = faces_in_region(O, region, threads=args.threads)
    svg = render(patch, args.model)
    out = args.out or "tessellation.svg"
    with open(out, "wb") as fh:
        fh.write(svg)
    base = out[:-4] if out.endswith(".svg") else out
    with open(base + ".json", "w", encoding="utf-8") as fh:
        fh.write(patch_to_json(patch))
    sys.stdout.write(
        f"region {region}: {len(patch.geodesics)} geodesics, {len(patch.faces)} faces, "
        f"{len(patch.complete_faces)} complete; wrote {out} and {base}.json\n"
    )


def cmd_locate(O: Origami, args):
    from .tess import locate

    if not args.point:
        raise UsageError("locate needs --point x,y")
    parts = args.point.split(",")
    if len(parts) != 2:
        raise UsageError("--point takes x,y")
    loc = locate(O, tuple(_rational(p) for p in parts))
    doc = {
        "interior": loc.interior,
        "triangles": [str(t) for t in loc.triangles],
        "edge": None if loc.edge is None else [str(loc.edge.k1), str(loc.edge.k2)],
    }
    if loc.interior:
        text = f"interior of {loc.triangles[0]}\n"
    else:
        text = f"on {loc.edge}: {loc.triangles[0]} and {loc.triangles[1]}\n"
    _emit(args, text, doc)


def cmd_fundamental_domain(O: Origami, args):
    from .veech import algorithm_A

    dom = algorithm_A(O, args.cap_iterations)
    cusps = [
        {"rep": str(cd.rep), "period": _q(cd.period), "generation": g, "chart": _matrix(cd.A)}
        for cd, g in zip(dom.cusp_classes, dom.generations)
    ]
    tris = [
        {"rep": str(c.rep), "stabilizer": c.stabilizer_order, "cusps": list(c.vertex_cusps)} for c in dom.classes
    ]
    text = f"d1={dom.d1} cusps={len(cusps)} triangle classes={len(tris)} domain triangles={len(dom.domain_triangles)}\n"
    text += "".join(f"  cusp {c['rep']} period {c['period']} generation {c['generation']}\n" for c in cusps)
    text += "".join(f"  triangle {t['rep']} stabilizer {t['stabilizer']}\n" for t in tris)
    _emit(args, text, {"d1": dom.d1, "cusps": cusps, "triangles": tris, "domain": [str(t) for t in dom.domain_triangles]})


def cmd_generators(O: Origami, args):
    from .veech import algorithm_A, algorithm_B, coset_enumeration

    dom = algorithm_A(O, args.cap_iterations)
    B = algorithm_B(O, dom.d1)
    rows = [{"matrix": _matrix(g.matrix), "word": word_to_str(g.word), "provenance": g.provenance} for g in B.generators]
    idx = coset_enumeration(B.words, args.cap_coset)
    text = f"{len(rows)} generators, index of generated subgroup {idx}\n"
    text += "".join(f"  {r['matrix']} {r['word']} ({r['provenance']})\n" for r in rows)
    _emit(args, text, {"generators": rows, "index": str(idx)})


def cmd_quotient_graph(O: Origami, args):
    from .graph import quotient_graph
    from .veech import algorithm_A

    q = quotient_graph(O, algorithm_A(O, args.cap_iterations))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(q.to_json(), indent=2, sort_keys=True) + "\n" if args.json else q.to_dot())
        sys.stdout.write(q.summary() + "\n")
        return
    if args.json:
        _emit(args, "", q.to_json())
    else:
        sys.stdout.write(q.summary() + "\n")


def cmd_oracle(O: Origami, args):
    from .veech import oracle_orbit

    r = oracle_orbit(O, args.cap_orbit)
    doc = {"index": r.index, "cusp_count": r.cusp_count, "cusp_widths": list(r.cusp_widths)}
    _emit(args, f"index={r.index} cusps={r.cusp_count} widths={list(r.cusp_widths)}\n", doc)


def cmd_verify(O: Origami, args):
    from .tess import DEFAULT_REGION, as_region
    from .verify import Caps, format_table, run_checks

    caps = Caps(orbit=args.cap_orbit, coset=args.cap_coset, radius=args.cap_radius, iterations=args.cap_iterations)
    region = as_region(args.region) if args.region else DEFAULT_REGION
    res = run_checks(O, caps, region)
    doc = [{"check": r.name, "status": r.status, "detail": r.detail} for r in res]
    _emit(args, format_table(res), doc)
    return 0 if all(r.ok is not False for r in res) else 1


COMMANDS = {
    "info": cmd_info,
    "sc": cmd_sc,
    "cylinders": cmd_cylinders,
    "triangles": cmd_triangles,
    "tessellate": cmd_tessellate,
    "locate": cmd_locate,
    "fundamental-domain": cmd_fundamental_domain,
    "generators": cmd_generators,
    "quotient-graph": cmd_quotient_graph,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
}


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="origami-tess", description="Square-tiled surfaces and their tessellations.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("origami", help="file, inline text (';' separates lines) or T1/L3/W4/O2")
    p.add_argument("--out", help="output file")
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("--model", choices=("half-plane", "disk"), default="half-plane")
    p.add_argument("--region", help="x1,x2,y1,y2")
    p.add_argument("--bound", type=_rational_arg, help="squared length bound")
    p.add_argument("--dir", help="direction p/q or inf")
    p.add_argument("--point", help="x,y for locate")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cap-orbit", type=int, default=10**6)
    p.add_argument("--cap-coset", type=int, default=10**6)
    p.add_argument("--cap-radius", type=int, default=2)
    p.add_argument("--cap-iterations", type=int, default=100)
    return p


def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    from .tess import DegenerateRegion
    from .veech import CapExceeded, OrbitCapExceeded

    try:
        O = load_origami(args.origami)
        rc = COMMANDS[args.command](O, args)
        return rc or 0
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"origami-tess: error: {exc}\n")
        return 2
    except (DomainError, DegenerateRegion, CapExceeded, OrbitCapExceeded, ValueError) as exc:
        if args.json:
            err = {"error": type(exc).__name__, "message": str(exc)}
            if isinstance(exc, ParseError):
                err.update(line=exc.line, column=exc.column, message=exc.message)
            sys.stdout.write(json.dumps(err, sort_keys=True) + "\n")
        else:
            sys.stderr.write(f"origami-tess: {type(exc).__name__}: {exc}\n")
        return 1


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
