"""Command-line interface.

Subcommands: classify, roots, exp, tessellate, embed, tree, halo, plot,
verify.  All output is deterministic for fixed flags and seed; errors are
emitted as one JSON object on stderr with exit code 2 for bad input and 1
for internal failures.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from .embedding import BarycentricPoint, BuildingEmbedding, ChamberVertex
from .errors import InputError, KmaError
from .gcm import GeneralizedCartanMatrix, Kind, classify, gram_matrices, signature, symmetrize
from .lorentz import CartanVector, LorentzGeometry
from .render import plot_roots, plot_tessellation
from .roots import RootKind, RootSystem
from .su2flow import SliceVector, Su2Flow
from .twintree import (
    End,
    Halo,
    TreeChamber,
    U2Element,
    act_on_chamber,
    deformed_apartment,
    gallery_distance,
)
from .verify import run_verify
from .weyl import WeylGroup


def _frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _num(x):
    return _frac_str(x) if isinstance(x, (int, Fraction)) else float(x)


def _seed_from(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("KMA_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"KMA_SEED={env!r} is not an integer") from exc
    return 0


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out: str | None):
    _emit(json.dumps(obj, indent=2) + "\n", out)


def _toolkit(matrix_text: str):
    gcm = GeneralizedCartanMatrix.parse(matrix_text)
    rs = RootSystem(gcm)
    weyl = WeylGroup(rs)
    geom = LorentzGeometry(weyl)
    return gcm, rs, weyl, geom


def _parse_word(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InputError(f"cannot parse word {text!r}") from exc


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"cannot parse number list {text!r}") from exc


def _csv_row(fields) -> str:
    out = []
    for f in fields:
        s = str(f)
        if any(ch in s for ch in ',"\r\n'):
            s = '"' + s.replace('"', '""') + '"'
        out.append(s)
    return ",".join(out)


# ---------------- subcommands ----------------


def cmd_classify(args) -> int:
    gcm = GeneralizedCartanMatrix.parse(args.matrix)
    cls = classify(gcm)
    payload = {
        "kind": cls.kind.value,
        "strict": cls.strict,
        "det_sign": cls.det_sign,
        "d": None,
        "root_norms": None,
        "coroot_gram": None,
        "signature": None,
        "seed": _seed_from(args),
    }
    if cls.kind is Kind.DECOMPOSABLE:
        payload["blocks"] = [list(b) for b in cls.blocks]
    elif cls.kind is not Kind.NOT_SYMMETRIZABLE:
        sym = symmetrize(gcm)
        grams = gram_matrices(gcm, sym)
        payload["d"] = [_frac_str(x) for x in sym.d]
        payload["root_norms"] = [_frac_str(x) for x in sym.root_norms]
        payload["coroot_gram"] = [[_frac_str(x) for x in row] for row in grams.coroot_gram]
        payload["signature"] = list(signature(grams.coroot_gram))
    _emit_json(payload, args.out)
    return 0


def cmd_roots(args) -> int:
    _, rs, _, _ = _toolkit(args.matrix)
    # The simple roots (height 1) always appear, whatever the cap.
    roots = rs.real_roots_up_to_height(max(args.height, 1))
    rows = []
    for root in roots:
        rc = rs.classify_root(root)
        row = {
            "coeffs": list(root.coeffs),
            "height": root.height,
            "norm": _frac_str(rc.norm),
            "class": rc.kind.value,
        }
        if rs.rank == 2:
            label = rs.phi_label(root)
            row["phi_branch"] = label.branch
            row["phi_index"] = label.index
        rows.append(row)
    if args.format == "csv":
        header = [f"k{i}" for i in range(1, rs.rank + 1)] + ["height", "norm", "class"]
        if rs.rank == 2:
            header += ["phi_branch", "phi_index"]
        lines = [_csv_row(header)]
        for row in rows:
            fields = row["coeffs"] + [row["height"], row["norm"], row["class"]]
            if rs.rank == 2:
                fields += [row["phi_branch"], row["phi_index"]]
            lines.append(_csv_row(fields))
        _emit("\r\n".join(lines) + "\r\n", args.out)
    else:
        _emit_json({"seed": _seed_from(args), "count": len(rows), "roots": rows}, args.out)
    return 0


def cmd_exp(args) -> int:
    _, rs, _, _ = _toolkit(args.matrix)
    flow = Su2Flow(rs)
    z = _parse_floats(args.z) if args.z else tuple(0.0 for _ in range(rs.rank))
    if len(z) != rs.rank:
        raise InputError(f"--z needs {rs.rank} coefficients")
    v = SliceVector(tuple(z), args.xpart, args.ypart, args.index)
    closed = flow.exp_rotation(args.index, args.s, args.t, v)
    series = flow.series_oracle(args.index, args.s, args.t, v, args.terms)

    def pack(u: SliceVector):
        return {"z": list(u.z), "x": u.x_part, "y": u.y_part}

    _emit_json(
        {
            "seed": _seed_from(args),
            "slice_index": args.index,
            "s": args.s,
            "t": args.t,
            "closed_form": pack(closed),
            "series": pack(series),
            "max_abs_deviation": closed.max_abs_diff(series),
        },
        args.out,
    )
    return 0


def _region_payload(emb: BuildingEmbedding, reg) -> dict:
    entry = {
        "word": ",".join(str(i) for i in reg.word),
        "vertices": [
            {"coords": [float(c) for c in v.coords], "ideal": v.ideal} for v in reg.vertices
        ],
    }
    if emb.rank == 2:
        entry["w_label"] = emb.weyl.rank2_label(reg.word)
    return entry


def cmd_tessellate(args) -> int:
    _, rs, weyl, geom = _toolkit(args.matrix)
    emb = BuildingEmbedding(geom)
    sign = 1 if args.sign == "+" else -1
    if args.format == "svg":
        _emit(plot_tessellation(emb, sign, args.r, args.depth, _seed_from(args)), args.out)
        return 0
    regions = emb.tessellate(sign, args.r, args.depth)
    if args.format == "csv":
        header = ["word", "vertex", "ideal"] + [f"c{i}" for i in range(1, rs.rank + 1)]
        lines = [_csv_row(header)]
        for reg in regions:
            for k, v in enumerate(reg.vertices):
                lines.append(
                    _csv_row(
                        [",".join(map(str, reg.word)), k + 1, int(v.ideal)]
                        + [repr(float(c)) for c in v.coords]
                    )
                )
        _emit("\r\n".join(lines) + "\r\n", args.out)
        return 0
    _emit_json(
        {
            "seed": _seed_from(args),
            "matrix": args.matrix,
            "r": args.r,
            "sign": args.sign,
            "count": len(regions),
            "regions": [_region_payload(emb, reg) for reg in regions],
        },
        args.out,
    )
    return 0


def cmd_embed(args) -> int:
    _, rs, weyl, geom = _toolkit(args.matrix)
    emb = BuildingEmbedding(geom)
    sign = 1 if args.sign == "+" else -1
    face = tuple(int(x) for x in args.face.split(",") if x.strip()) if args.face else ()
    sr = emb.simplex_ref(sign, _parse_word(args.word), face)
    if args.bary:
        lam = _parse_floats(args.bary)
        point = emb.embed_point(BarycentricPoint(sr, lam), args.r)
        if isinstance(point, ChamberVertex):
            payload = {"coords": [float(c) for c in point.coords], "ideal": True}
        else:
            payload = {"coords": [float(c) for c in point.coords], "ideal": False}
        payload.update({"seed": _seed_from(args), "word": args.word or "", "r": args.r})
        _emit_json(payload, args.out)
        return 0
    if args.point:
        coords = _parse_floats(args.point)
        if len(coords) != rs.rank:
            raise InputError(f"--point needs {rs.rank} coordinates")
        bp = emb.evaluate_barycentric(sr, CartanVector(coords))
        _emit_json(
            {
                "seed": _seed_from(args),
                "word": args.word or "",
                "face": list(face),
                "lambda": list(bp.lam),
            },
            args.out,
        )
        return 0
    raise InputError("embed needs either --bary or --point")


def _chamber_from_arg(text: str) -> TreeChamber:
    try:
        return TreeChamber.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot parse chamber JSON {text!r}") from exc


def _u2_from_arg(text: str) -> U2Element:
    try:
        data = json.loads(text)
        return U2Element.from_dict(
            {h["k"]: (h.get("re", 0), h.get("im", 0)) for h in data}
        )
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot parse hinge list JSON {text!r}") from exc


def cmd_tree(args) -> int:
    seed = _seed_from(args)
    if args.query == "distance":
        if not (args.chamber and args.chamber2):
            raise InputError("tree distance needs --chamber and --chamber2")
        c1, c2 = _chamber_from_arg(args.chamber), _chamber_from_arg(args.chamber2)
        _emit_json({"seed": seed, "distance": gallery_distance(c1, c2)}, args.out)
        return 0
    if args.query == "apartment":
        if args.u is None:
            raise InputError("tree apartment needs --u")
        u = _u2_from_arg(args.u)
        ap = deformed_apartment(u, 1 if args.sign == "+" else -1)
        payload = {
            "seed": seed,
            "fundamental": ap.fundamental,
            "fixed_ray": None
            if ap.fixed_ray is None
            else {"side": ap.fixed_ray.side, "n": ap.fixed_ray.n},
            "hinges": [
                {"k": k, "re": float(re), "im": float(im)} for k, (re, im) in ap.hinges
            ],
            "ends": [
                {"kind": "fundamental", "branch": e.branch}
                if e.is_fundamental
                else {"kind": "deformed", "hinges": e.deformation.to_json()}
                for e in ap.ends
            ],
        }
        _emit_json(payload, args.out)
        return 0
    if args.query == "act":
        if args.u is None or args.chamber is None:
            raise InputError("tree act needs --u and --chamber")
        u = _u2_from_arg(args.u)
        c = _chamber_from_arg(args.chamber)
        _emit_json({"seed": seed, "chamber": act_on_chamber(u, c).to_json()}, args.out)
        return 0
    raise InputError(f"unknown tree query {args.query!r}")


def cmd_halo(args) -> int:
    _, rs, weyl, geom = _toolkit(args.matrix)
    flow = Su2Flow(rs)
    halo = Halo(geom, flow)
    text = args.end
    if len(text) != 2 or text[0] not in "12" or text[1] not in "+-":
        raise InputError("--end must look like 1+, 1-, 2+ or 2-")
    end = End.fundamental(int(text[0]), 1 if text[1] == "+" else -1)
    ray = halo.embed_end(end, word=_parse_word(args.word))
    vec = CartanVector(ray.direction.coords)
    payload = {
        "seed": _seed_from(args),
        "end": text,
        "word": args.word or "",
        "ray": {
            "direction": [float(c) for c in ray.direction.coords],
            "forward": ray.forward,
        },
        "nullity_residual": abs(float(geom.norm(vec))),
    }
    if args.rotate:
        parts = args.rotate.split(",")
        if len(parts) != 3:
            raise InputError("--rotate takes i,s,t")
        i, s, t = int(parts[0]), float(parts[1]), float(parts[2])
        rotated = halo.rotate_ray(i, s, t, ray)
        payload["rotated"] = {
            "z": list(rotated.z),
            "x": rotated.x_part,
            "y": rotated.y_part,
            "nullity_residual": abs(flow.slice_form(rotated, rotated)),
        }
    _emit_json(payload, args.out)
    return 0


def cmd_plot(args) -> int:
    _, rs, weyl, geom = _toolkit(args.matrix)
    seed = _seed_from(args)
    if args.target == "roots":
        _emit(plot_roots(rs, args.height, seed), args.out)
        return 0
    if args.target == "tessellation":
        emb = BuildingEmbedding(geom)
        sign = 1 if args.sign == "+" else -1
        _emit(plot_tessellation(emb, sign, args.r, args.depth, seed), args.out)
        return 0
    raise InputError(f"unknown plot target {args.target!r}")


def cmd_verify(args) -> int:
    report, ok = run_verify(_seed_from(args), mutate=args.mutate)
    _emit(report, args.out)
    return 0 if ok else 1


# ---------------- parser ----------------


def _add_common(p, matrix=True):
    if matrix:
        p.add_argument("-m", "--matrix", required=True, help="rows joined by ';', entries by ','")
    p.add_argument("--seed", type=int, default=None, help="seed (falls back to KMA_SEED, then 0)")
    p.add_argument("-o", "--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kma",
        description="Root systems, Weyl tessellations and lightcone geometry "
        "of hyperbolic generalized Cartan matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="type classification and Gram data")
    _add_common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("roots", help="enumerate real roots up to a height cap")
    _add_common(p)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(fn=cmd_roots)

    p = sub.add_parser("exp", help="closed-form slice rotation vs series oracle")
    _add_common(p)
    p.add_argument("-i", "--index", type=int, required=True)
    p.add_argument("-s", type=float, required=True)
    p.add_argument("-t", type=float, required=True)
    p.add_argument("--z", default=None, help="Cartan coefficients c1,...,cl")
    p.add_argument("--xpart", type=float, default=0.0)
    p.add_argument("--ypart", type=float, default=0.0)
    p.add_argument("--terms", type=int, default=60)
    p.set_defaults(fn=cmd_exp)

    p = sub.add_parser("tessellate", help="chamber regions on a hyperboloid sheet")
    _add_common(p)
    p.add_argument("--r", type=float, required=True, help="sheet norm, must be negative")
    p.add_argument("--depth", type=int, required=True, help="maximum reduced word length")
    p.add_argument("--sign", choices=("+", "-"), default="+")
    p.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    p.set_defaults(fn=cmd_tessellate)

    p = sub.add_parser("embed", help="barycentric embedding and its inverse")
    _add_common(p)
    p.add_argument("--r", type=float, default=-1.0)
    p.add_argument("--sign", choices=("+", "-"), default="+")
    p.add_argument("--word", default="", help="chamber word, e.g. 2,1")
    p.add_argument("--face", default="", help="face indices, e.g. 1 or 1,3")
    p.add_argument("--bary", default=None, help="barycentric coordinates to embed")
    p.add_argument("--point", default=None, help="sheet point to evaluate")
    p.set_defaults(fn=cmd_embed)

    p = sub.add_parser("tree", help="rank-2 tree model queries")
    p.add_argument("query", choices=("distance", "apartment", "act"))
    p.add_argument("--chamber", default=None, help='chamber JSON {"sign",n,"hinges"}')
    p.add_argument("--chamber2", default=None)
    p.add_argument("--u", default=None, help='hinge list JSON [{"k","re","im"}]')
    p.add_argument("--sign", choices=("+", "-"), default="+")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(fn=cmd_tree)

    p = sub.add_parser("halo", help="asymptote-ray images of tree ends")
    _add_common(p)
    p.add_argument("--end", required=True, help="1+, 1-, 2+ or 2-")
    p.add_argument("--word", default="", help="Weyl word to apply")
    p.add_argument("--rotate", default=None, help="slice rotation i,s,t")
    p.set_defaults(fn=cmd_halo)

    p = sub.add_parser("plot", help="emit an SVG figure")
    p.add_argument("target", choices=("roots", "tessellation"))
    _add_common(p)
    p.add_argument("--height", type=int, default=8)
    p.add_argument("--r", type=float, default=-1.0)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--sign", choices=("+", "-"), default="+")
    p.set_defaults(fn=cmd_plot)

    p = sub.add_parser("verify", help="run every invariant suite")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--mutate", default=None, help="negative-control mutation hook")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        json.dump({"error": type(exc).__name__, "detail": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2
    except KmaError as exc:
        json.dump({"error": type(exc).__name__, "detail": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        json.dump({"error": "internal", "detail": f"{type(exc).__name__}: {exc}"}, sys.stderr)
        sys.stderr.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
