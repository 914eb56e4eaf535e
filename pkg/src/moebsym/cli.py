"""Command line interface.

Every command builds a plain ``inputs`` dict, runs it through a pure
``run_*`` function and prints the result together with a run manifest.  The
manifest carries the inputs and a SHA-256 digest of the result, so
``moebsym replay manifest.json`` can re-run and check it.

Exit status is 0 on success, 1 for domain or degeneracy errors and 2 for
parse or usage errors.  Errors are printed to stderr as JSON objects with an
``error`` code.
"""

from __future__ import annotations

import argparse
import cmath
import hashlib
import json
import math
import sys
from pathlib import Path

from . import __version__
from .errors import MoebsymError
from .figures import DEFAULTS, FIGURES, figure_data, render
from .lipschitz import (
    Metric,
    Method,
    conjecture_sweep,
    default_grid,
    estimate_lipschitz,
    lip_disk_automorphism,
    lip_disk_map_pair,
)
from .moebius import MoebiusMap, apply, disk_automorphism, disk_map_pair
from .plane import INF
from .symmetrize import (
    CircleMethod,
    PairMode,
    normalize_pair,
    symmetrize_circle_quadruple,
    symmetrize_quadruple,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class ParseError(Exception):
    code = "parse"


class UsageError(Exception):
    code = "usage"


# wire format -------------------------------------------------------------


def parse_point(value):
    """``[re, im]``, ``"inf"`` or a complex literal such as ``"0.3-0.1i"``."""
    if isinstance(value, str):
        text = value.strip()
        if text.lower() == "inf":
            return INF
        if text.startswith("["):
            try:
                value = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"malformed point {text!r}") from exc
        else:
            try:
                z = complex(text.replace("i", "j").replace(" ", ""))
            except ValueError as exc:
                raise ParseError(f"malformed point {text!r}") from exc
            if not cmath.isfinite(z):
                raise ParseError(f"non-finite point {text!r}")
            return z
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        z = complex(value[0], value[1])
        if not cmath.isfinite(z):
            raise ParseError(f"non-finite point {value!r}")
        return z
    raise ParseError(f"malformed point {value!r}")


def encode_point(z):
    if z is INF:
        return "inf"
    z = complex(z)
    return [_num(z.real), _num(z.imag)]


def _num(x: float) -> float:
    return float(f"{x:.12g}") + 0.0  # drops the sign of -0.0


def _dupe_check(pairs):
    keys = [k for k, _ in pairs]
    dupes = {k for k in keys if keys.count(k) > 1}
    if dupes:
        raise ParseError(f"duplicate names: {sorted(dupes)}")
    return dict(pairs)


def load_document(path) -> dict:
    """Read a point document: ``{"points": {...}, "angles": [...], "metadata": {...}}``."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text, object_pairs_hook=_dupe_check)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    points = doc.get("points", {})
    if not isinstance(points, dict):
        raise ParseError("'points' must be an object of name -> point")
    for name, value in points.items():
        parse_point(value)
    return doc


def _collect_points(args, names, defaults=None) -> dict:
    """Points from ``--input`` then ``--point name=value`` overrides, in wire format."""
    points = {}
    if defaults:
        points.update({k: encode_point(v) for k, v in defaults.items()})
    extra = {}
    if getattr(args, "input", None):
        extra.update(load_document(args.input).get("points", {}))
    for item in getattr(args, "point", None) or []:
        if "=" not in item:
            raise ParseError(f"--point expects name=value, got {item!r}")
        name, value = item.split("=", 1)
        extra[name.strip()] = value
    for name, value in extra.items():
        points[name] = encode_point(parse_point(value))
    missing = [n for n in names if n not in points]
    if missing:
        raise UsageError(f"missing points: {', '.join(missing)}")
    return {n: points[n] for n in names}


def _collect_angles(args, default=None) -> list:
    angles = None
    if getattr(args, "input", None):
        angles = load_document(args.input).get("angles")
    if getattr(args, "angles", None):
        try:
            angles = [float(t) for t in args.angles.split(",")]
        except ValueError as exc:
            raise ParseError(f"malformed angle list {args.angles!r}") from exc
    if angles is None:
        angles = default
    if angles is None or len(angles) != 4:
        raise UsageError("four angles (radians) are required")
    if not all(isinstance(t, (int, float)) and math.isfinite(t) for t in angles):
        raise ParseError("angles must be finite numbers")
    return [float(t) for t in angles]


def _pt(inputs, name):
    return parse_point(inputs["points"][name])


def _map_report(m: MoebiusMap) -> dict:
    return {"coeffs": [encode_point(v) for v in m.coeffs], "reversing": m.reversing}


# commands ----------------------------------------------------------------


def run_symmetrize(inputs: dict) -> dict:
    a, b, c, d = (_pt(inputs, n) for n in "abcd")
    if INF in (a, b, c, d):
        raise UsageError("symmetrize needs four finite points")
    res = symmetrize_quadruple(a, b, c, d)
    targets = (-1, res.y, -res.y, 1)
    images = res.images(a, b, c, d)
    out = {
        "branch": res.branch.value,
        "y": encode_point(res.y),
        "center": encode_point(res.center),
        "map": _map_report(res.map),
        "images": {n: encode_point(w) for n, w in zip("abcd", images)},
        "residuals": {n: _num(abs(w - t)) for n, w, t in zip("abcd", images, targets)},
    }
    for name in ("p", "q", "s", "k0", "k1"):
        value = getattr(res, name)
        out[name] = None if value is None else encode_point(value)
    if res.center is not INF:
        out["center_residual"] = _num(abs(apply(res.map, res.center)))
    return out


def run_normalize(inputs: dict) -> dict:
    a, b = _pt(inputs, "a"), _pt(inputs, "b")
    modes = list(PairMode) if inputs["mode"] == "all" else [PairMode(inputs["mode"])]
    out = {}
    for mode in modes:
        res = normalize_pair(a, b, mode)
        empirical = estimate_lipschitz(res.map, Metric.EUCLIDEAN, inputs["budget"], inputs["seed"])
        out[mode.value] = {
            "map": _map_report(res.map),
            "h_ab": encode_point(res.h_ab),
            "k": encode_point(res.k),
            "images": [encode_point(w) for w in res.images],
            "lip_analytic": _num(res.lip),
            "lip_empirical": _num(empirical.value),
        }
    return out


def run_circle_quad(inputs: dict) -> dict:
    quad = [cmath.exp(1j * t) for t in inputs["angles"]]
    methods = list(CircleMethod) if inputs["method"] == "all" else [CircleMethod(inputs["method"])]
    out = {}
    for method in methods:
        res = symmetrize_circle_quadruple(*quad, method)
        empirical = estimate_lipschitz(res.map, Metric.EUCLIDEAN, inputs["budget"], inputs["seed"])
        p = res.points
        out[method.value] = {
            "map": _map_report(res.map),
            "points": {n: encode_point(getattr(p, n)) for n in ("w1", "w2", "w3", "w4", "w5")},
            "images": [encode_point(w) for w in res.images],
            "axis": None if res.axis is None else _num(res.axis),
            "lip_analytic": _num(res.lip),
            "lip_empirical": _num(empirical.value),
        }
    return out


def _parse_map(spec):
    """``disk:A``, ``pair:A,B`` or ``coeffs:a,b,c,d[,reversing]``; also a dict with the same keys."""
    if isinstance(spec, dict):
        if "coeffs" in spec:
            coeffs = [parse_point(v) for v in spec["coeffs"]]
            if len(coeffs) != 4:
                raise ParseError("a map needs four coefficients")
            return MoebiusMap(*coeffs, reversing=bool(spec.get("reversing", False))), None
        kind = spec.get("kind")
        args = [parse_point(v) for v in spec.get("args", [])]
    else:
        if ":" not in str(spec):
            raise ParseError(f"malformed map spec {spec!r}")
        kind, _, rest = str(spec).partition(":")
        parts = [s for s in rest.split(",") if s.strip()]
        if kind == "coeffs":
            reversing = len(parts) == 5 and parts[4].strip().lower() in ("reversing", "1", "true")
            if len(parts) not in (4, 5):
                raise ParseError("coeffs needs four coefficients")
            return MoebiusMap(*(parse_point(p) for p in parts[:4]), reversing=reversing), None
        args = [parse_point(p) for p in parts]
    if kind == "disk" and len(args) == 1:
        return disk_automorphism(args[0]), lip_disk_automorphism(args[0])
    if kind == "pair" and len(args) == 2:
        return disk_map_pair(*args), lip_disk_map_pair(*args)
    raise ParseError(f"unknown map spec {spec!r}")


def run_lipschitz(inputs: dict) -> dict:
    m, analytic = _parse_map(inputs["map"])
    est = estimate_lipschitz(m, inputs["metric"], inputs["budget"], inputs["seed"], inputs["estimator"])
    witness = est.witness
    if isinstance(witness, tuple):
        witness = [encode_point(w) for w in witness]
    else:
        witness = encode_point(witness)
    return {
        "map": _map_report(m),
        "metric": est.metric.value,
        "method": est.method.value,
        "lip_empirical": _num(est.value),
        "lip_analytic": None if analytic is None else _num(analytic),
        "witness": witness,
        "samples": est.samples,
    }


def run_conjecture(inputs: dict) -> dict:
    grid = default_grid(inputs["step"], inputs["radius"])
    sweep = conjecture_sweep(grid, inputs["budget"], inputs["seed"])
    return {
        "rows": [
            {
                "a": encode_point(r.a),
                "analytic": _num(r.analytic),
                "empirical": _num(r.empirical),
                "gap": _num(r.gap),
            }
            for r in sweep.rows
        ],
        "max_gap": _num(sweep.max_gap),
        "samples": sweep.budget,
    }


def run_figure(inputs: dict) -> dict:
    name = inputs["name"]
    if name == "fig4":
        data = figure_data(name, angles=inputs["angles"])
    else:
        data = figure_data(name, a=_pt(inputs, "a"), b=_pt(inputs, "b"))
    out = Path(inputs["out"])
    render(data, out)
    return {
        "figure": name,
        "file": str(out),
        "file_sha256": hashlib.sha256(out.read_bytes()).hexdigest(),
        "points": {k: encode_point(z) for k, z in data.points.items()},
    }


RUNNERS = {
    "symmetrize": run_symmetrize,
    "normalize": run_normalize,
    "circle-quad": run_circle_quad,
    "lipschitz": run_lipschitz,
    "conjecture": run_conjecture,
    "figure": run_figure,
}


def digest(result: dict) -> str:
    blob = json.dumps(result, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def manifest(command: str, inputs: dict, result: dict) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "seed": inputs.get("seed"),
        "budget": inputs.get("budget"),
        "version": __version__,
        "digest": digest(result),
    }


# output ------------------------------------------------------------------


def _flatten(prefix, value, rows):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, json.dumps(value)))


def format_text(report: dict) -> str:
    """One tab-separated ``key<TAB>json-value`` line per leaf."""
    rows = []
    _flatten("", report, rows)
    return "".join(f"{k}\t{v}\n" for k, v in rows)


def emit(report: dict, fmt: str, out=None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n" if fmt == "structured" else format_text(report)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# argument parsing --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", help="JSON point document")
    common.add_argument("--point", "-p", action="append", metavar="NAME=VALUE",
                        help="point as [re,im], inf or a complex literal; repeatable")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out", help="report file (figure: SVG file)")
    common.add_argument("--manifest", help="also write the run manifest here")

    parser = _Parser(prog="moebsym", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("symmetrize", parents=[common], help="map a, b, c, d onto -1, y, -y, 1")

    p = sub.add_parser("normalize", parents=[common], help="normalize a point pair of the disk")
    p.add_argument("--mode", choices=[m.value for m in PairMode] + ["all"], default="all")

    p = sub.add_parser("circle-quad", parents=[common], help="symmetrize four unit-circle points")
    p.add_argument("--angles", help="comma-separated radians, e.g. 1,3,4,5")
    p.add_argument("--method", choices=[m.value for m in CircleMethod] + ["all"], default="all")

    p = sub.add_parser("lipschitz", parents=[common], help="estimate a Lipschitz constant")
    p.add_argument("--map", required=False, help="disk:A | pair:A,B | coeffs:a,b,c,d[,reversing]")
    p.add_argument("--metric", choices=[m.value for m in Metric], default="euclidean")
    p.add_argument("--estimator", choices=[m.value for m in Method], default=Method.DERIVATIVE.value)

    p = sub.add_parser("conjecture", parents=[common], help="chordal Lipschitz sweep for T_a")
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--radius", type=float, default=0.95)

    p = sub.add_parser("figure", parents=[common], help="draw one of the figures as SVG")
    p.add_argument("name", choices=FIGURES)
    p.add_argument("--angles", help="fig4 only: comma-separated radians")

    p = sub.add_parser("replay", help="re-run a manifest and compare digests")
    p.add_argument("manifest_file")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    return parser


def build_inputs(args) -> dict:
    cmd = args.command
    inputs = {"seed": args.seed, "budget": args.budget}
    if cmd == "symmetrize":
        inputs["points"] = _collect_points(args, "abcd")
    elif cmd == "normalize":
        inputs["points"] = _collect_points(args, "ab")
        inputs["mode"] = args.mode
    elif cmd == "circle-quad":
        inputs["angles"] = _collect_angles(args)
        inputs["method"] = args.method
    elif cmd == "lipschitz":
        spec = args.map
        if spec is None and args.input:
            spec = load_document(args.input).get("map")
        if spec is None:
            raise UsageError("--map is required")
        inputs.update(map=spec, metric=args.metric, estimator=args.estimator)
    elif cmd == "conjecture":
        inputs.update(step=args.step, radius=args.radius)
    elif cmd == "figure":
        inputs["name"] = args.name
        inputs["out"] = args.out or f"{args.name}.svg"
        if args.name == "fig4":
            inputs["angles"] = _collect_angles(args, list(DEFAULTS["fig4"]["angles"]))
        else:
            inputs["points"] = _collect_points(args, "ab", DEFAULTS[args.name])
    return inputs


def _fail(exc, status) -> int:
    sys.stderr.write(json.dumps({"error": exc.code, "message": str(exc)}) + "\n")
    return status


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "replay":
            return _replay(args)
        inputs = build_inputs(args)
        result = RUNNERS[args.command](inputs)
    except (ParseError, UsageError) as exc:
        return _fail(exc, EXIT_USAGE)
    except MoebsymError as exc:
        return _fail(exc, EXIT_DOMAIN)
    report = {"result": result, "manifest": manifest(args.command, inputs, result)}
    if args.manifest:
        Path(args.manifest).write_text(json.dumps(report["manifest"], indent=2, sort_keys=True) + "\n")
    # the figure's --out names the SVG; its report goes to stdout
    emit(report, args.format, None if args.command == "figure" else args.out)
    return EXIT_OK


def _replay(args) -> int:
    try:
        man = json.loads(Path(args.manifest_file).read_text())
        command, inputs = man["command"], man["inputs"]
        runner = RUNNERS[command]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        return _fail(ParseError(f"bad manifest: {exc}"), EXIT_USAGE)
    try:
        result = runner(inputs)
    except (ParseError, UsageError) as exc:
        return _fail(exc, EXIT_USAGE)
    except MoebsymError as exc:
        return _fail(exc, EXIT_DOMAIN)
    got = digest(result)
    report = {"command": command, "expected": man.get("digest"), "digest": got, "match": got == man.get("digest")}
    emit(report, args.format)
    return EXIT_OK if report["match"] else EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
