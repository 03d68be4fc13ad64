"""Command-line surface: energies, density tables, figures, and reports.

Subcommands
    energy      perimeter / weighted perimeter / volume deficit of a file
    density     normalized interface densities over a list of sizes (CSV)
    wulff       level sets and Wulff shapes (SVG + JSON)
    lemma       exhaustive single-phase check, with witness on failure
    decompose   scale decomposition into phase regions, convergence table
    limit       limiting partition energy with per-segment breakdown
    cluster     minimal-perimeter molecule clusters

Every output embeds a run manifest (command, parameters, tool version,
input digests, output paths); identical manifests yield byte-identical
outputs.  Exit codes: 0 success (including negative verdicts), 2 invalid
input, 3 cap exceeded / inconclusive.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .coverings import lemma_check
from .decomposition import (
    InconsistentScale,
    ScaledConfiguration,
    bad_area_bound,
    convergence_report,
    decompose,
)
from .densities import DensityModel, consistency_check
from .gauges import phi_closed_form, min_envelope, wulff_shape
from .interfaces import (
    ClusterCapExceeded,
    Direction,
    InfeasibleBoundary,
    InterfaceProblem,
    cluster_min_perimeter,
    default_budget,
    density_record,
    solve_interface,
)
from .limits import (
    InvalidPartition,
    NonRationalEdge,
    PolygonalPartition,
    anchored_admissible,
    limit_energy,
)
from .molecules import (
    BUILTIN_SHAPES,
    OverlapError,
    Window,
    configuration_from_json,
    perimeter,
    shapes_from_json,
    volume_deficit,
    weighted_perimeter,
)
from .rectregions import rects_to_jsonable
from .svgout import configuration_svg, level_set_and_wulff_svg


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


# -------------------------------------------------------------------
# Manifest and output helpers
# -------------------------------------------------------------------

def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def make_manifest(command: str, params: dict, inputs: list[str], outputs: list[str]) -> dict:
    return {
        "command": command,
        "version": __version__,
        "parameters": {k: params[k] for k in sorted(params)},
        "inputs": {p: _digest(p) for p in sorted(inputs)},
        "outputs": sorted(outputs),
    }


def dump_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_text(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


def _parse_window(spec: str | None) -> Window:
    if spec is None:
        return Window.plane()
    parts = spec.split(",")
    if len(parts) == 1:
        return Window.square(Fraction(parts[0]))
    if len(parts) == 3:
        return Window.square(Fraction(parts[0]), (Fraction(parts[1]), Fraction(parts[2])))
    raise CliError("window must be SIDE or SIDE,CX,CY")


def _parse_weights(spec: str | None) -> tuple[Fraction, Fraction]:
    if spec is None:
        return (Fraction(1), Fraction(1))
    parts = spec.split(",")
    if len(parts) != 2:
        raise CliError("weights must be C_R,C_S")
    return (Fraction(parts[0]), Fraction(parts[1]))


def _load_shapes(path: str | None):
    if path is None:
        return dict(BUILTIN_SHAPES)
    try:
        return shapes_from_json(Path(path).read_text())
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(f"cannot read shape file {path}: {exc}")


# -------------------------------------------------------------------
# Subcommands
# -------------------------------------------------------------------

def cmd_energy(args) -> int:
    try:
        config = configuration_from_json(
            Path(args.config).read_text(), _load_shapes(args.shapes)
        )
    except OverlapError as exc:
        raise CliError(f"invalid configuration: {exc}")
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(f"cannot read configuration {args.config}: {exc}")
    window = _parse_window(args.window)
    c_R, c_S = _parse_weights(args.weights)
    payload = {
        "perimeter": str(perimeter(config, window)),
        "weighted_perimeter": str(weighted_perimeter(config, c_R, c_S, window)),
        "volume_deficit": None if window.is_plane else str(volume_deficit(config, window)),
        "molecules": len(config),
    }
    inputs = [args.config] + ([args.shapes] if args.shapes else [])
    payload["manifest"] = make_manifest(
        "energy",
        {"window": args.window, "weights": args.weights, "config": args.config},
        inputs,
        [args.out] if args.out else [],
    )
    text = dump_json(payload)
    sys.stdout.write(text)
    write_text(args.out, text)
    return 0


def cmd_density(args) -> int:
    if args.i == args.j:
        raise CliError("phases i and j must differ")
    nu = Direction(*_coprime(args.p, args.q))
    weights = _parse_weights(args.weights)
    t_list = [int(t) for t in args.T.split(",")]
    budget = args.budget if args.budget is not None else default_budget()
    rows = []
    records = []
    truncated = False
    for T in t_list:
        prob = InterfaceProblem(args.i, args.j, nu, T, weights, args.kind)
        try:
            result = solve_interface(prob, budget)
        except InfeasibleBoundary as exc:
            raise CliError(str(exc))
        rec = density_record(prob, result)
        records.append(rec)
        rows.append(rec.csv_row())
        truncated = truncated or result.certificate != "exact"
        if args.witness_dir:
            out = Path(args.witness_dir) / f"witness_{args.i}_{args.j}_{nu.p}_{nu.q}_T{T}.svg"
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(configuration_svg(result.config, comment=f"T={T}"))
    manifest = make_manifest(
        "density",
        {
            "i": args.i, "j": args.j, "p": nu.p, "q": nu.q, "T": args.T,
            "kind": args.kind, "weights": args.weights, "budget": budget,
        },
        [],
        [args.csv] if args.csv else [],
    )
    from .interfaces import DensityRecord

    header = (
        "# manifest: " + json.dumps(manifest, sort_keys=True) + "\n"
        + DensityRecord.CSV_COLUMNS + "\n"
    )
    body = "\n".join(rows) + "\n"
    sys.stdout.write(header + body)
    if args.csv:
        path = Path(args.csv)
        if path.exists() and path.stat().st_size > 0:
            with path.open("a") as fh:  # append to an existing table
                fh.write(body)
        else:
            path.write_text(header + body)
    if truncated:
        sys.stderr.write("note: some certificates are upper_bound (budget)\n")
    report = consistency_check(DensityModel.with_patterns(), records)
    if not report.ok:
        sys.stderr.write("consistency violations:\n  " + "\n  ".join(report.violations) + "\n")
    return 0


def _coprime(p: int, q: int) -> tuple[int, int]:
    import math

    g = math.gcd(abs(p), abs(q))
    if g == 0:
        raise CliError("direction cannot be (0,0)")
    return p // g, q // g


def cmd_wulff(args) -> int:
    labels = list(range(1, 9)) if args.phase == "all" else [int(args.phase)]
    outputs = []
    payload: dict = {"phases": {}}
    for i in labels:
        gauge = phi_closed_form(i)
        wulff = wulff_shape(gauge)
        payload["phases"][str(i)] = {
            "level_set": [[str(v[0]), str(v[1])] for v in gauge.vertices],
            "wulff": [[str(v[0]), str(v[1])] for v in wulff],
        }
        if args.svg:
            base = Path(args.svg)
            path = base if len(labels) == 1 else base.with_name(
                base.stem + f"_{i}" + base.suffix
            )
            path.write_text(
                level_set_and_wulff_svg(gauge.vertices, wulff, comment=f"phase {i}")
            )
            outputs.append(str(path))
    if args.phase == "all":
        _, envelope = min_envelope([phi_closed_form(1), phi_closed_form(5)])
        payload["spin_envelope"] = {
            "level_set": [[str(v[0]), str(v[1])] for v in envelope.vertices],
            "wulff": [[str(v[0]), str(v[1])] for v in wulff_shape(envelope)],
        }
        if args.svg:
            base = Path(args.svg)
            path = base.with_name(base.stem + "_envelope" + base.suffix)
            path.write_text(
                level_set_and_wulff_svg(
                    envelope.vertices, wulff_shape(envelope), comment="spin envelope"
                )
            )
            outputs.append(str(path))
    payload["manifest"] = make_manifest(
        "wulff", {"phase": args.phase}, [], outputs + ([args.json] if args.json else [])
    )
    text = dump_json(payload)
    sys.stdout.write(text)
    write_text(args.json, text)
    return 0


def cmd_lemma(args) -> int:
    shapes_map = _load_shapes(args.shapes)
    shapes = list(shapes_map.values())
    report = lemma_check(args.k, shapes, cap=args.cap, inner_margin=args.margin)
    payload = report.to_jsonable()
    payload["manifest"] = make_manifest(
        "lemma",
        {"k": args.k, "cap": args.cap, "margin": args.margin, "shapes": args.shapes},
        [args.shapes] if args.shapes else [],
        [p for p in (args.json, args.witness_svg) if p],
    )
    text = dump_json(payload)
    sys.stdout.write(text)
    write_text(args.json, text)
    if report.witness is not None and args.witness_svg:
        write_text(
            args.witness_svg,
            configuration_svg(report.witness, comment=f"violating covering k={args.k}"),
        )
    return 0 if report.complete else 3


def cmd_decompose(args) -> int:
    config_paths = args.configs
    epsilons = [Fraction(e) for e in args.epsilon.split(",")]
    if len(config_paths) != len(epsilons):
        raise CliError("need one configuration file per epsilon")
    window = _parse_window(args.window)
    if window.is_plane:
        raise CliError("decompose needs a bounded window")
    shapes = _load_shapes(args.shapes)
    runs = []
    for path, eps in zip(config_paths, epsilons):
        try:
            entries = json.loads(Path(path).read_text())
            mols = []
            for entry in entries:
                name = entry["shape"]
                if name not in shapes:
                    raise CliError(f"unknown shape {name!r} in {path}")
                anchor = (Fraction(entry["anchor"][0]), Fraction(entry["anchor"][1]))
                mols.append((shapes[name], anchor))
            runs.append((ScaledConfiguration.from_continuum(eps, mols), window))
        except InconsistentScale as exc:
            raise CliError(f"{path}: {exc}")
        except (OSError, ValueError, KeyError) as exc:
            raise CliError(f"cannot read {path}: {exc}")
    target = {}
    if args.target:
        try:
            raw = json.loads(Path(args.target).read_text())
            from .rectregions import rects_from_jsonable

            target = {int(k): rects_from_jsonable(v) for k, v in raw.items()}
        except (OSError, ValueError, KeyError) as exc:
            raise CliError(f"cannot read target {args.target}: {exc}")

    outputs = [args.out] if args.out else []
    payload: dict = {"runs": []}
    for sc, win in runs:
        approx = decompose(sc, win)
        payload["runs"].append(
            {
                "epsilon": str(sc.epsilon),
                "bad_area": str(approx.bad_area()),
                "bad_count": approx.bad_count,
                "boundary_length": str(approx.boundary_length),
                "bad_area_bound": str(bad_area_bound(approx)),
                "regions": {
                    str(lab): rects_to_jsonable(rects)
                    for lab, rects in sorted(approx.regions.items())
                    if rects
                },
            }
        )
    if target:
        rows = convergence_report(runs, target=target)
        payload["convergence"] = [
            {k: str(v) for k, v in row.items()} for row in rows
        ]
    if args.regions_csv:
        for run_payload, (sc, _) in zip(payload["runs"], runs):
            eps_tag = str(sc.epsilon).replace("/", "_")
            for lab, rows in run_payload["regions"].items():
                path = Path(f"{args.regions_csv}_eps{eps_tag}_label{lab}.csv")
                path.write_text(
                    "x0,y0,x1,y1\n"
                    + "".join(",".join(r) + "\n" for r in rows)
                )
                outputs.append(str(path))
    payload["manifest"] = make_manifest(
        "decompose",
        {"epsilon": args.epsilon, "window": args.window, "target": args.target},
        config_paths + ([args.target] if args.target else []),
        outputs,
    )
    text = dump_json(payload)
    sys.stdout.write(text)
    write_text(args.out, text)
    return 0


def _load_partition(path: str) -> PolygonalPartition:
    try:
        raw = json.loads(Path(path).read_text())
        window = raw.get("window")
        if window is not None:
            window = [(Fraction(x), Fraction(y)) for x, y in window]
        regions = {
            int(lab): [
                [(Fraction(x), Fraction(y)) for x, y in poly] for poly in polys
            ]
            for lab, polys in raw["regions"].items()
        }
        return PolygonalPartition(regions=regions, window=window)
    except InvalidPartition:
        raise
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(f"cannot read partition {path}: {exc}")


def cmd_limit(args) -> int:
    part = _load_partition(args.partition)
    model = DensityModel.with_patterns() if args.model == "patterns" else DensityModel.closed_form_only()
    if args.table:
        from .interfaces import DensityRecord

        records = []
        for line in Path(args.table).read_text().splitlines():
            if not line or line.startswith("#") or line.startswith("i,"):
                continue
            f = line.split(",")
            records.append(
                DensityRecord(
                    int(f[0]), int(f[1]), int(f[2]), int(f[3]), int(f[4]), f[5],
                    Fraction(f[6]), Fraction(f[7]), Fraction(f[8]), Fraction(f[9]),
                    f[10], int(f[11]),
                )
            )
        model.add_records(records)
    total, rows = limit_energy(part, model, detailed=True)
    payload: dict = {
        "total": str(total),
        "total_float": float(total),
        "segments": [
            {
                "from": [str(r.segment.a[0]), str(r.segment.a[1])],
                "to": [str(r.segment.b[0]), str(r.segment.b[1])],
                "labels": [r.segment.i, r.segment.j],
                "normal": list(r.segment.normal),
                "price": str(r.price),
                "source": r.source,
                "contribution": str(r.contribution),
            }
            for r in rows
        ],
    }
    if args.exterior:
        exterior = _load_partition(args.exterior)
        try:
            payload["anchored_admissible"] = anchored_admissible(part, exterior)
        except ValueError as exc:
            raise CliError(str(exc))
    outputs = [p for p in (args.out, args.svg) if p]
    payload["manifest"] = make_manifest(
        "limit",
        {"partition": args.partition, "model": args.model, "table": args.table,
         "exterior": args.exterior},
        [p for p in (args.partition, args.table, args.exterior) if p],
        outputs,
    )
    text = dump_json(payload)
    sys.stdout.write(text)
    write_text(args.out, text)
    if args.svg:
        from .svgout import partition_svg

        write_text(args.svg, partition_svg(part, rows, comment="partition"))
    return 0


def cmd_cluster(args) -> int:
    try:
        value, config = cluster_min_perimeter(args.r, args.s, cap=args.cap)
    except ClusterCapExceeded as exc:
        raise CliError(str(exc), code=3)
    payload = {
        "r": args.r,
        "s": args.s,
        "value": str(value),
        "witness": [
            {"shape": m.shape.name, "anchor": list(m.anchor)}
            for m in config.molecules
        ],
        "manifest": make_manifest(
            "cluster",
            {"r": args.r, "s": args.s, "cap": args.cap},
            [],
            [p for p in (args.json, args.svg) if p],
        ),
    }
    text = dump_json(payload)
    sys.stdout.write(text)
    write_text(args.json, text)
    if args.svg:
        write_text(args.svg, configuration_svg(config, comment=f"cluster ({args.r},{args.s})"))
    return 0


# -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chiralattice", description=__doc__)
    ap.add_argument(
        "--preset",
        help="JSON file presetting weights, budget, cluster cap, and palette",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("energy", help="energies of a configuration file")
    p.add_argument("config")
    p.add_argument("--window", help="SIDE or SIDE,CX,CY (default: whole plane)")
    p.add_argument("--weights", help="C_R,C_S")
    p.add_argument("--shapes", help="extra shape file (JSON)")
    p.add_argument("--out", help="write the JSON record here")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("density", help="normalized interface densities")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("T", help="comma list of sizes, e.g. 8,12,16")
    p.add_argument("--budget", type=int)
    p.add_argument("--kind", choices=["surface", "volume"], default="surface")
    p.add_argument("--weights", help="C_R,C_S")
    p.add_argument("--csv", help="append-style CSV output path")
    p.add_argument("--witness-dir", help="dump witness configurations as SVG")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("wulff", help="level sets and Wulff shapes")
    p.add_argument("phase", help="1..8 or 'all'")
    p.add_argument("--svg")
    p.add_argument("--json")
    p.set_defaults(func=cmd_wulff)

    p = sub.add_parser("lemma", help="exhaustive single-phase check")
    p.add_argument("k", type=int)
    p.add_argument("--shapes", help="shape file (default: built-in R,S)")
    p.add_argument("--cap", type=int)
    p.add_argument("--margin", type=int, default=4, choices=[2, 4])
    p.add_argument("--json")
    p.add_argument("--witness-svg")
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("decompose", help="scale decomposition into regions")
    p.add_argument("configs", nargs="+", help="configuration files (continuum anchors)")
    p.add_argument("--epsilon", required=True, help="comma list, one per file")
    p.add_argument("--window", required=True)
    p.add_argument("--shapes")
    p.add_argument("--target", help="JSON {label: [[x0,y0,x1,y1],...]}")
    p.add_argument("--regions-csv", dest="regions_csv", help="per-label CSV prefix")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("limit", help="limiting partition energy")
    p.add_argument("partition")
    p.add_argument("--model", choices=["closed_form", "patterns"], default="patterns")
    p.add_argument("--table", help="density CSV to refine the model")
    p.add_argument("--exterior", help="exterior partition for anchoring check")
    p.add_argument("--svg", help="render the partition with segment prices")
    p.add_argument("--out")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("cluster", help="minimal-perimeter clusters")
    p.add_argument("r", type=int)
    p.add_argument("s", type=int)
    p.add_argument("--cap", type=int, default=6)
    p.add_argument("--svg")
    p.add_argument("--json")
    p.set_defaults(func=cmd_cluster)
    return ap


def _apply_preset(args) -> None:
    """Fill unset options from a preset file (weights, budget, cap, palette)."""
    if not getattr(args, "preset", None):
        return
    try:
        preset = json.loads(Path(args.preset).read_text())
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read preset {args.preset}: {exc}")
    if getattr(args, "weights", None) is None and "weights" in preset:
        args.weights = preset["weights"]
    if getattr(args, "budget", None) is None and "budget" in preset:
        args.budget = int(preset["budget"])
    if "cluster_cap" in preset and getattr(args, "cap", None) == 6:
        args.cap = int(preset["cluster_cap"])
    palette = preset.get("palette")
    if palette:
        from . import svgout

        if len(palette) != 9:
            raise CliError("palette preset needs exactly 9 colors")
        svgout.PHASE_PALETTE = tuple(palette)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _apply_preset(args)
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except (OverlapError, InvalidPartition, NonRationalEdge, InconsistentScale) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
