"""Command-line interface.

Commands:
  compute <dataset>     full pipeline: census, cnd, saturated census, and on
                        request sequence listings, canonical extensions and
                        Fano reports (--sequences/--saturated/--extend/--fano)
  phi <dataset>         phi values of the dataset's marked divisors
  overlattice <file>    discriminant group and isotropic classes of a lattice
  list-datasets         embedded datasets with one-line descriptions

<dataset> is an embedded dataset id or a path to a surface document (JSON).
Exit codes: 0 success, 1 invalid input, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .datasets import dataset_description, dataset_ids, load_dataset
from .errors import InternalInvariantError, ValidationError
from .exact_lattice import (
    add_vectors,
    as_vector,
    discriminant_group,
    enumerate_isotropic_classes,
    format_rational,
    gram,
    scale_vector,
    zero_vector,
)
from .report import RunOptions, render_text, report_to_dict, run, run_phi
from .surface_model import SurfaceData, parse_document


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with the input-error code."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_surface(spec: str) -> SurfaceData:
    if spec in dataset_ids():
        return load_dataset(spec)
    path = Path(spec)
    if path.is_file():
        return parse_document(path.read_text(encoding="utf-8"))
    raise ValidationError(
        f"unknown dataset {spec!r}: not an embedded dataset id or a readable file"
    )


def _write_json(payload: dict, path: Optional[str]) -> None:
    if path:
        Path(path).write_text(
            json.dumps(payload, indent=2) + "\n", encoding="utf-8"
        )


def _cmd_compute(args) -> int:
    data = _load_surface(args.dataset)
    options = RunOptions(
        sequences=args.sequences,
        saturated=args.saturated,
        extend=args.extend or args.fano,
        fano=args.fano,
        fast=args.fast,
        threads=args.threads,
    )
    report = run(data, options)
    print(render_text(report, options))
    _write_json(report_to_dict(report, options), args.json)
    return 0


def _cmd_phi(args) -> int:
    data = _load_surface(args.dataset)
    values = run_phi(data, RunOptions(threads=args.threads))
    for name, value in values.items():
        print(f"phi({name}) = {format_rational(value)}")
    _write_json(
        {"dataset": data.name,
         "phi": {name: format_rational(v) for name, v in values.items()}},
        args.json,
    )
    return 0


def _parse_overlattice_document(text: str):
    """Returns (gram matrix, generator vectors or None, curve labels or None)."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValidationError("overlattice document must be a JSON object")
    if "gram" in raw:
        rows = raw["gram"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ValidationError("'gram' must be a matrix (list of rows)")
        matrix = [as_vector(row) for row in rows]
        return matrix, None, None
    if "generators" in raw:
        if "intersection_matrix" not in raw:
            raise ValidationError(
                "'generators' requires an 'intersection_matrix' for the pairing"
            )
        gen_rows = raw["generators"]
        mat_rows = raw["intersection_matrix"]
        if not isinstance(gen_rows, list) or not all(
                isinstance(r, list) for r in gen_rows):
            raise ValidationError("'generators' must be a list of vectors")
        if not isinstance(mat_rows, list) or not all(
                isinstance(r, list) for r in mat_rows):
            raise ValidationError("'intersection_matrix' must be a matrix")
        generators = [as_vector(row) for row in gen_rows]
        pairing_matrix: list[tuple[int, ...]] = []
        for row in mat_rows:
            entries = []
            for value in row:
                if isinstance(value, bool) or not isinstance(value, int):
                    raise ValidationError(
                        "intersection matrix entries must be integers"
                    )
                entries.append(value)
            pairing_matrix.append(tuple(entries))
        width = len(pairing_matrix)
        for i, row in enumerate(pairing_matrix):
            if len(row) != width:
                raise ValidationError(f"intersection matrix row {i} has wrong length")
        for vec in generators:
            if len(vec) != width:
                raise ValidationError(
                    "generator length does not match the intersection matrix"
                )
        matrix = gram(generators, pairing_matrix)
        for i, row in enumerate(matrix):
            for j, value in enumerate(row):
                if value.denominator != 1:
                    raise ValidationError(
                        f"generator Gram matrix not integral at ({i},{j})"
                    )
        matrix = [tuple(value for value in row) for row in matrix]
        labels = raw.get("curves")
        if labels is not None:
            if (not isinstance(labels, list)
                    or not all(isinstance(x, str) for x in labels)
                    or len(labels) != width):
                raise ValidationError(
                    "'curves' must list one label per intersection-matrix row"
                )
        return matrix, generators, labels
    raise ValidationError(
        "overlattice document needs either 'gram' or "
        "'generators' + 'intersection_matrix'"
    )


def _cmd_overlattice(args) -> int:
    path = Path(args.file)
    if not path.is_file():
        raise ValidationError(f"cannot read file {args.file!r}")
    matrix, generators, labels = _parse_overlattice_document(
        path.read_text(encoding="utf-8")
    )
    group = discriminant_group(matrix)
    factors = [d for d in group.invariant_factors if d != 1]
    print(f"discriminant group: order {group.order}"
          + (" (trivial)" if group.order == 1 else
             " = " + " x ".join(f"Z/{d}" for d in factors)))
    payload: dict = {
        "invariant_factors": list(group.invariant_factors),
        "order": group.order,
    }
    if group.order == 1:
        print("already unimodular; lattice equals the Num(S) candidate")
        payload["unimodular"] = True
        _write_json(payload, args.json)
        return 0
    classes = enumerate_isotropic_classes(group)
    print(f"isotropic classes (excluding 0): {len(classes)}")
    payload["isotropic_classes"] = []
    for coords in classes:
        # coords live in the generating set of L, already reduced to [0,1).
        entry = {"generator_coordinates": [format_rational(c) for c in coords]}
        line = "  [" + ", ".join(format_rational(c) for c in coords) + "]"
        if generators is not None:
            ambient = zero_vector(len(generators[0]))
            for i, c in enumerate(coords):
                ambient = add_vectors(ambient, scale_vector(c, generators[i]))
            entry["curve_coordinates"] = [format_rational(c) for c in ambient]
            if labels:
                terms = []
                for label, c in zip(labels, ambient):
                    if c == 0:
                        continue
                    terms.append(label if c == 1 else f"{format_rational(c)} {label}")
                line += "  =  " + (" + ".join(terms) if terms else "0")
            else:
                line += "  =  [" + ", ".join(format_rational(c) for c in ambient) + "]"
        print(line)
        payload["isotropic_classes"].append(entry)
    _write_json(payload, args.json)
    return 0


def _cmd_list_datasets(args) -> int:
    for name in dataset_ids():
        print(f"{name:8s} {dataset_description(name)}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(
        prog="cnd",
        description="Combinatorial non-degeneracy of Enriques surfaces "
                    "from a curve intersection matrix.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    compute = sub.add_parser("compute", help="census, cnd and reports")
    compute.add_argument("dataset", help="embedded dataset id or document path")
    compute.add_argument("--sequences", action="store_true",
                         help="list the maximal isotropic sequences")
    compute.add_argument("--saturated", action="store_true",
                         help="list every saturated sequence")
    compute.add_argument("--extend", action="store_true",
                         help="canonically extend the maximal sequences")
    compute.add_argument("--fano", action="store_true",
                         help="Fano-polarization report per extension "
                              "(implies --extend)")
    compute.add_argument("--fast", action="store_true",
                         help="enable per-type search caps (identical output)")
    compute.add_argument("--json", metavar="PATH",
                         help="also write the report as JSON")
    compute.add_argument("--threads", type=int, default=None, metavar="N",
                         help="worker processes for the search "
                              "(default: all cores)")
    compute.set_defaults(func=_cmd_compute)

    phi = sub.add_parser("phi", help="phi values of the marked divisors")
    phi.add_argument("dataset", help="embedded dataset id or document path")
    phi.add_argument("--json", metavar="PATH",
                     help="also write the values as JSON")
    phi.add_argument("--threads", type=int, default=None, metavar="N",
                     help="worker processes for the search (default: all cores)")
    phi.set_defaults(func=_cmd_phi)

    over = sub.add_parser(
        "overlattice",
        help="discriminant group and isotropic classes of a lattice",
    )
    over.add_argument("file", help="JSON file with 'gram', or 'generators' "
                                   "+ 'intersection_matrix'")
    over.add_argument("--json", metavar="PATH",
                      help="also write the result as JSON")
    over.set_defaults(func=_cmd_overlattice)

    listing = sub.add_parser("list-datasets", help="embedded datasets")
    listing.set_defaults(func=_cmd_list_datasets)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
