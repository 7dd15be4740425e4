"""Pipeline orchestration and report rendering.

``run`` executes the full pipeline on a surface document — template search,
fiber/half-fiber classification, fibration grouping, sequence enumeration,
optional canonical extensions — and returns a RunReport.  The report renders
to a human-readable text form and to a JSON-ready dict; both carry the same
numeric content, and the JSON form is byte-identical across runs except for
the ``timing`` section.

When cnd < 10 the report states the lower bound "nd(S) >= cnd" (the
combinatorial invariant never overstates the surface invariant); when
cnd = 10 it states "nd(S) = 10", which is equivalent to the existence of a
very ample Fano polarization, reported as a flag.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ValidationError
from .exact_lattice import format_rational
from .fiber_classify import (
    HalfFiberSet,
    build_half_fiber_set,
    classify,
    phi_invariant,
)
from .dynkin_search import find_elliptic_subsets
from .sequence_engine import (
    CanonicalExtension,
    FanoReport,
    IsotropicSequence,
    SaturationReport,
    extend_to_canonical,
    fano_report,
    maximal_sequences,
    saturated,
)
from .surface_model import SurfaceData, format_class


@dataclass(frozen=True)
class RunOptions:
    """Report content switches mirroring the command-line flags."""

    sequences: bool = False
    saturated: bool = False
    extend: bool = False
    fano: bool = False
    fast: bool = False
    threads: Optional[int] = None      # None = all cores


@dataclass
class ExtensionGroup:
    """Canonical extensions of one maximal sequence."""

    sequence: IsotropicSequence
    extensions: tuple[CanonicalExtension, ...]
    fano: tuple[FanoReport, ...] = ()


@dataclass
class RunReport:
    data: SurfaceData
    half_fibers: HalfFiberSet
    cnd: int
    saturation: SaturationReport
    maximal: tuple[IsotropicSequence, ...]
    phi: dict[str, Fraction]
    extension_groups: tuple[ExtensionGroup, ...]
    timing: dict[str, float]
    warnings: list[str] = field(default_factory=list)

    @property
    def nd_statement(self) -> str:
        if self.cnd == 10:
            return "nd(S) = 10"
        return f"nd(S) >= {self.cnd}"


def run(data: SurfaceData, options: RunOptions = RunOptions()) -> RunReport:
    """Execute the full pipeline on a validated surface document."""
    timing: dict[str, float] = {}
    captured: list[str] = []
    total_start = time.perf_counter()

    threads = options.threads
    # The process pool only pays off on large configurations; small ones run
    # serially.  Results are identical either way (canonical merge order).
    if threads is None:
        threads = os.cpu_count() or 1
    if data.configuration.size < 16:
        threads = 1

    t0 = time.perf_counter()
    subsets = find_elliptic_subsets(data.configuration, threads=threads)
    timing["search"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    classified = [classify(s, data.basis) for s in subsets]
    timing["classify"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    hf = build_half_fiber_set(classified, data.basis)
    timing["group"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    saturation = saturated(hf, use_caps=options.fast)
    cnd_value = saturation.max_length
    if hf.size == 0:
        captured.append("no supported half-fibers; cnd is 0")
    maximal = maximal_sequences(hf, saturation)
    timing["sequences"] = time.perf_counter() - t0

    phi: dict[str, Fraction] = {}
    if data.divisors and hf.size > 0:
        for divisor in data.divisors:
            phi[divisor.name] = phi_invariant(divisor, hf)

    extension_groups: list[ExtensionGroup] = []
    if options.extend or options.fano:
        t0 = time.perf_counter()
        for seq in maximal:
            exts = extend_to_canonical(seq.classes(hf), data.configuration, data.basis)
            fanos = ()
            if options.fano:
                fanos = tuple(fano_report(e, data.basis) for e in exts)
            extension_groups.append(ExtensionGroup(
                sequence=seq, extensions=exts, fano=fanos
            ))
        timing["extend"] = time.perf_counter() - t0

    timing["total"] = time.perf_counter() - total_start
    return RunReport(
        data=data,
        half_fibers=hf,
        cnd=cnd_value,
        saturation=saturation,
        maximal=maximal,
        phi=phi,
        extension_groups=tuple(extension_groups),
        timing=timing,
        warnings=captured,
    )


def run_phi(data: SurfaceData,
            options: RunOptions = RunOptions()) -> dict[str, Fraction]:
    """Phi table for every divisor of the dataset."""
    if not data.divisors:
        raise ValidationError("dataset has no divisors")
    threads = options.threads
    if data.configuration.size < 16:
        threads = 1
    subsets = find_elliptic_subsets(data.configuration, threads=threads)
    classified = [classify(s, data.basis) for s in subsets]
    hf = build_half_fiber_set(classified, data.basis)
    return {d.name: phi_invariant(d, hf) for d in data.divisors}


# ---------------------------------------------------------------------------
# JSON rendering
# ---------------------------------------------------------------------------

def _vec_json(vector) -> list:
    return [format_rational(x) for x in vector]


def _sequence_json(seq: IsotropicSequence, hf: HalfFiberSet) -> dict:
    return {
        "length": len(seq),
        "types": list(seq.type_multiset(hf)),
        "classes": [_vec_json(c) for c in seq.classes(hf)],
    }


def report_to_dict(report: RunReport, options: RunOptions) -> dict:
    hf = report.half_fibers
    labels = report.data.configuration.labels
    out: dict = {
        "dataset": report.data.name,
        "curve_count": report.data.configuration.size,
        "fibrations": [],
        "fibration_total": hf.size,
        "cnd": report.cnd,
        "nd_statement": report.nd_statement,
    }
    reps: dict[str, list] = {}
    for fib in hf.fibrations:
        reps.setdefault(fib.type_label, fib.half_fiber_class)
    for label, count in hf.census():
        out["fibrations"].append({
            "type": label,
            "count": count,
            "representative_class": _vec_json(reps[label]),
        })
    if report.cnd == 10:
        out["very_ample_fano_polarization"] = True
    out["maximal_sequence_count"] = len(report.maximal)
    if options.sequences:
        out["sequences"] = [_sequence_json(s, hf) for s in report.maximal]
    out["saturated"] = [
        {"length": row.length, "types": list(row.types), "count": row.count}
        for row in report.saturation.census
    ]
    if options.saturated:
        out["saturated_sequences"] = [
            _sequence_json(s, hf) for s in report.saturation.sequences
        ]
    if report.phi:
        out["phi"] = {name: format_rational(v) for name, v in report.phi.items()}
    if report.extension_groups:
        groups = []
        for group in report.extension_groups:
            entry = {
                "base": _sequence_json(group.sequence, hf),
                "extension_count": len(group.extensions),
                "extensions": [],
            }
            for i, ext in enumerate(group.extensions):
                ext_entry = {
                    "chains": [[labels[c] for c in chain] for chain in ext.chains],
                    "classes": [_vec_json(c) for c in ext.classes],
                }
                if group.fano:
                    fano = group.fano[i]
                    ext_entry["fano"] = {
                        "delta": _vec_json(fano.delta),
                        "delta_self": fano.delta_self,
                        "degrees": list(fano.degrees),
                        "singularities": list(fano.singularities),
                        "contracted": list(fano.contracted),
                    }
                entry["extensions"].append(ext_entry)
            groups.append(entry)
        out["extensions"] = groups
    if report.warnings:
        out["warnings"] = list(report.warnings)
    out["timing"] = {k: round(v, 6) for k, v in report.timing.items()}
    return out


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------

def render_text(report: RunReport, options: RunOptions) -> str:
    data = report.data
    hf = report.half_fibers
    config = data.configuration
    lines = []
    lines.append(f"dataset: {data.name} ({config.size} curves)")
    for message in report.warnings:
        lines.append(f"warning: {message}")
    lines.append(f"elliptic fibrations: {hf.size}")
    reps: dict[str, list] = {}
    for fib in hf.fibrations:
        reps.setdefault(fib.type_label, fib.half_fiber_class)
    for label, count in hf.census():
        rep = format_class(reps[label], config)
        lines.append(f"  {count:4d} x ({label})   e.g. {rep}")
    lines.append(f"cnd(S, R) = {report.cnd}")
    suffix = "  (very ample Fano polarization exists)" if report.cnd == 10 else ""
    lines.append(f"{report.nd_statement}{suffix}")
    lines.append(
        f"maximal isotropic sequences: {len(report.maximal)} "
        f"of length {report.cnd}"
    )
    if options.sequences:
        for seq in report.maximal:
            lines.append("  sequence:")
            for cls, label in zip(seq.classes(hf),
                                  (hf.fibrations[i].type_label for i in seq.indices)):
                lines.append(f"    {format_class(cls, config)}   ({label})")
    lines.append("saturated census:")
    for row in report.saturation.census:
        types = ", ".join(row.types)
        lines.append(f"  length {row.length}: {row.count} x [{types}]")
    if options.saturated:
        lines.append("saturated sequences:")
        for seq in report.saturation.sequences:
            types = ", ".join(seq.type_multiset(hf))
            lines.append(f"  length {len(seq)}: [{types}]")
            for cls in seq.classes(hf):
                lines.append(f"    {format_class(cls, config)}")
    if report.phi:
        lines.append("phi:")
        for name, value in report.phi.items():
            lines.append(f"  phi({name}) = {format_rational(value)}")
    for group in report.extension_groups:
        lines.append(
            f"canonical extensions of a length-{len(group.sequence)} sequence: "
            f"{len(group.extensions)}"
        )
        for i, ext in enumerate(group.extensions):
            chains = "; ".join(
                "(" + ", ".join(config.labels[c] for c in chain) + ")"
                for chain in ext.chains
            )
            lines.append(f"  extension {i + 1}: chains {chains}")
            if group.fano:
                fano = group.fano[i]
                sing = ", ".join(fano.singularities) if fano.singularities else "none"
                contracted = ", ".join(fano.contracted) if fano.contracted else "none"
                lines.append(f"    Delta = {format_class(fano.delta, config)}")
                lines.append(f"    Delta^2 = {fano.delta_self}; "
                             f"singularities: {sing}; contracted: {contracted}")
    lines.append(
        "timing: " + ", ".join(f"{k} {v:.3f}s" for k, v in report.timing.items())
    )
    return "\n".join(lines)
