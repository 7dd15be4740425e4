"""Combinatorial non-degeneracy of Enriques surfaces.

Given a configuration of smooth rational curves with its intersection matrix
and a rational basis of Num(S), this package computes the census of elliptic
fibrations supported on the configuration, isotropic sequences of half-fiber
classes, the invariant cnd(S, R), saturated sequences, canonical extensions
to length 10 and the associated Fano polarizations, plus a discriminant-group
assistant for overlattice computations.
"""

from .datasets import dataset_description, dataset_ids, load_dataset
from .dynkin_search import EllipticSubset, catalog, find_elliptic_subsets
from .errors import InternalInvariantError, ValidationError
from .exact_lattice import (
    DiscriminantGroup,
    SmithNormalForm,
    discriminant_group,
    enumerate_isotropic_classes,
    gram,
    pairing,
    parse_rational,
    smith_normal_form,
)
from .fiber_classify import (
    EllipticConfiguration,
    Fibration,
    HalfFiberSet,
    build_half_fiber_set,
    classify,
    half_fiber_set_for,
    phi_invariant,
)
from .report import RunOptions, RunReport, render_text, report_to_dict, run, run_phi
from .sequence_engine import (
    CanonicalExtension,
    FanoReport,
    IsotropicSequence,
    SaturationReport,
    cnd,
    enumerate_sequences,
    extend_to_canonical,
    fano_report,
    maximal_sequences,
    saturated,
)
from .surface_model import (
    CurveConfiguration,
    Divisor,
    NumBasis,
    SurfaceData,
    class_of,
    load_basis,
    load_configuration,
    parse_document,
    serialize_document,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalExtension",
    "CurveConfiguration",
    "DiscriminantGroup",
    "Divisor",
    "EllipticConfiguration",
    "EllipticSubset",
    "FanoReport",
    "Fibration",
    "HalfFiberSet",
    "InternalInvariantError",
    "IsotropicSequence",
    "NumBasis",
    "RunOptions",
    "RunReport",
    "SaturationReport",
    "SmithNormalForm",
    "SurfaceData",
    "ValidationError",
    "build_half_fiber_set",
    "catalog",
    "class_of",
    "classify",
    "cnd",
    "dataset_description",
    "dataset_ids",
    "discriminant_group",
    "enumerate_isotropic_classes",
    "enumerate_sequences",
    "extend_to_canonical",
    "fano_report",
    "find_elliptic_subsets",
    "gram",
    "half_fiber_set_for",
    "load_basis",
    "load_configuration",
    "load_dataset",
    "maximal_sequences",
    "pairing",
    "parse_document",
    "parse_rational",
    "render_text",
    "report_to_dict",
    "run",
    "run_phi",
    "saturated",
    "serialize_document",
    "smith_normal_form",
]
