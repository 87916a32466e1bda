"""Exact analysis of one-dimensional substitution tilings.

Core objects: ``Substitution`` (symbolic rules), ``NumberField`` and
``FieldElement`` (exact arithmetic in Q(lambda)), ``TileSet`` and the
tiling classes (geometry), and ``theorem_certify`` (the full pipeline).
"""

__version__ = "0.1.0"

from .coincidence import (
    AnalysisConfig,
    CertificationReport,
    EndpointHit,
    OverlapClass,
    SpectrumVerdict,
    Verdict,
    dense_coincidence_probe,
    eventually_coincident_at,
    find_coincident_prototile_pair,
    overlap_children,
    overlap_graph,
    seed_overlaps,
    spectrum_verdict,
    theorem_certify,
)
from .field import FieldElement, NumberField, Pisot, left_pf_eigenvector, pf_field, pisot_test
from .generators import (
    arnoux_rauzy,
    beta_field,
    beta_orbit,
    beta_substitution,
    brun,
    greedy_expansion,
    jacobi_perron,
)
from .polynomial import RationalPolynomial, char_poly, parse_polynomial
from .substitution import (
    Periodicity,
    Substitution,
    SubstitutionError,
    abelianization,
    admissible_seed,
    compose,
    factors,
    parse_substitution,
    power,
)
from .tiling import FixedTiling, Patch, Tile, TileSet, fixed_tiling, render_patch, window
