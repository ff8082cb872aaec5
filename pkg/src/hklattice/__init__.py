"""Exact integral-lattice toolkit for K3 and K3^[2]-type computations."""

from .discform import (
    DiscMap,
    FiniteQuadraticForm,
    anti_isometry_search,
    discriminant_form,
    induced_action,
    isometry_search,
)
from .glue import GluingData, Overlattice, lift_isometry, overlattice_from_glue, unimodular_embedding_search
from .isometry import Isometry, OrthogonalGroup, conjugacy_partition, find_order_e_fpf, orthogonal_group
from .lattice import Lattice, catalog, direct_sum, inner, k3_lattice, load_lattice, short_vectors, vectors_of_norm
from .scenarios import ScenarioReport, run_all, run_scenario, scenario_dimensions
from .springer import get_group, lam, lam_star, springer_report
from .sublattice import PrimitiveEmbedding, orth_complement, saturate
from .walls import hilbert_square_picard, is_wall_divisor, k3sq_lattice, kgen_obstruction

__version__ = "0.1.0"

__all__ = [
    "DiscMap",
    "FiniteQuadraticForm",
    "GluingData",
    "Isometry",
    "Lattice",
    "OrthogonalGroup",
    "Overlattice",
    "PrimitiveEmbedding",
    "ScenarioReport",
    "anti_isometry_search",
    "catalog",
    "conjugacy_partition",
    "direct_sum",
    "discriminant_form",
    "find_order_e_fpf",
    "get_group",
    "hilbert_square_picard",
    "induced_action",
    "inner",
    "is_wall_divisor",
    "isometry_search",
    "k3_lattice",
    "k3sq_lattice",
    "kgen_obstruction",
    "lam",
    "lam_star",
    "lift_isometry",
    "load_lattice",
    "orth_complement",
    "orthogonal_group",
    "overlattice_from_glue",
    "run_all",
    "run_scenario",
    "saturate",
    "scenario_dimensions",
    "short_vectors",
    "springer_report",
    "unimodular_embedding_search",
    "vectors_of_norm",
]
