"""Exact rational verification of Whitney/Dupont retractions, stellar welding and collapses."""

from .collapse import averaged_retraction, elementary_collapse_dr, expansion_sequence, zigzag_retraction
from .compat import StarChart, defect_lhs, defect_rhs, restrict_to_star, verify_compat, verify_cubical_compat
from .complexes import (Chain, Cochain, CubicalComplex, DeformationRetraction, DomainError, SimplicialComplex,
                        boundary, check_dr, coboundary, compose_dr, dualize_dr, standard_complex)
from .cube_dupont import CubeForm, cube_dupont_s, verify_cubical
from .dupont import dupont_s, integration_map, verify_dupont, whitney_map
from .report import Check, Report
from .simplex_forms import PiecewiseForm, SimplexForm, cone_homotopy, integrate, whitney_form
from .stellar import star_complex, verify_stellar, welding_dr

__version__ = "0.1.0"
