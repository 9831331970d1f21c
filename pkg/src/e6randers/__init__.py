"""Invariant Einstein and Einstein-Randers metrics on E6/A4 and E6/A1.

The pipeline is exact wherever it can be: rational polynomial arithmetic,
Buchberger's algorithm under lex with a saturation variable, Sturm-certified
real roots, and interval enclosures for back-substituted coordinates.
"""

from .einstein import (
    E6_A1,
    E6_A4,
    MetricParams,
    SolutionTuple,
    SpaceDescriptor,
    derive_einstein_system,
    get_space,
    ricci_components,
    run_pipeline,
    solve_space,
    verify_solution,
)
from .groebner import IdealBasis, GroebnerBasis, buchberger, elimination_polynomial, saturate, shape_extract
from .polyring import MonomialOrder, Polynomial, normal_form, parse_polynomials
from .randers import NavigationData, TangentVector, einstein_randers_family, eval_randers, is_riemannian
from .realroots import RootBox, UnivariatePoly, count_real_roots, isolate_roots, refine_root, sturm_sequence

__version__ = "0.1.0"
