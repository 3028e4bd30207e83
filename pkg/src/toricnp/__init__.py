"""Exact Newton/Hodge polygon toolkit for the Laurent family
x^n + y + t/(xy) over prime fields.

Three layers:

* prediction -- lattice-point geometry plus an assignment-problem
  perturbation gives the expected Newton polygon for any p coprime to n
  (`hodge_polygon`, `predicted_np`, assumption checks).
* exact arithmetic -- cyclotomic integers with pi-adic valuations and a
  small finite-field tower (`CycInt`, `build_field`).
* oracle -- exact exponential sums, L-polynomial recovery through
  Newton's identities and the functional equation, and the true polygon
  (`toric_sum`, `oracle_np`).
"""
from .convolve import CONV_SIZE_LIMIT, NAIVE_PAIR_LIMIT, DomainError, SumEngine
from .cyclo import CycInt, CycRat, ord_p, pi_valuation
from .geometry import (HodgeData, LatticePoint, PolygonData, WeightLevel,
                       enumerate_weight_level, hodge_data, hodge_numbers,
                       hodge_polygon, weight)
from .gf import FieldElem, FiniteField, build_field
from .oracle import (DegenerateCompletionError, LPolynomial, OracleReport,
                     SumSpec, companion_coefficients,
                     complete_by_functional_equation, lpoly_from_power_sums,
                     newton_polygon_of, oracle_np, oracle_np_batch,
                     reciprocal_root_moduli, toric_sum)
from .slopecomb import (AssignmentResult, Assumption14Report, FamilyParams,
                        PredictionReport, alpha, assumption16, b_sequence,
                        g_map, minimal_assignment, predicted_np,
                        predicted_slopes, prime_bounds, vandermonde_report)

__version__ = "0.1.0"

__all__ = [
    "CONV_SIZE_LIMIT", "NAIVE_PAIR_LIMIT", "DomainError", "SumEngine",
    "CycInt", "CycRat", "ord_p", "pi_valuation",
    "HodgeData", "LatticePoint", "PolygonData", "WeightLevel",
    "enumerate_weight_level", "hodge_data", "hodge_numbers", "hodge_polygon",
    "weight",
    "FieldElem", "FiniteField", "build_field",
    "DegenerateCompletionError", "LPolynomial", "OracleReport", "SumSpec",
    "companion_coefficients", "complete_by_functional_equation",
    "lpoly_from_power_sums", "newton_polygon_of", "oracle_np",
    "oracle_np_batch", "reciprocal_root_moduli", "toric_sum",
    "AssignmentResult", "Assumption14Report", "FamilyParams",
    "PredictionReport", "alpha", "assumption16", "b_sequence", "g_map",
    "minimal_assignment", "predicted_np", "predicted_slopes", "prime_bounds",
    "vandermonde_report",
    "__version__",
]
