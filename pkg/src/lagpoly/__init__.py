"""lagpoly: polyhedral Lagrangian surfaces in R^4 and their invariants."""

from .complexes import (PolyhedralSurface, VertexStar, dual_complex,
                        validate_surface, vertex_star)
from .errors import LagpolyError
from .generators import (PolygonalCurve, VertexModelSpec, local_vertex_model,
                         model_rays, product_surface, regular_polygon)
from .linkknot import (PLLegendrianKnot, SampledKnot, conjecture_experiment,
                       rotation_number, smoothed_sphere_link, sphere_link,
                       standard_legendrian_unknot, thurston_bennequin,
                       unknot_by_stick_bound)
from .maslov import maslov_index, smoothed_vertex_maslov, vertex_maslov
from .normalform import sign_parameters, vertex_normal_form
from .primitives import class_equal, cocycle, solve_primitives, verify_cocycle
from .smoothing import HingeModel, sample_smoothed_hinge, verify_hinge_smoothing
from .symplin import (LagrangianPlane, Symplectomorphism, Vec4Q,
                      hinge_normal_form, is_lagrangian, liouville, omega,
                      random_symplectomorphism)

__all__ = [
    "HingeModel", "LagpolyError", "LagrangianPlane", "PLLegendrianKnot",
    "PolygonalCurve", "PolyhedralSurface", "SampledKnot", "Symplectomorphism",
    "Vec4Q", "VertexModelSpec", "VertexStar", "class_equal", "cocycle",
    "conjecture_experiment", "dual_complex", "hinge_normal_form",
    "is_lagrangian", "liouville", "local_vertex_model", "maslov_index",
    "model_rays", "omega", "product_surface", "random_symplectomorphism",
    "regular_polygon", "rotation_number", "sample_smoothed_hinge",
    "sign_parameters", "smoothed_sphere_link", "smoothed_vertex_maslov",
    "solve_primitives", "sphere_link", "standard_legendrian_unknot",
    "thurston_bennequin", "unknot_by_stick_bound", "validate_surface",
    "verify_cocycle", "verify_hinge_smoothing", "vertex_maslov",
    "vertex_normal_form", "vertex_star",
]
__version__ = "0.1.0"
