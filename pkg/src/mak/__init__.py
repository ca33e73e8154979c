"""Homotopy decompositions of coordinate subspace arrangement complements.

The complement of the codimension-two coordinate subspace arrangement in
C^n is computed two ways: as a wedge of spheres by rewriting formal space
expressions, and through the integral cohomology of the moment-angle
complex Z_K of n disjoint points.
"""

__version__ = "0.1.0"

from .errors import (
    InputError,
    MakError,
    NotASphereWedge,
    ParseError,
    ResourceLimitError,
    RewriteBudgetExceeded,
    UnsupportedRewrite,
)
from .expr import (
    CP_INF,
    Generator,
    HalfSmash,
    Join,
    Loop,
    Point,
    Product,
    Smash,
    SpaceExpr,
    Sphere,
    Susp,
    Wedge,
    parse,
    to_text,
)
from .fibre import (
    DecompositionResult,
    FibreInput,
    fibre_closed_form,
    fibre_recursive,
    theorem_counts,
    total_summands,
)
from .homology import (
    AbelianGroup,
    IntegerMatrix,
    SmithForm,
    boundary_matrix,
    reduced_cohomology,
    reduced_homology,
    smith_normal_form,
)
from .oracle import HochsterSummand, ZkCohomology, betti_vector, poincare_series, zk_cohomology
from .rewrite import WedgeNormalForm, betti_of, normalize, podecomp
from .simplicial import (
    SimplicialComplex,
    disjoint_points,
    faces_of_dim,
    from_facets,
    full_simplex,
    full_subcomplex,
    simplex_boundary,
)
