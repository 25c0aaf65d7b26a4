"""Three-character affine point sets over GF(q^2) and their codes.

Construction, exhaustive verification (hyperplane spectra, minimality,
section-quadric cross-checks) and export of the associated few-weight
linear codes.  Hot enumeration loops run on a compiled core when the
extension is built, with numpy fallbacks otherwise; see
``trichar._kernels.BACKEND``.
"""

from ._kernels import BACKEND as kernel_backend
from .codes import (
    GeneratorMatrix,
    WeightEnumerator,
    divisibility,
    expected_enumerator,
    extend_multiset,
    generator_matrix,
    weight_enumerator_bruteforce,
    weight_enumerator_from_spectrum,
)
from .errors import BudgetExceeded, EpsBasisUnavailable, InvalidParameter, TricharError
from .field import Element, FieldDescriptor, FieldTower, make_tower, tower_for_q
from .geometry import (
    Hyperplane,
    PointMultiset,
    Spectrum,
    enumerate_hyperplanes,
    enumerate_points,
    incidence,
    minimality_report,
    spectrum,
)
from .quadric import (
    AffineQuadric,
    QuadricClass,
    arf_invariant,
    classify_quadric,
    count_points,
    reduce_section,
    sigma_census,
)
from .report import verify_instance
from .varieties import (
    ExpectedProfile,
    ParamClass,
    Params,
    classify,
    expected_profile,
    find_class_instance,
    hermitian_affine_set,
    hermitian_cone_at_infinity,
    shear,
    twisted_hermitian_set,
)

__version__ = "0.1.0"
