from .errors import PentagramError
from .lax import LaxVariant, create_lax, lax_for_map, lax_matrix, list_lax_variants
from .maps import MapSpec, apply_map, detect_shift, iterate_map
from .polygon import (
    CoefficientArray,
    CorrugationSpec,
    TwistedPolygon,
    polygon_from_points,
    random_generic_polygon,
)
from .spectral import extract_invariants, genus, spectral_function, spectral_report
from .verify import SuiteParams, list_suites, run_suite
