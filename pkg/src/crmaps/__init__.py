"""crmaps: exact verification, invariants, and classification for CR maps
from hyperquadrics into tubes over null cones of symmetric forms.

The library keeps every identity check exact (Gaussian rationals extended by
sqrt 2, formal conjugation) and pairs each exact route with independent
series and numeric routes.
"""

__version__ = "0.1.0"

from .algebra import (GaussRat, MPoly, PSeries, RatFn, SqrtExpr, VarTable,
                      bar, diff, gq, pseudo_divide, sqrt_series, substitute,
                      table_for, to_series)
from .geometry import (Hypersurface, SignatureForm, make_hypersurface,
                       on_variety_reduce, pairing, sample_points)
from .holomap import CATALOG_NAMES, HoloMap, JetTable, catalog, compose, identity_map
from .autgroups import (AutParamsSource, AutParamsTarget, inf_field, invert,
                        random_params, source_automorphism, tangency_check,
                        target_automorphism)
from .verifier import (VerifyReport, check_oracle_identities, extract_Q,
                       pullback, transversality, verify_cr_map)
from .invariants import (AhlforsReport, NormalForm, ahlfors_tensor, classify,
                         equivalence_witness, geometric_rank, normalize)
from .metrics import (MetricField, defect_is_zero, isometry_defect, metric,
                      ricci_check)
from .dsl import MapSpecFile, parse_expr, parse_map, unparse
