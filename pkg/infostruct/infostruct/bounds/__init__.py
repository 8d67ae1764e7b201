from .bounds import (BOUND_NAMES, THEOREM_BOUNDS, BoundsReport, check_bounds, corner_points, dump_violations,
                     sample_bounds, tightness_witnesses, violations)
