from .maximizer import (MaximizerConfig, OptimizationResult, OptimumDiagnosis, binding_gradient, binding_value,
                        classify_optimum, maximize, multi_gradient, multi_value, objective_cap)
from .utils import EarlyStopping
