from .measures import (MeasureReport, binding_by_accumulation, binding_information, conditional_entropy,
                       entropy, entropy_triple, measure_report, multi_information, mutual_information, pir_profile,
                       residual_entropy, subset_entropies)
