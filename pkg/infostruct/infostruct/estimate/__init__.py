from .estimate import (EmpiricalBlockModel, EstimateReport, SymbolSequence, empirical_blocks, estimated_rates,
                       make_sequence, read_sequence, to_joint, write_sequence)
